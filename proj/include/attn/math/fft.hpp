#pragma once

#include <complex>
#include <vector>

namespace attn::math {

/// In-place radix-2 forward DFT: a[u] <- sum_j a[j] exp(-2*pi*i*j*u/n).
/// n must be a power of two.
void fft(std::vector<std::complex<double>>& a);

} // namespace attn::math
