#pragma once

#include <complex>
#include <vector>

namespace modelkit::fft {

// In-place iterative radix-2 FFT; data.size() must be a power of two.
// forward: X_k = sum_j x_j exp(-2*pi*i*j*k/n).  inverse applies the
// conjugate transform and divides by n.
void transform(std::vector<std::complex<double>>& data, bool inverse);

std::size_t next_pow2(std::size_t n);

}  // namespace modelkit::fft
