#pragma once

#include <complex>
#include <vector>

namespace gts {

// In-place radix-2 FFT; length must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse);

// Fractional Fourier transform
//   G_k = sum_j input_j * exp(-2 pi i j k delta),  k = 0..N-1
// for arbitrary real delta, computed by the zero-padded Bluestein
// convolution in O(N log N). delta = 1/N reduces to the plain DFT.
std::vector<std::complex<double>> frft(const std::vector<std::complex<double>>& input,
                                       double delta);

}  // namespace gts
