#pragma once

#include <complex>
#include <span>

namespace hylo::fft {

using cd = std::complex<double>;

// Thin FFTW wrapper. Plans are created once per (size, direction, placement)
// under a mutex and executed with the new-array interface, which is safe to
// call from several threads at once.

/// Unnormalized forward DFT: out_k = sum_j in_j exp(-2 pi i j k / N).
void forward(std::span<const cd> in, std::span<cd> out);

/// Inverse DFT including the 1/N factor, so inverse(forward(u)) == u.
void inverse(std::span<const cd> in, std::span<cd> out);

}  // namespace hylo::fft
