#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "modelkit/inner.hpp"

namespace modelkit::hardy {

// Uniform sampling grid on [-half_width, half_width].  The sample count is
// rounded up to a power of two for the spectral split.
struct LineGrid {
  double half_width = 2000.0;
  double target_step = 0.02;

  std::size_t size() const;
  double step() const;
  double point(std::size_t j) const;  // -half_width + j*step
};

std::vector<Complex> sample(const LineGrid& grid,
                            const std::function<Complex(double)>& f);

struct SpectralSplit {
  double norm = 0.0;        // L2 norm of the samples
  double plus_norm = 0.0;   // positive-frequency content (H^2 side)
  double minus_norm = 0.0;  // negative-frequency content
};

// Splits sampled data into analytic / anti-analytic energy via the discrete
// Fourier transform; DC and Nyquist bins are shared evenly.
SpectralSplit spectral_split(const LineGrid& grid,
                             const std::vector<Complex>& samples);

// Cauchy transform (1/2pi i) int f(t)/(t - zeta) dt over the grid window by
// trapezoid rule; vanishes for boundary values of H^2 when Im(zeta) < 0.
Complex cauchy_transform(const LineGrid& grid,
                         const std::vector<Complex>& samples, Complex zeta);

double l2_norm(const LineGrid& grid, const std::vector<Complex>& samples);

}  // namespace modelkit::hardy
