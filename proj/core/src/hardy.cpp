#include "modelkit/hardy.hpp"

#include <cmath>

#include "modelkit/fft.hpp"

namespace modelkit::hardy {

std::size_t LineGrid::size() const {
  const std::size_t want =
      std::size_t(std::ceil(2.0 * half_width / target_step));
  return fft::next_pow2(std::max<std::size_t>(want, 16));
}

double LineGrid::step() const { return 2.0 * half_width / double(size()); }

double LineGrid::point(std::size_t j) const {
  return -half_width + double(j) * step();
}

std::vector<Complex> sample(const LineGrid& grid,
                            const std::function<Complex(double)>& f) {
  const std::size_t n = grid.size();
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = f(grid.point(j));
  return out;
}

SpectralSplit spectral_split(const LineGrid& grid,
                             const std::vector<Complex>& samples) {
  std::vector<Complex> spec = samples;
  fft::transform(spec, false);
  const std::size_t n = spec.size();
  const double h = grid.step();

  // Parseval: h * sum |x_j|^2 = (h/n) * sum |X_k|^2.
  const double w = h / double(n);
  double total = 0.0, plus = 0.0, minus = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double p = w * std::norm(spec[k]);
    total += p;
    if (k == 0 || k == n / 2) {
      plus += 0.5 * p;
      minus += 0.5 * p;
    } else if (k < n / 2) {
      plus += p;  // bin k has frequency 2 pi k / (n h) > 0
    } else {
      minus += p;
    }
  }
  SpectralSplit s;
  s.norm = std::sqrt(total);
  s.plus_norm = std::sqrt(plus);
  s.minus_norm = std::sqrt(minus);
  return s;
}

Complex cauchy_transform(const LineGrid& grid,
                         const std::vector<Complex>& samples, Complex zeta) {
  const std::size_t n = grid.size();
  const double h = grid.step();
  Complex acc(0.0, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    acc += wj * samples[j] / (Complex(grid.point(j), 0.0) - zeta);
  }
  return acc * h / (2.0 * M_PI * Complex(0.0, 1.0));
}

double l2_norm(const LineGrid& grid, const std::vector<Complex>& samples) {
  double s = 0.0;
  for (const Complex& v : samples) s += std::norm(v);
  return std::sqrt(s * grid.step());
}

}  // namespace modelkit::hardy
