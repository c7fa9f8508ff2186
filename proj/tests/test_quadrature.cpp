#include <doctest.h>

#include <cmath>

#include "modelkit/fft.hpp"
#include "modelkit/quadrature.hpp"

using namespace modelkit;

TEST_CASE("gk15 integrates smooth functions") {
  auto e = quad::gk15([](double x) { return std::sin(x); }, 0.0, M_PI);
  CHECK(e.value == doctest::Approx(2.0).epsilon(1e-12));

  auto p = quad::angle_integral([](double x) { return 1.0 / (1.0 + x * x); },
                                -1e6, 1e6, 200);
  CHECK(p.value == doctest::Approx(2.0 * std::atan(1e6)).epsilon(1e-10));
}

TEST_CASE("graded breakpoints cover the interval") {
  auto bp = quad::graded_breakpoints(0.5, 100.0, 0.01, 4.0);
  CHECK(bp.front() == 0.5);
  CHECK(bp.back() == 100.0);
  for (std::size_t i = 1; i < bp.size(); ++i) CHECK(bp[i] > bp[i - 1]);
}

TEST_CASE("fft matches the naive transform and Parseval") {
  std::vector<std::complex<double>> x(16);
  for (std::size_t j = 0; j < x.size(); ++j)
    x[j] = {std::cos(0.7 * double(j)), std::sin(0.3 * double(j) + 1.0)};

  auto y = x;
  fft::transform(y, false);

  // naive DFT
  const std::size_t n = x.size();
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j)
      acc += x[j] * std::polar(1.0, -2.0 * M_PI * double(j * k) / double(n));
    CHECK(std::abs(acc - y[k]) < 1e-10);
    sy += std::norm(y[k]);
  }
  for (auto& v : x) sx += std::norm(v);
  CHECK(sy == doctest::Approx(sx * double(n)).epsilon(1e-12));

  fft::transform(y, true);
  for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(y[j] - x[j]) < 1e-12);
}
