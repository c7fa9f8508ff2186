#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace modelkit::quad {

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

struct ComplexEstimate {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
};

// 7-15 Gauss-Kronrod rule on [a,b].
Estimate gk15(const std::function<double(double)>& f, double a, double b);
ComplexEstimate gk15c(const std::function<std::complex<double>(double)>& f,
                      double a, double b);

// Sum of gk15 over consecutive panels given by breakpoints (ascending).
Estimate over_panels(const std::function<double(double)>& f,
                     const std::vector<double>& breakpoints);
ComplexEstimate over_panels_c(
    const std::function<std::complex<double>(double)>& f,
    const std::vector<double>& breakpoints);

// Panel layout for [a,b] that is geometrically refined toward `a` (used when
// the integrand has a steep feature at the left endpoint).  Panel widths
// start at `first` and double until reaching `coarse`.
std::vector<double> graded_breakpoints(double a, double b, double first,
                                       double coarse);

// int_{a <= t <= b} f(t) dt computed in the angle variable t = tan(theta);
// handles Poisson-weighted integrands across decades of t.
Estimate angle_integral(const std::function<double(double)>& f, double a,
                        double b, int panels);

}  // namespace modelkit::quad
