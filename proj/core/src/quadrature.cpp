#include "modelkit/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace modelkit::quad {

namespace {

// Kronrod-15 abscissae on [0,1] with Kronrod and embedded Gauss-7 weights.
constexpr double kNodes[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529}};

template <class T, class F>
void gk15_impl(const F& f, double a, double b, T& value, double& error) {
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);

  T y0 = f(mid);
  T g7 = kNodes[0][1] * y0;
  T k15 = kNodes[0][2] * y0;
  for (int i = 1; i < 8; ++i) {
    const double dx = hw * kNodes[i][0];
    T yi = f(mid + dx) + f(mid - dx);
    g7 += kNodes[i][1] * yi;
    k15 += kNodes[i][2] * yi;
  }
  g7 *= hw;
  k15 *= hw;

  double diff = std::abs(k15 - g7);
  double err = 200.0 * diff;
  err *= std::sqrt(err);
  value = k15;
  error = std::min(err, diff * 200.0);
}

}  // namespace

Estimate gk15(const std::function<double(double)>& f, double a, double b) {
  Estimate e;
  gk15_impl(f, a, b, e.value, e.error);
  return e;
}

ComplexEstimate gk15c(const std::function<std::complex<double>(double)>& f,
                      double a, double b) {
  ComplexEstimate e;
  gk15_impl(f, a, b, e.value, e.error);
  return e;
}

Estimate over_panels(const std::function<double(double)>& f,
                     const std::vector<double>& bp) {
  Estimate total;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    Estimate p = gk15(f, bp[i], bp[i + 1]);
    total.value += p.value;
    total.error += p.error;
  }
  return total;
}

ComplexEstimate over_panels_c(
    const std::function<std::complex<double>(double)>& f,
    const std::vector<double>& bp) {
  ComplexEstimate total;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    ComplexEstimate p = gk15c(f, bp[i], bp[i + 1]);
    total.value += p.value;
    total.error += p.error;
  }
  return total;
}

std::vector<double> graded_breakpoints(double a, double b, double first,
                                       double coarse) {
  std::vector<double> bp{a};
  double w = std::max(first, 1e-300);
  double x = a;
  while (x + w < b) {
    x += w;
    bp.push_back(x);
    w = std::min(2.0 * w, coarse);
  }
  if (bp.back() < b) bp.push_back(b);
  return bp;
}

Estimate angle_integral(const std::function<double(double)>& f, double a,
                        double b, int panels) {
  const double ta = std::atan(a), tb = std::atan(b);
  auto g = [&](double theta) {
    const double t = std::tan(theta);
    const double sec2 = 1.0 + t * t;
    return f(t) * sec2;
  };
  std::vector<double> bp;
  bp.reserve(std::size_t(panels) + 1);
  for (int i = 0; i <= panels; ++i)
    bp.push_back(ta + (tb - ta) * double(i) / double(panels));
  return over_panels(g, bp);
}

}  // namespace modelkit::quad
