#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "modelkit/errors.hpp"
#include "modelkit/schedules.hpp"

namespace modelkit {

// A real function on the line together with a declared tail majorant
//   |h(t)| <= tail_coeff * (1 + |t|)^tail_exponent   for |t| >= tail_from,
// which is what certifies membership in L^1 of the Poisson measure
// d\Pi = dt/(1+t^2) (the exponent must be < 1).
struct PiFunction {
  std::string name = "custom";
  std::function<double(double)> eval;
  double tail_coeff = 0.0;
  double tail_exponent = -2.0;
  double tail_from = 1.0;

  double operator()(double t) const { return eval(t); }
  // Upper bound for int_{|t|>W} |h| dPi; +inf when the model cannot certify.
  double tail_pi_mass(double W) const;
};

// Built-in sources: "zero", "one", "poisson" = 1/(1+t^2), "gauss" = exp(-t^2).
PiFunction named_pi_function(const std::string& name);
PiFunction pi_function_from_callable(std::function<double(double)> f,
                                     double tail_coeff, double tail_exponent,
                                     double tail_from = 1.0,
                                     std::string name = "custom");
// Sampled table (t ascending, value) with linear interpolation inside the
// sampled range and |h(t)| ~ |edge| * (|t|/t_edge)^decay_exponent beyond it.
PiFunction pi_function_from_table(
    const std::vector<std::pair<double, double>>& samples,
    double decay_exponent);

// Same, from a CSV file with rows "t,value" (a header line is skipped).
PiFunction pi_function_from_csv(const std::string& path,
                                double decay_exponent);

struct IntegrabilityWitness {
  std::vector<std::pair<double, double>> partial;  // (W, int_{|t|<=W} |h| dPi)
  double tail_majorant = 0.0;
  bool certified = false;
};

IntegrabilityWitness certify_in_l1_pi(const PiFunction& h,
                                      const WindowSchedule& schedule = {});

struct HilbertResult {
  double value = 0.0;
  double richardson_error = 0.0;  // extrapolation spread + quadrature + tail
};

// Regularized Hilbert transform
//   h~(x) = lim_{eps->0} (1/pi) int_{|x-t|>eps} [1/(x-t) + t/(1+t^2)] h(t) dt,
// computed by symmetric excision at each scheduled epsilon and polynomial
// extrapolation to eps = 0.  The additive normalization that comes with this
// kernel (conjugate vanishing at i) is the one used throughout the library.
HilbertResult hilbert_transform(const PiFunction& h, double x,
                                const PVSchedule& schedule = {});

struct OuterSamples {
  std::vector<std::complex<double>> values;  // H = exp(h + i h~)
  std::vector<double> error_bounds;
};

// Boundary samples of the outer function with modulus e^{h}; the modulus is
// exact by construction, only the phase passes through quadrature.
OuterSamples outer_from_modulus(const PiFunction& h,
                                const std::vector<double>& grid,
                                const PVSchedule& schedule = {});

// Estimates A * Pi{ |h~| > A } on a Poisson-uniform evaluation grid of
// `eval_points` points.  Trend diagnostic only.
std::vector<std::pair<double, double>> weak_l1_tail(
    const PiFunction& h, const std::vector<double>& A_grid,
    const PVSchedule& schedule = {}, int eval_points = 401);

}  // namespace modelkit
