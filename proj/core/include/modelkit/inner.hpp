#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "modelkit/errors.hpp"
#include "modelkit/schedules.hpp"

namespace modelkit {

using Complex = std::complex<double>;

inline bool in_upper_half(Complex z) { return z.imag() > 0.0; }
inline bool on_line(Complex z) { return z.imag() == 0.0; }

// Zeros on an arithmetic progression alpha*n + i*beta.  A missing bound means
// the progression extends to infinity on that side; closed-form tail bounds
// are then used wherever the zeros enter a sum or product.
struct ArithFamily {
  double alpha = 1.0;
  double beta = 1.0;
  std::optional<long> nmin;  // nullopt: unbounded below
  std::optional<long> nmax;  // nullopt: unbounded above

  bool bounded() const { return nmin.has_value() && nmax.has_value(); }
  Complex zero_at(long n) const { return {alpha * double(n), beta}; }
};

// Phase alpha in (-pi, pi] that makes the Blaschke factor with zero w positive
// at i; the degenerate zero w = i gets alpha = 0 (continuity limit).
double phase_alpha(Complex w);

// Zero set of the Blaschke part of an inner function, either an explicit list
// (kept in the order given) or an arithmetic family.  Phases are cached for
// explicit zeros.
class BlaschkeData {
public:
  BlaschkeData() = default;
  explicit BlaschkeData(std::vector<Complex> zeros);
  explicit BlaschkeData(const ArithFamily& family);

  bool empty() const { return zeros_.empty() && !unbounded(); }
  bool unbounded() const { return family_ && !family_->bounded(); }
  // Number of explicitly materialized zeros (bounded families included).
  std::size_t explicit_count() const { return zeros_.size(); }

  const std::vector<Complex>& zeros() const { return zeros_; }
  const std::vector<double>& phases() const { return phases_; }
  const std::optional<ArithFamily>& family() const { return family_; }

private:
  std::vector<Complex> zeros_;
  std::vector<double> phases_;
  std::optional<ArithFamily> family_;
};

// Parametric representation of a meromorphic inner function:
//   U(z) = C * exp(i*a*z) * prod_n exp(i*alpha_n) (z - w_n)/(z - conj(w_n)).
struct InnerFunctionSpec {
  double mass = 0.0;                       // a >= 0
  Complex unimodular_constant{1.0, 0.0};   // |C| = 1
  BlaschkeData blaschke;

  bool pure_singular() const { return blaschke.empty(); }
  bool has_unbounded_blaschke() const { return blaschke.unbounded(); }
  // A finite Blaschke product carries no exponential mass and finitely many
  // zeros (the constant function counts as the empty product).
  bool finite_blaschke_product() const {
    return mass == 0.0 && !blaschke.unbounded();
  }
  void validate() const;
};

InnerFunctionSpec singular_spec(double mass);  // S^a
InnerFunctionSpec blaschke_spec(std::vector<Complex> zeros, double mass = 0.0);
InnerFunctionSpec family_spec(const ArithFamily& family, double mass = 0.0);

struct EvalResult {
  Complex value{0.0, 0.0};
  double truncation_error_bound = 0.0;
  int terms_used = 0;
};

struct BlaschkeConditionReport {
  std::vector<double> partial_sums;
  bool converged = false;
};

// Partial sums of sum Im(w)/(1+|w|^2) along the schedule stages.  A complete
// enumeration of a finite zero set is reported converged regardless of the
// stage-difference test.
BlaschkeConditionReport blaschke_condition_sum(
    const std::vector<Complex>& zeros,
    const TruncationSchedule& schedule = {});

// Evaluate the inner function at z in the closed upper half-plane.  For
// unbounded families the product is truncated symmetrically and the reported
// bound covers the dropped tail; it is zero for complete finite products.
EvalResult eval_inner(const InnerFunctionSpec& spec, Complex z,
                      const TruncationSchedule& schedule = {});

// Continuous branch of arg U along an increasing grid, pinned so the value at
// the grid point nearest 0 lies in (-pi, pi].
std::vector<double> arg_on_line(const InnerFunctionSpec& spec,
                                const std::vector<double>& grid,
                                const TruncationSchedule& schedule = {});

struct DerivativeSamples {
  std::vector<double> values;
  double tail_bound = 0.0;  // uniform bound on the dropped family tail
};

// |U'(x)| = a + sum 2 Im(w)/|x - w|^2 on the grid.
DerivativeSamples derivative_modulus_on_line(
    const InnerFunctionSpec& spec, const std::vector<double>& grid,
    const TruncationSchedule& schedule = {});

// U(z), U'(z), ..., U^(kmax)(z) via the logarithmic derivative recursion.
// Unbounded families are truncated per the schedule.
std::vector<Complex> inner_derivatives(const InnerFunctionSpec& spec,
                                       Complex z, int kmax,
                                       const TruncationSchedule& schedule = {});

// Tag type selecting the kernel of the full Hardy space H^2.
struct H2Space {};

// Kernel of H^2 at lambda, normalized so the kernel at i is 1/(pi (z + i)).
Complex reproducing_kernel(H2Space, Complex lambda, Complex z);

// Reproducing kernel of the model space K_U at lambda:
//   k_lambda(z) = (i/2pi) (1 - conj(U(lambda)) U(z)) / (z - conj(lambda)),
// normalized so that <f, k_lambda> = f(lambda) under <f,g> = int f conj(g) dx.
// (This differs from the H2Space overload by a constant factor; the H2Space
// normalization is kept for compatibility with the 1/(pi(z+i)) convention.)
Complex reproducing_kernel(const InnerFunctionSpec& spec, Complex lambda,
                           Complex z, const TruncationSchedule& schedule = {});

// d^s/dz^s of the model-space kernel, s = 0..smax.
std::vector<Complex> reproducing_kernel_derivatives(
    const InnerFunctionSpec& spec, Complex lambda, Complex z, int smax,
    const TruncationSchedule& schedule = {});

// <k_lambda, k_mu> in K_U, closed form via the reproducing property.
Complex model_kernel_inner_product(const InnerFunctionSpec& spec,
                                   Complex lambda, Complex mu,
                                   const TruncationSchedule& schedule = {});

namespace detail {
// Bound on |1 - u(z)| for the normalized Blaschke factor with zero w.
double factor_deviation_bound(Complex w, Complex z);
// Half-count N and log-tail bound for truncating an unbounded family at
// |n| <= N when evaluating at z.  Ensures N is large enough for the bound's
// validity; throws TailNotBounded if that exceeds hard limits.
struct FamilyTruncation {
  long n_lo = 0;      // inclusive materialized range
  long n_hi = 0;
  double log_tail = 0.0;
};
FamilyTruncation family_truncation(const ArithFamily& fam, Complex z,
                                   const TruncationSchedule& schedule);
}  // namespace detail

}  // namespace modelkit
