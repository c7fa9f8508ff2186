#include "modelkit/inner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace modelkit {

namespace {
constexpr Complex kImag{0.0, 1.0};

void check_zero(Complex w) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
    throw NonUpperHalfZero("blaschke zero has non-finite components");
  if (!(w.imag() > 0.0))
    throw NonUpperHalfZero("blaschke zero must lie in the open upper half-plane");
}
}  // namespace

double phase_alpha(Complex w) {
  check_zero(w);
  if (std::abs(w - kImag) < 1e-14) return 0.0;  // factor already normalized
  const Complex rho = (kImag - w) / (kImag - std::conj(w));
  double a = -std::arg(rho);
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

BlaschkeData::BlaschkeData(std::vector<Complex> zeros)
    : zeros_(std::move(zeros)) {
  phases_.reserve(zeros_.size());
  for (Complex w : zeros_) phases_.push_back(phase_alpha(w));
}

BlaschkeData::BlaschkeData(const ArithFamily& family) : family_(family) {
  if (family.alpha <= 0.0 || family.beta <= 0.0)
    throw std::invalid_argument("arithmetic family needs alpha > 0, beta > 0");
  if (family.bounded()) {
    if (*family.nmin > *family.nmax)
      throw std::invalid_argument("arithmetic family has empty index range");
    zeros_.reserve(std::size_t(*family.nmax - *family.nmin + 1));
    for (long n = *family.nmin; n <= *family.nmax; ++n) {
      zeros_.push_back(family.zero_at(n));
      phases_.push_back(phase_alpha(zeros_.back()));
    }
  }
}

void InnerFunctionSpec::validate() const {
  if (!(mass >= 0.0) || !std::isfinite(mass))
    throw std::invalid_argument("inner function mass must be finite and >= 0");
  if (std::abs(std::abs(unimodular_constant) - 1.0) > 1e-9)
    throw std::invalid_argument("inner function constant must be unimodular");
}

InnerFunctionSpec singular_spec(double mass) {
  InnerFunctionSpec s;
  s.mass = mass;
  s.validate();
  return s;
}

InnerFunctionSpec blaschke_spec(std::vector<Complex> zeros, double mass) {
  InnerFunctionSpec s;
  s.mass = mass;
  s.blaschke = BlaschkeData(std::move(zeros));
  s.validate();
  return s;
}

InnerFunctionSpec family_spec(const ArithFamily& family, double mass) {
  InnerFunctionSpec s;
  s.mass = mass;
  s.blaschke = BlaschkeData(family);
  s.validate();
  return s;
}

BlaschkeConditionReport blaschke_condition_sum(
    const std::vector<Complex>& zeros, const TruncationSchedule& schedule) {
  BlaschkeConditionReport rep;
  if (zeros.empty()) {
    rep.partial_sums = {0.0};
    rep.converged = true;  // empty product
    return rep;
  }
  for (Complex w : zeros) check_zero(w);

  std::vector<int> stages = schedule.stages();
  stages.erase(std::remove_if(stages.begin(), stages.end(),
                              [&](int n) { return n >= int(zeros.size()); }),
               stages.end());
  stages.push_back(int(zeros.size()));

  double sum = 0.0;
  std::size_t next = 0;
  for (int stage : stages) {
    while (next < std::size_t(stage)) {
      const Complex w = zeros[next++];
      sum += w.imag() / (1.0 + std::norm(w));
    }
    rep.partial_sums.push_back(sum);
  }
  const std::size_t m = rep.partial_sums.size();
  // A full enumeration of the given zeros is exact by construction.
  rep.converged =
      stages.back() == int(zeros.size()) ||
      (m >= 2 && std::abs(rep.partial_sums[m - 1] - rep.partial_sums[m - 2]) <
                     schedule.tolerance);
  return rep;
}

namespace detail {

double factor_deviation_bound(Complex w, Complex z) {
  const double u = w.real(), v = w.imag();
  const double D = u * u + (1.0 + v) * (1.0 + v);
  const double rho2 = (u * u + (1.0 - v) * (1.0 - v)) / D;
  const double rho = std::sqrt(rho2);
  const double dist = std::abs(z - std::conj(w));
  return ((1.0 - rho) + 2.0 * v * (std::abs(z) + 1.0) / (std::sqrt(D) * dist)) /
         rho;
}

FamilyTruncation family_truncation(const ArithFamily& fam, Complex z,
                                   const TruncationSchedule& schedule) {
  const double az = std::abs(z);
  const double alpha = fam.alpha, beta = fam.beta;

  long n_min_valid = long(std::ceil(2.0 * (az + 1.0) / alpha)) + 1;
  const double d2 = 8.0 * beta - (1.0 + beta) * (1.0 + beta);
  if (d2 > 0.0)
    n_min_valid =
        std::max(n_min_valid, long(std::ceil(std::sqrt(d2) / alpha)) + 1);
  n_min_valid = std::max<long>(n_min_valid, 8);

  long budget = std::max<long>(schedule.max_terms / 2, 1);
  long half = std::max(budget, n_min_valid);
  constexpr long kHardCap = 5'000'000;
  if (half > kHardCap)
    throw TailNotBounded(
        "family tail bound requires more terms than the hard cap allows");

  FamilyTruncation ft;
  ft.n_lo = fam.nmin ? *fam.nmin : -half;
  ft.n_hi = fam.nmax ? *fam.nmax : half;

  // sum_{|n|>N} |1-u_n(z)| <= (1/rho_inf) 4 beta (|z|+2)/alpha^2 * 1/N
  // per unbounded side, with rho_inf evaluated at the first dropped index.
  const double DN = alpha * alpha * double(half + 1) * double(half + 1) +
                    (1.0 + beta) * (1.0 + beta);
  const double rho_inf = std::sqrt(std::max(0.5, 1.0 - 4.0 * beta / DN));
  const double per_side =
      4.0 * beta * (az + 2.0) / (alpha * alpha * rho_inf * double(half));
  ft.log_tail = 0.0;
  if (!fam.nmin) ft.log_tail += per_side;
  if (!fam.nmax) ft.log_tail += per_side;
  return ft;
}

}  // namespace detail

namespace {

// Multiply the normalized Blaschke factors for an explicit zero range into
// `val`; throws PoleHit if z collides with a reflected zero.
void multiply_factors(Complex& val, Complex z,
                      const std::vector<Complex>& zeros,
                      const std::vector<double>& phases) {
  for (std::size_t n = 0; n < zeros.size(); ++n) {
    const Complex den = z - std::conj(zeros[n]);
    if (std::abs(den) < 1e-300)
      throw PoleHit("evaluation point collides with a reflected zero");
    val *= std::polar(1.0, phases[n]) * (z - zeros[n]) / den;
  }
}

struct MaterializedZeros {
  std::vector<Complex> zeros;
  std::vector<double> phases;
  double log_tail = 0.0;
};

MaterializedZeros materialize(const InnerFunctionSpec& spec, Complex z,
                              const TruncationSchedule& schedule) {
  MaterializedZeros m;
  if (!spec.blaschke.unbounded()) {
    m.zeros = spec.blaschke.zeros();
    m.phases = spec.blaschke.phases();
    return m;
  }
  const ArithFamily& fam = *spec.blaschke.family();
  auto ft = detail::family_truncation(fam, z, schedule);
  m.zeros.reserve(std::size_t(ft.n_hi - ft.n_lo + 1));
  for (long n = ft.n_lo; n <= ft.n_hi; ++n) {
    m.zeros.push_back(fam.zero_at(n));
    m.phases.push_back(phase_alpha(m.zeros.back()));
  }
  m.log_tail = ft.log_tail;
  return m;
}

}  // namespace

EvalResult eval_inner(const InnerFunctionSpec& spec, Complex z,
                      const TruncationSchedule& schedule) {
  spec.validate();
  if (z.imag() < 0.0)
    throw NonUpperHalfPoint("eval_inner expects z in the closed upper half-plane");

  EvalResult res;
  Complex val = spec.unimodular_constant * std::exp(kImag * spec.mass * z);

  MaterializedZeros m = materialize(spec, z, schedule);
  multiply_factors(val, z, m.zeros, m.phases);

  res.value = val;
  res.terms_used = int(m.zeros.size());
  res.truncation_error_bound = std::abs(val) * std::expm1(m.log_tail);
  return res;
}

std::vector<double> arg_on_line(const InnerFunctionSpec& spec,
                                const std::vector<double>& grid,
                                const TruncationSchedule& schedule) {
  if (grid.empty()) return {};
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1]))
      throw std::invalid_argument("arg_on_line grid must be strictly increasing");

  // The exponential factor alone advances the phase by mass*step; that part
  // of the step bound can be checked a priori (unwrap cannot see aliasing).
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (spec.mass * (grid[k] - grid[k - 1]) >= M_PI)
      throw GridTooCoarse("grid step too large for the exponential mass");

  std::vector<double> raw(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    raw[k] = std::arg(eval_inner(spec, Complex(grid[k], 0.0), schedule).value);

  std::vector<double> theta(grid.size());
  theta[0] = raw[0];
  for (std::size_t k = 1; k < grid.size(); ++k) {
    double d = std::remainder(raw[k] - raw[k - 1], 2.0 * M_PI);
    if (std::abs(d) >= M_PI * (1.0 - 1e-9))
      throw GridTooCoarse("phase jump of pi or more between neighboring grid points");
    theta[k] = theta[k - 1] + d;
  }

  std::size_t k0 = 0;
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (std::abs(grid[k]) < std::abs(grid[k0])) k0 = k;
  const double shift =
      2.0 * M_PI * std::round((theta[k0] - raw[k0]) / (2.0 * M_PI));
  for (double& t : theta) t -= shift;
  return theta;
}

DerivativeSamples derivative_modulus_on_line(
    const InnerFunctionSpec& spec, const std::vector<double>& grid,
    const TruncationSchedule& schedule) {
  spec.validate();
  DerivativeSamples out;
  out.values.reserve(grid.size());

  double max_abs_x = 0.0;
  for (double x : grid) max_abs_x = std::max(max_abs_x, std::abs(x));

  MaterializedZeros m;
  if (spec.blaschke.unbounded()) {
    const ArithFamily& fam = *spec.blaschke.family();
    auto ft = detail::family_truncation(fam, Complex(max_abs_x, 0.0), schedule);
    for (long n = ft.n_lo; n <= ft.n_hi; ++n) m.zeros.push_back(fam.zero_at(n));

    // sum_{n>N} 2 beta/((x-alpha n)^2+beta^2) <= (2/alpha)(pi/2 - atan(e/beta))
    // with e the gap between |x| and the first dropped zero.
    const double alpha = fam.alpha, beta = fam.beta;
    auto side_tail = [&](double first_dropped) {
      const double edge = alpha * first_dropped - max_abs_x;
      return (2.0 / alpha) * (M_PI / 2.0 - std::atan(edge / beta));
    };
    if (!fam.nmax) out.tail_bound += side_tail(double(ft.n_hi));
    if (!fam.nmin) out.tail_bound += side_tail(double(-ft.n_lo));
  } else {
    m.zeros = spec.blaschke.zeros();
  }

  for (double x : grid) {
    double s = spec.mass;
    for (Complex w : m.zeros) s += 2.0 * w.imag() / std::norm(Complex(x, 0.0) - w);
    out.values.push_back(s);
  }
  return out;
}

std::vector<Complex> inner_derivatives(const InnerFunctionSpec& spec,
                                       Complex z, int kmax,
                                       const TruncationSchedule& schedule) {
  MaterializedZeros m = materialize(spec, z, schedule);

  Complex val = spec.unimodular_constant * std::exp(kImag * spec.mass * z);
  multiply_factors(val, z, m.zeros, m.phases);

  // L = U'/U = i a + sum (1/(z-w) - 1/(z-conj w));   U^{(r+1)} via Leibniz.
  std::vector<Complex> L(std::size_t(kmax) + 1, Complex(0.0, 0.0));
  if (kmax >= 1) {
    for (int s = 0; s + 1 <= kmax; ++s) {
      Complex acc(0.0, 0.0);
      double fact = 1.0;
      for (int q = 1; q <= s; ++q) fact *= q;
      const double sign = (s % 2 == 0) ? 1.0 : -1.0;
      for (Complex w : m.zeros) {
        acc += std::pow(z - w, -(s + 1)) - std::pow(z - std::conj(w), -(s + 1));
      }
      L[std::size_t(s)] = sign * fact * acc;
      if (s == 0) L[0] += kImag * spec.mass;
    }
  }

  std::vector<Complex> U(std::size_t(kmax) + 1);
  U[0] = val;
  std::vector<std::vector<double>> binom(std::size_t(kmax) + 1);
  for (int r = 0; r <= kmax; ++r) {
    binom[std::size_t(r)].assign(std::size_t(r) + 1, 1.0);
    for (int q = 1; q < r; ++q)
      binom[std::size_t(r)][std::size_t(q)] =
          binom[std::size_t(r) - 1][std::size_t(q) - 1] +
          binom[std::size_t(r) - 1][std::size_t(q)];
  }
  for (int r = 0; r + 1 <= kmax; ++r) {
    Complex acc(0.0, 0.0);
    for (int q = 0; q <= r; ++q)
      acc += binom[std::size_t(r)][std::size_t(q)] * U[std::size_t(q)] *
             L[std::size_t(r - q)];
    U[std::size_t(r) + 1] = acc;
  }
  return U;
}

Complex reproducing_kernel(H2Space, Complex lambda, Complex z) {
  if (!(lambda.imag() > 0.0))
    throw NonUpperHalfPoint("H^2 kernel point must lie in the upper half-plane");
  return (1.0 / M_PI) / (z - std::conj(lambda));
}

Complex reproducing_kernel(const InnerFunctionSpec& spec, Complex lambda,
                           Complex z, const TruncationSchedule& schedule) {
  if (!(lambda.imag() > 0.0))
    throw NonUpperHalfPoint("model kernel point must lie in the upper half-plane");
  const Complex Ul = eval_inner(spec, lambda, schedule).value;
  const Complex Uz = eval_inner(spec, z, schedule).value;
  return (kImag / (2.0 * M_PI)) * (1.0 - std::conj(Ul) * Uz) /
         (z - std::conj(lambda));
}

std::vector<Complex> reproducing_kernel_derivatives(
    const InnerFunctionSpec& spec, Complex lambda, Complex z, int smax,
    const TruncationSchedule& schedule) {
  if (!(lambda.imag() > 0.0))
    throw NonUpperHalfPoint("model kernel point must lie in the upper half-plane");
  const Complex cUl = std::conj(eval_inner(spec, lambda, schedule).value);
  std::vector<Complex> U = inner_derivatives(spec, z, smax, schedule);

  // g = 1/(z - conj(lambda)); g^{(m)} = (-1)^m m! g^{m+1}
  const Complex g = 1.0 / (z - std::conj(lambda));
  std::vector<Complex> gd(std::size_t(smax) + 1);
  Complex gp = g;
  double fact = 1.0, sign = 1.0;
  for (int mth = 0; mth <= smax; ++mth) {
    gd[std::size_t(mth)] = sign * fact * gp;
    gp *= g;
    sign = -sign;
    fact *= (mth + 1);
  }

  std::vector<Complex> out(std::size_t(smax) + 1);
  std::vector<double> binom_row{1.0};
  for (int s = 0; s <= smax; ++s) {
    Complex acc(0.0, 0.0);
    for (int q = 0; q <= s; ++q) {
      const Complex numerator_q =
          (q == 0) ? (1.0 - cUl * U[0]) : (-cUl * U[std::size_t(q)]);
      acc += binom_row[std::size_t(q)] * numerator_q * gd[std::size_t(s - q)];
    }
    out[std::size_t(s)] = (kImag / (2.0 * M_PI)) * acc;
    binom_row.push_back(1.0);
    for (int q = s; q >= 1; --q) binom_row[std::size_t(q)] += binom_row[std::size_t(q) - 1];
  }
  return out;
}

Complex model_kernel_inner_product(const InnerFunctionSpec& spec,
                                   Complex lambda, Complex mu,
                                   const TruncationSchedule& schedule) {
  return reproducing_kernel(spec, lambda, mu, schedule);
}

}  // namespace modelkit
