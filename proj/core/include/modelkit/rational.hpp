#pragma once

#include <vector>

#include "modelkit/inner.hpp"

namespace modelkit::rational {

// Sum of terms  coeff * e^{i freq t} * prod (t - z_k) / prod (t - p_l)^{m_l}.
// Boundary values of inner functions, reproducing kernels and Cauchy factors
// all live in this class, which is closed under products and conjugation on
// the line and admits exact integration over R by residues.

struct PoleFactor {
  Complex position;
  int order = 1;
};

struct Term {
  Complex coeff{1.0, 0.0};
  double freq = 0.0;
  std::vector<Complex> zeros;     // multiplicity by repetition
  std::vector<PoleFactor> poles;

  // pole order total minus zero count: decay exponent at infinity
  int decay() const;
};

using Expression = std::vector<Term>;

Expression constant(Complex c);
// Boundary values of an inner function (or its conjugate) on the real line.
Expression inner_expression(const InnerFunctionSpec& spec, bool conjugated,
                            const TruncationSchedule& schedule = {});
// Reproducing kernel of K_U at lambda (true normalization), as a function of
// the line variable; conjugated gives its complex conjugate boundary values.
Expression model_kernel_expression(const InnerFunctionSpec& spec,
                                   Complex lambda, bool conjugated,
                                   const TruncationSchedule& schedule = {});
Expression cauchy_factor(Complex pole);  // 1/(t - pole)

Expression multiply(const Expression& a, const Expression& b);
Expression conjugate(const Expression& a);  // conjugate boundary values
Expression add(Expression a, const Expression& b);
Expression scale(Expression a, Complex c);

Complex evaluate(const Expression& e, double t);

// Exact integral over R by residue calculus.  Requires every term to either
// decay at least like 1/t^2 or carry a nonzero frequency with decay >= 1/t.
Complex line_integral(const Expression& e);

// Splits an expression into its analytic (upper half-plane, H^2) and
// anti-analytic parts: plus + minus == e, exactly.
struct HardySplit {
  Expression plus;
  Expression minus;
};
HardySplit hardy_split(const Expression& e);

// L^2(R) inner product <a, b> = int a conj(b) dt, exact.
Complex inner_product(const Expression& a, const Expression& b);

}  // namespace modelkit::rational
