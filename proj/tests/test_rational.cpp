#include <doctest.h>

#include <cmath>

#include "modelkit/quadrature.hpp"
#include "modelkit/rational.hpp"

using namespace modelkit;
namespace rat = modelkit::rational;

namespace {
const Complex I{0.0, 1.0};

// quadrature oracle over a finite window (integrands decay like 1/t^2)
Complex window_integral(const rat::Expression& e, double W) {
  auto fr = [&](double t) { return rat::evaluate(e, t).real(); };
  auto fi = [&](double t) { return rat::evaluate(e, t).imag(); };
  return {quad::angle_integral(fr, -W, W, 4000).value,
          quad::angle_integral(fi, -W, W, 4000).value};
}
}  // namespace

TEST_CASE("expressions evaluate like their sources") {
  auto spec = blaschke_spec({Complex(0.5, 1.0), Complex(-2.0, 0.25)}, 0.7);
  auto e = rat::inner_expression(spec, false);
  auto ec = rat::inner_expression(spec, true);
  for (double t : {-5.0, -0.1, 0.0, 2.0, 17.0}) {
    const Complex direct = eval_inner(spec, Complex(t, 0.0)).value;
    CHECK(std::abs(rat::evaluate(e, t) - direct) < 1e-13);
    CHECK(std::abs(rat::evaluate(ec, t) - std::conj(direct)) < 1e-13);
  }

  auto k = rat::model_kernel_expression(spec, Complex(0.3, 1.2), false);
  for (double t : {-3.0, 0.4, 9.0}) {
    const Complex direct =
        reproducing_kernel(spec, Complex(0.3, 1.2), Complex(t, 0.0));
    CHECK(std::abs(rat::evaluate(k, t) - direct) < 1e-13);
  }
}

TEST_CASE("line integrals by residues") {
  SUBCASE("1/(t^2+1) integrates to pi") {
    rat::Term t;
    t.poles = {{I, 1}, {-I, 1}};
    const Complex v = rat::line_integral({t});
    CHECK(v.real() == doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(std::abs(v.imag()) < 1e-15);
  }
  SUBCASE("oscillatory kernel: int e^{ist}/(t^2+1) = pi e^{-s}") {
    rat::Term t;
    t.freq = 2.0;
    t.poles = {{I, 1}, {-I, 1}};
    CHECK(rat::line_integral({t}).real() ==
          doctest::Approx(M_PI * std::exp(-2.0)).epsilon(1e-14));
  }
  SUBCASE("double pole: int dt/(t^2+1)^2 = pi/2") {
    rat::Term t;
    t.poles = {{I, 2}, {-I, 2}};
    CHECK(rat::line_integral({t}).real() ==
          doctest::Approx(M_PI / 2.0).epsilon(1e-14));
  }
  SUBCASE("kernel norm matches the reproducing value") {
    auto spec = singular_spec(1.0);
    const Complex lam(0.2, 0.9);
    auto k = rat::model_kernel_expression(spec, lam, false);
    const Complex n2 = rat::inner_product(k, k);
    const Complex expected = reproducing_kernel(spec, lam, lam);
    CHECK(std::abs(n2 - expected) < 1e-14);
    // independent quadrature cross-check
    const Complex q = window_integral(rat::multiply(k, rat::conjugate(k)), 5e4);
    CHECK(std::abs(q - expected) < 1e-5);
  }
  SUBCASE("mixed masses and zeros against quadrature") {
    auto u = blaschke_spec({Complex(1.0, 0.5)}, 0.4);
    auto v = singular_spec(1.1);
    auto e = rat::multiply(
        rat::multiply(rat::inner_expression(u, false),
                      rat::inner_expression(v, true)),
        rat::multiply(rat::model_kernel_expression(v, Complex(0.0, 1.0), false),
                      rat::conjugate(rat::model_kernel_expression(
                          v, Complex(2.0, 1.0), false))));
    const Complex exact = rat::line_integral(e);
    const Complex q = window_integral(e, 5e4);
    CHECK(std::abs(exact - q) < 1e-4);
  }
  SUBCASE("divergent terms are rejected") {
    rat::Term t;  // constant
    CHECK_THROWS_AS(rat::line_integral({t}), InternalInconsistency);
    rat::Term t1;
    t1.poles = {{I, 1}};  // 1/t decay, no oscillation
    CHECK_THROWS_AS(rat::line_integral({t1}), InternalInconsistency);
  }
}

TEST_CASE("hardy split") {
  SUBCASE("analytic kernels have no anti-analytic part") {
    auto k = rat::model_kernel_expression(singular_spec(1.0), Complex(0.5, 1.0),
                                          false);
    auto split = rat::hardy_split(k);
    const Complex m2 = rat::inner_product(split.minus, split.minus);
    CHECK(std::abs(m2) < 1e-28);
    // plus + minus reproduces the function pointwise
    for (double t : {-4.0, 0.0, 3.0}) {
      const Complex sum =
          rat::evaluate(split.plus, t) + rat::evaluate(split.minus, t);
      CHECK(std::abs(sum - rat::evaluate(k, t)) < 1e-12);
    }
  }
  SUBCASE("conjugate kernels are purely anti-analytic") {
    auto k = rat::model_kernel_expression(singular_spec(1.0), Complex(0.5, 1.0),
                                          true);
    auto split = rat::hardy_split(k);
    const Complex p2 = rat::inner_product(split.plus, split.plus);
    CHECK(std::abs(p2) < 1e-28);
  }
  SUBCASE("e^{it}/(t-i): anti-analytic part is e^{-1}/(t-i)") {
    rat::Term t;
    t.freq = 1.0;
    t.poles = {{I, 1}};
    auto split = rat::hardy_split({t});
    const double m2 = std::real(rat::inner_product(split.minus, split.minus));
    // ||e^{-1}/(t-i)||^2 = e^{-2} * pi
    CHECK(m2 == doctest::Approx(std::exp(-2.0) * M_PI).epsilon(1e-13));
    for (double x : {-2.0, 0.3, 5.0}) {
      const Complex direct = std::exp(I * x) / (x - I);
      const Complex sum =
          rat::evaluate(split.plus, x) + rat::evaluate(split.minus, x);
      CHECK(std::abs(sum - direct) < 1e-13);
    }
  }
  SUBCASE("pure rational with poles on both sides") {
    rat::Term t;
    t.poles = {{Complex(1.0, 2.0), 1}, {Complex(-1.0, -0.5), 1}};
    auto split = rat::hardy_split({t});
    // minus part holds the upper pole
    REQUIRE(split.minus.size() == 1);
    CHECK(split.minus[0].poles[0].position == Complex(1.0, 2.0));
    for (double x : {-1.0, 0.0, 2.5}) {
      const Complex sum =
          rat::evaluate(split.plus, x) + rat::evaluate(split.minus, x);
      CHECK(std::abs(sum - rat::evaluate({t}, x)) < 1e-14);
    }
  }
}
