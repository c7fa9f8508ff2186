#include <doctest.h>

#include <cmath>

#include "modelkit/decider.hpp"

using namespace modelkit;
namespace {
const Complex I{0.0, 1.0};

InnerFunctionSpec lattice_family(double mass = 0.0) {
  ArithFamily fam;  // n + i over all of Z
  return family_spec(fam, mass);
}

Verdict decide(const InnerFunctionSpec& U, const InnerFunctionSpec& V,
               const DecisionConfig& cfg = {}) {
  return decide_multipliers(classify_pair(U, V), cfg).verdict;
}
}  // namespace

TEST_CASE("pair classification") {
  auto S1 = singular_spec(1.0);
  auto B = blaschke_spec({I, Complex(1.0, 2.0)});
  auto L = lattice_family();
  CHECK(classify_pair(S1, S1).shape == PairShape::PureSingularBoth);
  CHECK(classify_pair(B, S1).shape == PairShape::FiniteBlaschkeBoth);
  CHECK(classify_pair(L, S1).shape == PairShape::InfiniteBlaschkeVsSingular);
  CHECK(classify_pair(S1, L).shape == PairShape::SingularVsInfiniteBlaschke);
  CHECK(classify_pair(L, L).shape == PairShape::Other);
}

TEST_CASE("m classification") {
  auto S2 = singular_spec(2.0);
  auto S1 = singular_spec(1.0);
  SUBCASE("nonzero linear term with bounded remainder") {
    auto m = classify_m(classify_pair(S2, S1));
    CHECK(m.linear_coefficient == doctest::Approx(1.0));
    CHECK(m.bounded_remainder);
    CHECK(m.verdict == MVerdict::NotInTildeL1);
  }
  SUBCASE("zero linear term is unknown") {
    auto b1 = blaschke_spec({I}, 1.0);
    auto b2 = blaschke_spec({2.0 * I}, 1.0);
    auto m = classify_m(classify_pair(b1, b2));
    CHECK(m.linear_coefficient == 0.0);
    CHECK(m.verdict == MVerdict::Unknown);
  }
  SUBCASE("infinite Blaschke part is unknown at this level") {
    auto m = classify_m(classify_pair(lattice_family(1.0), singular_spec(3.0)));
    CHECK(m.linear_coefficient == doctest::Approx(-2.0));
    CHECK_FALSE(m.bounded_remainder);
    CHECK(m.verdict == MVerdict::Unknown);
  }
}

TEST_CASE("derivative hypothesis checks") {
  std::vector<double> grid;
  for (double x = -50.0; x <= 50.0 + 1e-9; x += 0.25) grid.push_back(x);

  SUBCASE("pure singular") {
    auto chk = check_derivative_hypothesis(singular_spec(1.0), grid, {0.5, 2.0});
    CHECK(chk.pass);
    CHECK(chk.observed_min == doctest::Approx(1.0));
    CHECK(chk.tail_certified);
  }
  SUBCASE("shifted integer lattice stays in a tight band") {
    auto chk = check_derivative_hypothesis(lattice_family(), grid, {2.0, 10.0});
    CHECK(chk.pass);
    CHECK(chk.observed_min > 6.2);
    CHECK(chk.observed_max < 6.4);
  }
  SUBCASE("zero hugging the line blows the band") {
    auto spec = blaschke_spec({Complex(0.0, 1e-4)});
    auto chk = check_derivative_hypothesis(spec, grid, {0.01, 100.0});
    CHECK_FALSE(chk.pass);  // |U'(0)| = 2/delta = 2e4
    CHECK(chk.observed_max > 1e4);
  }
}

TEST_CASE("decision table: pure singular pairs") {
  const std::vector<double> masses{0.0, 0.5, 1.0, 2.0, M_PI};
  for (double a : masses) {
    for (double b : masses) {
      auto cert =
          decide_multipliers(classify_pair(singular_spec(a), singular_spec(b)));
      CHECK(cert.rule == Rule::SingularSingular);
      CHECK(cert.verdict ==
            (b >= a ? Verdict::Nontrivial : Verdict::Trivial));
    }
  }
}

TEST_CASE("decision table: finite Blaschke pairs") {
  auto U1 = blaschke_spec({I}, 1.0);
  auto V1 = blaschke_spec({Complex(1.0, 2.0), Complex(-1.0, 1.0)}, 2.0);
  auto U2 = blaschke_spec({Complex(0.5, 0.7)}, 2.0);
  auto V2 = blaschke_spec({Complex(-3.0, 1.5)}, 1.0);
  auto U3 = blaschke_spec({I, I}, 0.5);
  auto V3 = blaschke_spec({2.0 * I}, 3.0);

  CHECK(decide(U1, V1) == Verdict::Nontrivial);  // 1 < 2
  CHECK(decide(U2, V2) == Verdict::Trivial);     // 2 > 1
  CHECK(decide(U3, V3) == Verdict::Nontrivial);  // 0.5 < 3

  SUBCASE("symmetry: a nontrivial direction forces the reverse trivial") {
    for (auto [U, V] : {std::pair{U1, V1}, std::pair{U3, V3}}) {
      REQUIRE(decide(U, V) == Verdict::Nontrivial);
      CHECK(decide(V, U) == Verdict::Trivial);
    }
  }
  SUBCASE("equal masses are out of scope") {
    auto cert = decide_multipliers(
        classify_pair(blaschke_spec({I}, 1.0), blaschke_spec({2.0 * I}, 1.0)));
    CHECK(cert.verdict == Verdict::OutOfScope);
  }
  SUBCASE("constants do not change the verdict") {
    auto U = blaschke_spec({I}, 1.0);
    auto V = blaschke_spec({2.0 * I}, 2.0);
    U.unimodular_constant = std::polar(1.0, 2.1);
    V.unimodular_constant = std::polar(1.0, -0.4);
    CHECK(decide(U, V) == Verdict::Nontrivial);
  }
}

TEST_CASE("decision table: infinite Blaschke source vs singular target") {
  auto U = lattice_family();  // D = 1
  const double D = 1.0;
  SUBCASE("flip across b - a = 2 pi D") {
    CHECK(decide(U, singular_spec(2.0 * M_PI * D + 0.5)) == Verdict::Nontrivial);
    CHECK(decide(U, singular_spec(2.0 * M_PI * D - 0.5)) == Verdict::Trivial);
    CHECK(decide(U, singular_spec(2.0 * M_PI * D)) ==
          Verdict::UndecidedBoundary);
  }
  SUBCASE("zero-mass target endpoint is out of scope") {
    CHECK(decide(U, singular_spec(0.0)) == Verdict::OutOfScope);
  }
  SUBCASE("certificate carries the density data") {
    auto cert = decide_multipliers(classify_pair(U, singular_spec(7.0)));
    REQUIRE(cert.density.has_value());
    CHECK(*cert.density == doctest::Approx(1.0));
    CHECK(*cert.threshold == doctest::Approx(2.0 * M_PI));
    CHECK(cert.rule == Rule::BlaschkeVsSingular);
    REQUIRE(cert.derivative_check.has_value());
    CHECK(cert.derivative_check->pass);
  }
}

TEST_CASE("decision table: singular source vs infinite Blaschke target") {
  auto V0 = lattice_family();        // pure Blaschke target, D = 1
  auto V1 = lattice_family(1.0);     // with mass b = 1
  SUBCASE("pure Blaschke target flips at a = 2 pi") {
    auto cert_pi =
        decide_multipliers(classify_pair(singular_spec(M_PI), V0));
    CHECK(cert_pi.verdict == Verdict::Nontrivial);
    CHECK(cert_pi.rule == Rule::PureBlaschkeTarget);
    CHECK(decide(singular_spec(7.0), V0) == Verdict::Trivial);
    CHECK(decide(singular_spec(2.0 * M_PI), V0) == Verdict::UndecidedBoundary);
  }
  SUBCASE("massive target uses a - b") {
    CHECK(decide(singular_spec(1.0 + 2.0 * M_PI - 0.25), V1) ==
          Verdict::Nontrivial);
    CHECK(decide(singular_spec(1.0 + 2.0 * M_PI + 0.25), V1) ==
          Verdict::Trivial);
  }
  SUBCASE("zero-mass source endpoint is out of scope") {
    CHECK(decide(singular_spec(0.0), V0) == Verdict::OutOfScope);
  }
}

TEST_CASE("monotonicity of the verdict in the target mass") {
  const double a = 2.0;
  Verdict prev = Verdict::Trivial;
  for (double b : {0.0, 0.5, 1.0, 1.9999, 2.0, 2.0001, 3.0, 10.0}) {
    const Verdict v = decide(singular_spec(a), singular_spec(b));
    if (prev == Verdict::Nontrivial) CHECK(v == Verdict::Nontrivial);
    prev = v;
    CHECK(v == (b >= a ? Verdict::Nontrivial : Verdict::Trivial));
  }
}

TEST_CASE("other shapes are out of scope with a probe pointer") {
  auto cert = decide_multipliers(
      classify_pair(lattice_family(), lattice_family(1.0)));
  CHECK(cert.verdict == Verdict::OutOfScope);
  CHECK(cert.rule == Rule::None);
  CHECK(cert.narrative.find("probe") != std::string::npos);
}

TEST_CASE("cross validation against the probe") {
  ProbeConfig cfg;
  cfg.basis_sizes = {8, 16, 32};
  SUBCASE("nontrivial pure singular pair agrees") {
    auto cert = decide_multipliers(
        classify_pair(singular_spec(1.0), singular_spec(2.0)));
    REQUIRE(cert.verdict == Verdict::Nontrivial);
    auto cv = cross_validate(cert, cfg);
    CHECK(cv.agreement == "agree");
  }
  SUBCASE("trivial pure singular pair agrees") {
    auto cert = decide_multipliers(
        classify_pair(singular_spec(2.0), singular_spec(1.0)));
    REQUIRE(cert.verdict == Verdict::Trivial);
    auto cv = cross_validate(cert, cfg);
    CHECK(cv.agreement == "agree");
  }
  SUBCASE("boundary verdicts are advisory only") {
    auto U = lattice_family();
    auto cert =
        decide_multipliers(classify_pair(U, singular_spec(2.0 * M_PI)));
    REQUIRE(cert.verdict == Verdict::UndecidedBoundary);
    ProbeConfig small = cfg;
    small.family_schedule.max_terms = 40;
    auto cv = cross_validate(cert, small);
    CHECK(cv.agreement == "advisory-only");
  }
}
