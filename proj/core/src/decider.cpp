#include "modelkit/decider.hpp"

#include <cmath>
#include <sstream>

namespace modelkit {

std::string to_string(PairShape s) {
  switch (s) {
    case PairShape::PureSingularBoth: return "PureSingularBoth";
    case PairShape::FiniteBlaschkeBoth: return "FiniteBlaschkeBoth";
    case PairShape::InfiniteBlaschkeVsSingular: return "InfiniteBlaschkeVsSingular";
    case PairShape::SingularVsInfiniteBlaschke: return "SingularVsInfiniteBlaschke";
    default: return "Other";
  }
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Nontrivial: return "Nontrivial";
    case Verdict::Trivial: return "Trivial";
    case Verdict::UndecidedBoundary: return "UndecidedBoundary";
    default: return "OutOfScope";
  }
}

std::string to_string(Rule r) {
  switch (r) {
    case Rule::SingularSingular: return "SingularSingular";
    case Rule::FiniteBlaschke: return "FiniteBlaschke";
    case Rule::BlaschkeVsSingular: return "BlaschkeVsSingular";
    case Rule::SingularVsBlaschke: return "SingularVsBlaschke";
    case Rule::PureBlaschkeTarget: return "PureBlaschkeTarget";
    default: return "None";
  }
}

MifPair classify_pair(const InnerFunctionSpec& U, const InnerFunctionSpec& V) {
  U.validate();
  V.validate();
  MifPair p{U, V, PairShape::Other};
  const bool u_pure = U.pure_singular();
  const bool v_pure = V.pure_singular();
  const bool u_inf = U.has_unbounded_blaschke();
  const bool v_inf = V.has_unbounded_blaschke();

  if (u_pure && v_pure)
    p.shape = PairShape::PureSingularBoth;
  else if (!u_inf && !v_inf)
    p.shape = PairShape::FiniteBlaschkeBoth;
  else if (u_inf && v_pure)
    p.shape = PairShape::InfiniteBlaschkeVsSingular;
  else if (u_pure && v_inf)
    p.shape = PairShape::SingularVsInfiniteBlaschke;
  else
    p.shape = PairShape::Other;
  return p;
}

MClassification classify_m(const MifPair& pair) {
  MClassification m;
  m.linear_coefficient = pair.U.mass - pair.V.mass;
  m.bounded_remainder = !pair.U.has_unbounded_blaschke() &&
                        !pair.V.has_unbounded_blaschke();
  m.verdict = (m.linear_coefficient != 0.0 && m.bounded_remainder)
                  ? MVerdict::NotInTildeL1
                  : MVerdict::Unknown;
  return m;
}

DerivativeCheck check_derivative_hypothesis(
    const InnerFunctionSpec& U, const std::vector<double>& grid,
    std::pair<double, double> band, const TruncationSchedule& schedule) {
  if (grid.empty()) throw std::invalid_argument("empty derivative grid");
  DerivativeCheck chk;
  const DerivativeSamples d = derivative_modulus_on_line(U, grid, schedule);
  chk.observed_min = d.values[0];
  chk.observed_max = d.values[0];
  for (double v : d.values) {
    chk.observed_min = std::min(chk.observed_min, v);
    chk.observed_max = std::max(chk.observed_max, v);
  }
  chk.observed_max += d.tail_bound;

  if (U.pure_singular()) {
    chk.tail_certified = true;  // |U'| is identically the mass
  } else if (U.has_unbounded_blaschke()) {
    // Almost-periodic derivative: certified once the grid spans two periods.
    const double span = grid.back() - grid.front();
    chk.tail_certified = span >= 2.0 * U.blaschke.family()->alpha;
  } else {
    // finite Blaschke part: |U'| -> mass at infinity
    chk.tail_certified = U.mass >= band.first && U.mass <= band.second;
  }
  chk.grid_only_caveat = !chk.tail_certified;
  chk.pass = chk.observed_min >= band.first && chk.observed_max <= band.second;
  return chk;
}

namespace {

std::vector<double> uniform_grid(double halfwidth, double step) {
  std::vector<double> g;
  for (double x = -halfwidth; x <= halfwidth + 1e-12; x += step) g.push_back(x);
  return g;
}

DensityBracket family_density(const InnerFunctionSpec& spec,
                              const WindowSchedule& windows) {
  const DiscreteSequence seq = DiscreteSequence::from_family(
      *spec.blaschke.family());
  return estimate_density_bracket(seq, {}, windows);
}

}  // namespace

DecisionCertificate decide_multipliers(const MifPair& pair,
                                       const DecisionConfig& cfg) {
  DecisionCertificate cert;
  cert.pair = pair;
  cert.mass_u = pair.U.mass;
  cert.mass_v = pair.V.mass;
  cert.m_classification = classify_m(pair);

  const double a = pair.U.mass;
  const double b = pair.V.mass;
  const double tau = cfg.equality_tolerance;
  std::ostringstream note;

  switch (pair.shape) {
    case PairShape::PureSingularBoth: {
      cert.rule = Rule::SingularSingular;
      const bool equal = std::abs(b - a) <= tau;
      cert.verdict = (equal || b > a) ? Verdict::Nontrivial : Verdict::Trivial;
      cert.hypothesis_notes.push_back(
          "m = (a-b)x + 2 arctan(x): linear growth rules out the conjugate "
          "representation when a != b; a = b admits constant multipliers");
      cert.narrative =
          "pure singular pair: multipliers exist exactly when b >= a";
      break;
    }
    case PairShape::FiniteBlaschkeBoth: {
      cert.rule = Rule::FiniteBlaschke;
      if (std::abs(b - a) <= tau) {
        cert.verdict = Verdict::OutOfScope;
        cert.rule = Rule::None;
        cert.narrative =
            "finite Blaschke parts with equal exponential masses are outside "
            "the decided table (the finite-Blaschke rule assumes a != b)";
        break;
      }
      cert.derivative_check = check_derivative_hypothesis(
          pair.U, uniform_grid(cfg.grid_halfwidth, cfg.grid_step),
          cfg.derivative_band, cfg.schedule);
      cert.hypothesis_notes.push_back(
          "finite Blaschke arguments and 2 arctan(x) are bounded, so the "
          "nonzero linear term decides the growth hypothesis");
      if (!cert.derivative_check->pass)
        cert.hypothesis_notes.push_back(
            "warning: |U'| left the configured band on the test grid");
      cert.verdict = b > a ? Verdict::Nontrivial : Verdict::Trivial;
      cert.narrative =
          "finite Blaschke parts with a != b: multipliers exist exactly when "
          "b > a";
      break;
    }
    case PairShape::InfiniteBlaschkeVsSingular: {
      cert.rule = Rule::BlaschkeVsSingular;
      if (!(b > 0.0)) {
        cert.verdict = Verdict::OutOfScope;
        cert.rule = Rule::None;
        cert.narrative = "the infinite-Blaschke-source rule requires b > 0; "
                         "the zero-mass endpoint is not decided";
        break;
      }
      DensityBracket dens = family_density(pair.U, cfg.density_windows);
      cert.density_bracket = dens;
      if (!dens.exact) {
        cert.verdict = Verdict::OutOfScope;
        cert.rule = Rule::None;
        cert.narrative = "decision refused: density bracket is not exact";
        break;
      }
      cert.density = dens.lower;
      cert.threshold = 2.0 * M_PI * dens.lower;
      cert.derivative_check = check_derivative_hypothesis(
          pair.U, uniform_grid(cfg.grid_halfwidth, cfg.grid_step),
          cfg.derivative_band, cfg.schedule);
      if (!cert.derivative_check->pass) {
        cert.verdict = Verdict::OutOfScope;
        cert.rule = Rule::None;
        cert.narrative =
            "|U'| hypothesis failed on the test grid; decision refused";
        break;
      }
      cert.hypothesis_notes.push_back(
          "growth hypothesis discharged internally by the rule's "
          "contradiction argument for infinite Blaschke sources");
      const double gap = (b - a) - *cert.threshold;
      if (std::abs(gap) <= tau)
        cert.verdict = Verdict::UndecidedBoundary;
      else
        cert.verdict = gap > 0.0 ? Verdict::Nontrivial : Verdict::Trivial;
      note << "U = S^a B, V = S^b with exterior density D = " << dens.lower
           << ": multipliers exist exactly when b - a > 2 pi D; the boundary "
              "b - a = 2 pi D is excluded";
      cert.narrative = note.str();
      break;
    }
    case PairShape::SingularVsInfiniteBlaschke: {
      cert.rule = b == 0.0 ? Rule::PureBlaschkeTarget : Rule::SingularVsBlaschke;
      if (!(a > 0.0)) {
        cert.verdict = Verdict::OutOfScope;
        cert.rule = Rule::None;
        cert.narrative = "the infinite-Blaschke-target rule requires a > 0; "
                         "the zero-mass endpoint is not decided";
        break;
      }
      DensityBracket dens = family_density(pair.V, cfg.density_windows);
      cert.density_bracket = dens;
      if (!dens.exact) {
        cert.verdict = Verdict::OutOfScope;
        cert.rule = Rule::None;
        cert.narrative = "decision refused: density bracket is not exact";
        break;
      }
      cert.density = dens.lower;
      cert.threshold = 2.0 * M_PI * dens.lower;
      cert.derivative_check = check_derivative_hypothesis(
          pair.U, uniform_grid(cfg.grid_halfwidth, cfg.grid_step),
          cfg.derivative_band, cfg.schedule);
      cert.hypothesis_notes.push_back(
          "interior density of the target zero set controls the kernel "
          "threshold");
      const double gap = 2.0 * M_PI * dens.lower - (a - b);
      if (std::abs(gap) <= tau)
        cert.verdict = Verdict::UndecidedBoundary;
      else
        cert.verdict = gap > 0.0 ? Verdict::Nontrivial : Verdict::Trivial;
      note << "U = S^a, V = S^b B with interior density D = " << dens.lower
           << ": multipliers exist exactly when a - b < 2 pi D; the boundary "
              "a - b = 2 pi D is excluded";
      cert.narrative = note.str();
      break;
    }
    default: {
      cert.verdict = Verdict::OutOfScope;
      cert.rule = Rule::None;
      cert.narrative =
          "pair shape outside the decided table; use the kernel triviality "
          "probe for numerical evidence";
      break;
    }
  }
  return cert;
}

CrossValidation cross_validate(const DecisionCertificate& cert,
                               const ProbeConfig& cfg) {
  ToeplitzSymbol sym;
  sym.factors.push_back({cert.pair.U, +1});
  sym.factors.push_back({cert.pair.V, -1});

  CrossValidation cv;
  cv.probe = kernel_triviality_probe(sym, cfg);

  if (cert.verdict != Verdict::Nontrivial && cert.verdict != Verdict::Trivial) {
    cv.agreement = "advisory-only";
    return cv;
  }
  if (cv.probe.verdict == ProbeVerdict::Inconclusive) {
    cv.agreement = "inconclusive";
    return cv;
  }
  const bool probe_nontrivial =
      cv.probe.verdict == ProbeVerdict::LikelyNontrivial;
  const bool cert_nontrivial = cert.verdict == Verdict::Nontrivial;
  cv.agreement = probe_nontrivial == cert_nontrivial ? "agree" : "disagree";
  return cv;
}

}  // namespace modelkit
