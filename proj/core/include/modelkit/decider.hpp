#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modelkit/density.hpp"
#include "modelkit/inner.hpp"
#include "modelkit/toeplitz.hpp"

namespace modelkit {

enum class PairShape {
  PureSingularBoth,
  FiniteBlaschkeBoth,
  InfiniteBlaschkeVsSingular,
  SingularVsInfiniteBlaschke,
  Other
};

std::string to_string(PairShape s);

struct MifPair {
  InnerFunctionSpec U;
  InnerFunctionSpec V;
  PairShape shape = PairShape::Other;
};

MifPair classify_pair(const InnerFunctionSpec& U, const InnerFunctionSpec& V);

enum class MVerdict { NotInTildeL1, Unknown };

// Classification of m = arg(U) - arg(V b_i): a nonzero linear growth term
// plus a certified bounded remainder rules out m being a regularized
// conjugate of an L^1(Pi) function.
struct MClassification {
  double linear_coefficient = 0.0;   // mass(U) - mass(V)
  bool bounded_remainder = false;    // provable only for finite Blaschke parts
  MVerdict verdict = MVerdict::Unknown;
};

MClassification classify_m(const MifPair& pair);

enum class Verdict { Nontrivial, Trivial, UndecidedBoundary, OutOfScope };
enum class Rule {
  SingularSingular,     // U = S^a, V = S^b: nontrivial iff b >= a
  FiniteBlaschke,       // finite Blaschke parts, a != b: nontrivial iff b > a
  BlaschkeVsSingular,   // U = S^a B, V = S^b: nontrivial iff b - a > 2 pi D*
  SingularVsBlaschke,   // U = S^a, V = S^b B: nontrivial iff a - b < 2 pi D*
  PureBlaschkeTarget,   // U = S^a, V = B: nontrivial iff a < 2 pi D*
  None
};

std::string to_string(Verdict v);
std::string to_string(Rule r);

struct DerivativeCheck {
  bool pass = false;
  double observed_min = 0.0;
  double observed_max = 0.0;
  bool tail_certified = false;  // closed-form control beyond the grid
  bool grid_only_caveat = true;
};

DerivativeCheck check_derivative_hypothesis(
    const InnerFunctionSpec& U, const std::vector<double>& grid,
    std::pair<double, double> band, const TruncationSchedule& schedule = {});

struct DecisionConfig {
  double grid_halfwidth = 50.0;
  double grid_step = 0.25;
  std::pair<double, double> derivative_band{1e-2, 1e2};
  double equality_tolerance = 1e-12;
  WindowSchedule density_windows;
  TruncationSchedule schedule;
};

struct DecisionCertificate {
  Verdict verdict = Verdict::OutOfScope;
  Rule rule = Rule::None;
  MifPair pair;
  double mass_u = 0.0;
  double mass_v = 0.0;
  std::optional<double> density;    // D used by the density rules
  std::optional<double> threshold;  // 2 pi D
  MClassification m_classification;
  std::optional<DerivativeCheck> derivative_check;
  std::optional<DensityBracket> density_bracket;
  std::vector<std::string> hypothesis_notes;
  std::string narrative;
};

// Applies exactly one row of the structured-family case table; pairs outside
// the four shapes come back OutOfScope with a pointer to the numerical probe.
DecisionCertificate decide_multipliers(const MifPair& pair,
                                       const DecisionConfig& cfg = {});

struct CrossValidation {
  ProbeReport probe;
  std::string agreement;  // "agree", "disagree", "inconclusive", "advisory-only"
};

// Runs the kernel triviality probe on U conj(V) and compares with the
// certificate; disagreement never overrides the certificate.
CrossValidation cross_validate(const DecisionCertificate& cert,
                               const ProbeConfig& cfg = {});

}  // namespace modelkit
