#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "modelkit/inner.hpp"
#include "modelkit/schedules.hpp"

namespace modelkit {

// Locally finite point set in the closed upper half-plane, kept sorted by
// (Re, Im).  Repeated points are allowed and counted with multiplicity.
// An unbounded arithmetic family is stored by its descriptor; points are
// materialized on demand within the window being examined.
struct DiscreteSequence {
  std::vector<Complex> points;
  std::optional<ArithFamily> family;

  static DiscreteSequence from_real(std::vector<double> xs);
  static DiscreteSequence from_points(std::vector<Complex> ps);
  // beta == 0 is allowed here (a real progression); beta > 0 puts the family
  // in the upper half-plane.
  static DiscreteSequence from_family(const ArithFamily& fam);

  bool all_real() const;
  bool unbounded() const { return family && !family->bounded(); }
  double extent() const;  // max |Re(point)| over materialized points
};

// Two-sided counting function: card(seq ∩ [0,x]) for x >= 0 and
// -card(seq ∩ [x,0]) for x < 0; closed intervals on both sides.
long counting_function(const DiscreteSequence& seq, double x);

struct StarTransformResult {
  DiscreteSequence sequence;  // on the real line, sorted
  int dropped = 0;            // points with Re = 0
};

// lambda -> |lambda|^2 / Re(lambda); purely imaginary points are dropped.
StarTransformResult star_transform(const DiscreteSequence& seq);

struct RegularityReport {
  double a = 0.0;
  std::vector<std::pair<double, double>> window_integrals;  // (W, int over [-W,W])
  bool converged = false;
  // Window-trend verdict alone.  `converged` additionally accepts the a = 0
  // finite-data case, whose beyond-extent tail has a closed form; density
  // estimation reads the input as a truncation and uses the trend only.
  bool trend_converged = false;
  double extrapolated_value = std::numeric_limits<double>::infinity();
  double fitted_decay = 0.0;  // p in increments ~ c W^-p (0 if not fitted)
  bool windows_capped = false;          // finite data: schedule clipped to extent
  bool beyond_extent_divergent = false; // finite data, a != 0: plane integral diverges
};

// Exact integral of |n(x) - a x| / (1+x^2) over [x0, x1]: the counting
// function is a step function, so every piece has a closed form.
double regularity_integral_interval(const DiscreteSequence& seq, double a,
                                    double x0, double x1);

// Growing-window study of the strong a-regularity integral.  For finite data
// the windows are capped at the data extent (the input is read as a
// truncation of an unbounded sequence); for a == 0 the exact tail beyond the
// extent is added, since the defect is then bounded.
RegularityReport regularity_integral(const DiscreteSequence& seq, double a,
                                     const WindowSchedule& schedule = {});

enum class DensityMethod { FamilyClosedForm, SelfRegularity, Inconclusive };

struct DensityBracket {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  bool exact = false;
  DensityMethod method = DensityMethod::Inconclusive;
  double a_hat = 0.0;  // slope estimate used to seed candidates
  int dropped_points = 0;
  std::vector<RegularityReport> reports;
};

// Density bracket via (i) the registered-family closed form (unbounded
// families), (ii) self-regularity of the sequence itself, or (iii) an honest
// Inconclusive.  No search over sub/supersequences is performed.
DensityBracket estimate_density_bracket(const DiscreteSequence& seq,
                                        const std::vector<double>& a_candidates = {},
                                        const WindowSchedule& schedule = {});

struct KernelThreshold {
  double density = 0.0;
  double threshold = 0.0;  // 2 pi D
  std::string interior_rule;
  std::string exterior_rule;
};

// Translates an exact density into the Toeplitz-kernel triviality threshold
// 2 pi D, with machine-readable statements for each side (strict inequalities
// only; the threshold itself is undecided).
KernelThreshold density_to_kernel_threshold(const DensityBracket& bracket);

}  // namespace modelkit
