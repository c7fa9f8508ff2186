#pragma once

#include <vector>

namespace modelkit {

// Symmetric truncation policy for infinite Blaschke products and related
// series.  `stages()` yields the term counts at which partial results are
// compared; convergence is declared when the last two stages agree to
// `tolerance`.
struct TruncationSchedule {
  int max_terms = 20000;
  double tolerance = 1e-10;

  std::vector<int> stages() const {
    std::vector<int> s;
    for (int n = 16; n < max_terms; n *= 2) s.push_back(n);
    s.push_back(max_terms);
    return s;
  }
};

// Discretization of the principal-value limit: the excised integral is
// evaluated for each epsilon and extrapolated to zero.  `window` truncates
// the improper integral; the tail beyond it is majorized analytically.
struct PVSchedule {
  std::vector<double> epsilons = {0.1, 0.05, 0.025, 0.0125, 0.00625};
  double window = 1e4;
  int panel_points = 15;     // Gauss-Kronrod points per panel
  double coarse_panel = 4.0; // max panel width away from the singularity

  PVSchedule refined() const {
    PVSchedule r = *this;
    for (double& e : r.epsilons) e *= 0.5;
    r.epsilons.push_back(r.epsilons.back() * 0.5);
    r.window *= 4.0;
    return r;
  }
};

// Growing-window schedule for integrals over the line: W, W*growth, ...
struct WindowSchedule {
  double w0 = 16.0;
  double growth = 2.0;
  int count = 12;
  double tolerance = 1e-3;  // accepted predicted remainder beyond the windows

  std::vector<double> windows() const {
    std::vector<double> w;
    double v = w0;
    for (int i = 0; i < count; ++i, v *= growth) w.push_back(v);
    return w;
  }
};

}  // namespace modelkit
