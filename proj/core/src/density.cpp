#include "modelkit/density.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "modelkit/errors.hpp"

namespace modelkit {

namespace {

bool point_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

void sort_points(std::vector<Complex>& pts) {
  std::sort(pts.begin(), pts.end(), point_less);
}

}  // namespace

DiscreteSequence DiscreteSequence::from_real(std::vector<double> xs) {
  DiscreteSequence s;
  s.points.reserve(xs.size());
  for (double x : xs) s.points.emplace_back(x, 0.0);
  sort_points(s.points);
  return s;
}

DiscreteSequence DiscreteSequence::from_points(std::vector<Complex> ps) {
  DiscreteSequence s;
  for (Complex p : ps)
    if (p.imag() < 0.0)
      throw NonUpperHalfPoint("sequence points must satisfy Im >= 0");
  s.points = std::move(ps);
  sort_points(s.points);
  return s;
}

DiscreteSequence DiscreteSequence::from_family(const ArithFamily& fam) {
  if (fam.alpha <= 0.0 || fam.beta < 0.0)
    throw std::invalid_argument("sequence family needs alpha > 0, beta >= 0");
  DiscreteSequence s;
  s.family = fam;
  if (fam.bounded()) {
    for (long n = *fam.nmin; n <= *fam.nmax; ++n)
      s.points.push_back(fam.zero_at(n));
    sort_points(s.points);
  }
  return s;
}

bool DiscreteSequence::all_real() const {
  for (Complex p : points)
    if (p.imag() != 0.0) return false;
  if (family && !family->bounded() && family->beta != 0.0) return false;
  return true;
}

double DiscreteSequence::extent() const {
  double e = 0.0;
  for (Complex p : points) e = std::max(e, std::abs(p.real()));
  return e;
}

namespace {

// Materialize an unbounded real family out to |x| <= limit.
std::vector<Complex> materialized_points(const DiscreteSequence& seq,
                                         double limit) {
  if (!seq.unbounded()) return seq.points;
  const ArithFamily& fam = *seq.family;
  const long half = long(std::ceil(limit / fam.alpha)) + 2;
  std::vector<Complex> pts;
  const long lo = fam.nmin.value_or(-half);
  const long hi = fam.nmax.value_or(half);
  pts.reserve(std::size_t(hi - lo + 1));
  for (long n = lo; n <= hi; ++n) pts.push_back(fam.zero_at(n));
  sort_points(pts);
  return pts;
}

long count_in_closed(const std::vector<Complex>& pts, double lo, double hi) {
  auto first = std::lower_bound(pts.begin(), pts.end(), lo,
                                [](Complex p, double v) { return p.real() < v; });
  auto last = std::upper_bound(pts.begin(), pts.end(), hi,
                               [](double v, Complex p) { return v < p.real(); });
  return long(last - first);
}

long counting_on(const std::vector<Complex>& pts, double x) {
  if (x >= 0.0) return count_in_closed(pts, 0.0, x);
  return -count_in_closed(pts, x, 0.0);
}

}  // namespace

long counting_function(const DiscreteSequence& seq, double x) {
  if (!seq.all_real())
    throw NonRealPoint("counting function requires a real sequence");
  const std::vector<Complex> pts =
      seq.unbounded() ? materialized_points(seq, std::abs(x)) : seq.points;
  return counting_on(pts, x);
}

StarTransformResult star_transform(const DiscreteSequence& seq) {
  StarTransformResult out;
  out.sequence.points.reserve(seq.points.size());
  for (Complex p : seq.points) {
    if (p.real() == 0.0) {
      ++out.dropped;
      continue;
    }
    out.sequence.points.emplace_back(std::norm(p) / p.real(), 0.0);
  }
  sort_points(out.sequence.points);
  return out;
}

namespace {

// int over [p,q] of (n - a x) / (1+x^2), sign handled by the caller.
double signed_piece(double n, double a, double p, double q) {
  return n * (std::atan(q) - std::atan(p)) -
         0.5 * a * (std::log1p(q * q) - std::log1p(p * p));
}

double interval_integral(const std::vector<Complex>& pts, double a, double x0,
                         double x1) {
  if (!(x1 > x0)) return 0.0;

  std::set<double> cuts{x0, x1};
  if (x0 < 0.0 && x1 > 0.0) cuts.insert(0.0);
  auto first = std::lower_bound(pts.begin(), pts.end(), x0,
                                [](Complex p, double v) { return p.real() < v; });
  for (auto it = first; it != pts.end() && it->real() <= x1; ++it)
    cuts.insert(it->real());

  double total = 0.0;
  auto it = cuts.begin();
  double prev = *it++;
  for (; it != cuts.end(); ++it) {
    const double lo = prev, hi = *it;
    prev = *it;
    if (!(hi > lo)) continue;
    const double n = double(counting_on(pts, 0.5 * (lo + hi)));
    // split at the sign change of n - a x if it falls inside
    double pieces[3] = {lo, hi, hi};
    int npieces = 1;
    if (a != 0.0) {
      const double root = n / a;
      if (root > lo && root < hi) {
        pieces[1] = root;
        pieces[2] = hi;
        npieces = 2;
      }
    }
    for (int k = 0; k < npieces; ++k) {
      const double p = pieces[k], q = pieces[k + 1];
      const double mid_defect = n - a * 0.5 * (p + q);
      const double s = mid_defect >= 0.0 ? 1.0 : -1.0;
      total += s * signed_piece(n, a, p, q);
    }
  }
  return total;
}

}  // namespace

double regularity_integral_interval(const DiscreteSequence& seq, double a,
                                    double x0, double x1) {
  if (!seq.all_real())
    throw NonRealPoint("regularity integral requires a real sequence");
  const std::vector<Complex> pts =
      seq.unbounded()
          ? materialized_points(seq, std::max(std::abs(x0), std::abs(x1)))
          : seq.points;
  return interval_integral(pts, a, x0, x1);
}

RegularityReport regularity_integral(const DiscreteSequence& seq, double a,
                                     const WindowSchedule& schedule) {
  if (!seq.all_real())
    throw NonRealPoint("regularity integral requires a real sequence");
  if (!(a >= 0.0))
    throw std::invalid_argument("regularity integral needs a >= 0");

  RegularityReport rep;
  rep.a = a;

  std::vector<double> windows = schedule.windows();
  const bool finite_data = !seq.unbounded();
  if (finite_data) {
    const double ext = std::max(seq.extent(), 1.0);
    std::vector<double> capped;
    for (double w : windows)
      if (w < ext) capped.push_back(w);
    capped.push_back(ext);
    if (capped != windows) rep.windows_capped = true;
    windows = std::move(capped);
  }

  const std::vector<Complex> pts =
      seq.unbounded() ? materialized_points(seq, windows.back()) : seq.points;

  double acc = 0.0, prev_w = 0.0;
  std::vector<double> increments;
  for (double W : windows) {
    const double inc = interval_integral(pts, a, prev_w, W) +
                       interval_integral(pts, a, -W, -prev_w);
    acc += inc;
    rep.window_integrals.emplace_back(W, acc);
    if (prev_w > 0.0) increments.push_back(inc);
    prev_w = W;
  }

  // Trend: the shell density rho(W) = dI/d(log W) is fitted to c W^-p; shells
  // are normalized by their log-width so a clipped final window does not skew
  // the slope.  The remaining tail beyond the last window is then rho_last/p.
  const double tol = schedule.tolerance;
  bool flat = !increments.empty();
  for (double d : increments)
    if (d > tol) flat = false;

  double predicted_tail = 0.0;
  if (!flat && increments.size() >= 3) {
    const std::size_t m = increments.size();
    std::vector<double> rho(m), wmid(m);
    for (std::size_t k = 0; k < m; ++k) {
      const double lw = std::log(windows[k + 1] / windows[k]);
      rho[k] = increments[k] / lw;
      wmid[k] = std::sqrt(windows[k] * windows[k + 1]);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t k = m / 2; k < m; ++k) {
      if (rho[k] <= 0.0) continue;
      const double lx = std::log(wmid[k]);
      const double ly = std::log(rho[k]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++cnt;
    }
    if (cnt >= 2 && sxx * cnt - sx * sx > 1e-12) {
      const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
      rep.fitted_decay = -slope;
      if (rep.fitted_decay > 0.1 && rho.back() > 0.0)
        predicted_tail = rho.back() / rep.fitted_decay;
    }
  }

  // Accept the predicted remainder when small in absolute terms or relative
  // to the accumulated integral (slow power tails stabilize relatively).
  rep.trend_converged =
      flat || (rep.fitted_decay > 0.1 &&
               predicted_tail < std::max(tol, 0.05 * acc));
  rep.converged = rep.trend_converged;

  if (finite_data) {
    if (a == 0.0) {
      // Beyond the largest point the defect is the constant terminal count,
      // so the plane integral has an exact closed tail.
      const double W = windows.back();
      const double n_pos = double(counting_on(pts, W + 1.0));
      const double n_neg = double(-counting_on(pts, -W - 1.0));
      const double tail =
          (std::abs(n_pos) + std::abs(n_neg)) * (M_PI / 2.0 - std::atan(W));
      rep.converged = true;
      rep.extrapolated_value = acc + tail;
      return rep;
    }
    rep.beyond_extent_divergent = true;
  }

  rep.extrapolated_value = rep.converged
                               ? acc + predicted_tail
                               : std::numeric_limits<double>::infinity();
  return rep;
}

namespace {

std::vector<double> candidate_densities(double a_hat,
                                        const std::vector<double>& user) {
  std::vector<double> cand(user);
  cand.push_back(0.0);
  // snap to small rationals near the slope estimate
  std::vector<std::pair<double, double>> snapped;  // (distance, value)
  for (int q = 1; q <= 12; ++q) {
    const double r = std::round(a_hat * q) / q;
    if (r <= 0.0) continue;
    const double d = std::abs(r - a_hat);
    if (d < 0.01 * std::max(1.0, a_hat)) snapped.emplace_back(d, r);
  }
  std::sort(snapped.begin(), snapped.end());
  for (auto& [d, r] : snapped) cand.push_back(r);
  if (a_hat > 0.0) cand.push_back(a_hat);
  return cand;
}

}  // namespace

DensityBracket estimate_density_bracket(const DiscreteSequence& seq,
                                        const std::vector<double>& a_candidates,
                                        const WindowSchedule& schedule) {
  DensityBracket out;

  DiscreteSequence real_seq = seq;
  if (!seq.all_real()) {
    if (seq.unbounded()) {
      real_seq.points.clear();  // closed-form path below
    } else {
      auto st = star_transform(seq);
      out.dropped_points = st.dropped;
      real_seq = std::move(st.sequence);
    }
  }

  // Registered unbounded families have an exact closed form: the star
  // transform of alpha n + i beta has counting slope 1/alpha, and the
  // sequence is strongly (1/alpha)-regular.
  if (seq.unbounded()) {
    const double d = 1.0 / seq.family->alpha;
    out.lower = out.upper = d;
    out.exact = true;
    out.method = DensityMethod::FamilyClosedForm;
    out.a_hat = d;
    return out;
  }

  const double ext = real_seq.extent();
  if (ext > 0.0) out.a_hat = double(real_seq.points.size()) / (2.0 * ext);

  // Slope differences below ~1/sqrt(extent) are washed out by the defects a
  // finite truncation already carries, so such candidates are one density.
  const double resolution =
      ext > 0.0 ? std::max(1e-3, 2.0 / std::sqrt(ext)) : 1e-3;
  std::vector<double> cands = candidate_densities(out.a_hat, a_candidates);

  double found = -1.0;
  for (double a : cands) {
    if (a < 0.0) continue;
    if (found >= 0.0 && std::abs(a - found) <= resolution)
      continue;  // indistinguishable at this data extent
    RegularityReport rep = regularity_integral(real_seq, a, schedule);
    out.reports.push_back(rep);
    if (rep.trend_converged) {
      if (found >= 0.0)
        throw InternalInconsistency(
            "two separated densities both test strongly regular");
      found = a;
    }
  }

  if (found >= 0.0) {
    out.lower = out.upper = found;
    out.exact = true;
    out.method = DensityMethod::SelfRegularity;
  }
  return out;
}

KernelThreshold density_to_kernel_threshold(const DensityBracket& bracket) {
  if (!bracket.exact)
    throw InexactBracket("kernel threshold requires an exact density bracket");
  KernelThreshold t;
  t.density = bracket.lower;
  t.threshold = 2.0 * M_PI * bracket.lower;
  t.interior_rule =
      "ker T[S^a conj(B)] != {0} for a < 2*pi*D and = {0} for a > 2*pi*D; "
      "a = 2*pi*D undecided";
  t.exterior_rule =
      "ker T[conj(S^a) B] = {0} for a < 2*pi*D and != {0} for a > 2*pi*D; "
      "a = 2*pi*D undecided";
  return t;
}

}  // namespace modelkit
