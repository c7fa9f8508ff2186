#include "modelkit/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "modelkit/quadrature.hpp"

namespace modelkit {

double PiFunction::tail_pi_mass(double W) const {
  if (tail_coeff == 0.0) return 0.0;
  if (tail_exponent >= 1.0) return std::numeric_limits<double>::infinity();
  const double Weff = std::max(W, std::max(tail_from, 1.0));
  // int_{|t|>W} coeff (1+|t|)^q / (1+t^2) dt <= 2^(1+q) coeff W^(q-1) / (1-q)
  const double q = tail_exponent;
  return std::pow(2.0, 1.0 + std::max(q, 0.0)) * tail_coeff *
         std::pow(Weff, q - 1.0) / (1.0 - q);
}

PiFunction named_pi_function(const std::string& name) {
  PiFunction h;
  h.name = name;
  if (name == "zero") {
    h.eval = [](double) { return 0.0; };
    h.tail_coeff = 0.0;
  } else if (name == "one") {
    h.eval = [](double) { return 1.0; };
    h.tail_coeff = 1.0;
    h.tail_exponent = 0.0;
  } else if (name == "poisson") {
    h.eval = [](double t) { return 1.0 / (1.0 + t * t); };
    h.tail_coeff = 1.0;
    h.tail_exponent = -2.0;
  } else if (name == "gauss") {
    h.eval = [](double t) { return std::exp(-t * t); };
    h.tail_coeff = 1.0;
    h.tail_exponent = -2.0;
    h.tail_from = 2.0;
  } else {
    throw SchemaError("unknown named function: " + name);
  }
  return h;
}

PiFunction pi_function_from_callable(std::function<double(double)> f,
                                     double tail_coeff, double tail_exponent,
                                     double tail_from, std::string name) {
  PiFunction h;
  h.name = std::move(name);
  h.eval = std::move(f);
  h.tail_coeff = tail_coeff;
  h.tail_exponent = tail_exponent;
  h.tail_from = tail_from;
  return h;
}

PiFunction pi_function_from_table(
    const std::vector<std::pair<double, double>>& samples,
    double decay_exponent) {
  if (samples.size() < 2) throw SchemaError("table needs at least two samples");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].first > samples[i - 1].first))
      throw SchemaError("table abscissae must be strictly increasing");

  const double t_lo = samples.front().first, v_lo = samples.front().second;
  const double t_hi = samples.back().first, v_hi = samples.back().second;
  const double q = decay_exponent;

  PiFunction h;
  h.name = "table";
  h.eval = [samples, t_lo, v_lo, t_hi, v_hi, q](double t) {
    if (t <= t_lo)
      return v_lo * std::pow(std::abs(t) / std::max(std::abs(t_lo), 1e-12), q);
    if (t >= t_hi)
      return v_hi * std::pow(std::abs(t) / std::max(std::abs(t_hi), 1e-12), q);
    auto it = std::lower_bound(
        samples.begin(), samples.end(), t,
        [](const std::pair<double, double>& s, double x) { return s.first < x; });
    if (it == samples.begin()) return it->second;
    auto prev = std::prev(it);
    const double u = (t - prev->first) / (it->first - prev->first);
    return (1.0 - u) * prev->second + u * it->second;
  };
  const double edge = std::max({std::abs(t_lo), std::abs(t_hi), 1.0});
  h.tail_from = edge;
  h.tail_exponent = q;
  h.tail_coeff =
      std::max(std::abs(v_lo), std::abs(v_hi)) * std::pow(edge, -q) *
      (q >= 0.0 ? 1.0 : std::pow(2.0, -q));
  return h;
}

PiFunction pi_function_from_csv(const std::string& path,
                                double decay_exponent) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open CSV table: " + path);
  std::vector<std::pair<double, double>> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw SchemaError("CSV rows must be 't,value': " + line);
    try {
      samples.emplace_back(std::stod(line.substr(0, comma)),
                           std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      if (samples.empty()) continue;  // header line
      throw SchemaError("bad CSV row: " + line);
    }
  }
  return pi_function_from_table(samples, decay_exponent);
}

IntegrabilityWitness certify_in_l1_pi(const PiFunction& h,
                                      const WindowSchedule& schedule) {
  IntegrabilityWitness w;
  auto pi_density = [&](double t) { return std::abs(h(t)) / (1.0 + t * t); };
  double acc = 0.0;
  double prev_w = 0.0;
  std::vector<double> shells;
  std::vector<double> begins;
  for (double W : schedule.windows()) {
    auto left = quad::angle_integral(pi_density, -W, -prev_w, 48);
    auto right = quad::angle_integral(pi_density, prev_w, W, 48);
    acc += left.value + right.value;
    w.partial.emplace_back(W, acc);
    shells.push_back(left.value + right.value);
    begins.push_back(prev_w);
    prev_w = W;
  }
  w.tail_majorant = h.tail_pi_mass(prev_w);

  // The declared tail model must dominate the sampled shell masses; checking
  // the last few shells catches models that understate the actual decay.
  bool consistent = std::isfinite(w.tail_majorant);
  for (std::size_t k = shells.size() >= 3 ? shells.size() - 3 : 0;
       k < shells.size() && consistent; ++k) {
    if (begins[k] < h.tail_from) continue;
    if (shells[k] > 1.5 * h.tail_pi_mass(begins[k]) + 1e-12) consistent = false;
  }
  w.certified = consistent;
  return w;
}

namespace {

// Panel layout from `from` to `to` (from < to, walking away from the
// excision at `from`): widths start at eps, and stay below
// max(1/2, |t|/4) so that unit-scale structure anywhere on the line is
// resolved while the far region grows geometrically.
std::vector<double> pv_breakpoints(double from, double to, double eps) {
  std::vector<double> bp{from};
  double t = from;
  double w = eps;
  while (t < to) {
    const double cap = std::max(0.5, std::abs(t) / 4.0);
    w = std::min(2.0 * w, cap);
    t = std::min(t + w, to);
    bp.push_back(t);
  }
  return bp;
}

double excised_integral(const PiFunction& h, double x, double eps, double W,
                        double& quad_err) {
  auto f = [&](double t) {
    return (1.0 / (x - t) + t / (1.0 + t * t)) * h(t);
  };
  std::vector<double> right = pv_breakpoints(x + eps, W, eps);
  std::vector<double> left_m = pv_breakpoints(-(x - eps), W, eps);
  // reflect the left layout so it is graded toward x - eps
  std::vector<double> left;
  left.reserve(left_m.size());
  for (auto it = left_m.rbegin(); it != left_m.rend(); ++it) left.push_back(-*it);

  auto r = quad::over_panels(f, right);
  auto l = quad::over_panels(f, left);
  quad_err += (r.error + l.error) / M_PI;
  return (l.value + r.value) / M_PI;
}

}  // namespace

HilbertResult hilbert_transform(const PiFunction& h, double x,
                                const PVSchedule& schedule) {
  if (schedule.epsilons.empty())
    throw std::invalid_argument("PV schedule needs at least one epsilon");
  for (std::size_t i = 0; i < schedule.epsilons.size(); ++i) {
    if (!(schedule.epsilons[i] > 0.0))
      throw std::invalid_argument("PV epsilons must be positive");
    if (i > 0 && !(schedule.epsilons[i] < schedule.epsilons[i - 1]))
      throw std::invalid_argument("PV epsilons must be strictly decreasing");
  }

  const double eps_min = schedule.epsilons.back();
  for (double probe : {0.0, 1e-6 * eps_min, 0.25 * eps_min, eps_min}) {
    for (double side : {x - probe, x + probe}) {
      const double v = h(side);
      if (!std::isfinite(v) || std::abs(v) > 1e8)
        throw SingularitySwamp(
            "integrand is unbounded near the evaluation point");
    }
  }

  auto witness = certify_in_l1_pi(h);
  if (!witness.certified)
    throw NotIntegrable("function is not certified in L^1(Pi): " + h.name);

  double W = schedule.window;
  if (W <= 2.0 * std::abs(x) + 2.0) W = 2.0 * std::abs(x) + 2.0;

  double quad_err = 0.0;
  const std::size_t m = schedule.epsilons.size();
  std::vector<double> I(m);
  for (std::size_t k = 0; k < m; ++k)
    I[k] = excised_integral(h, x, schedule.epsilons[k], W, quad_err);

  // Neville extrapolation to eps = 0 on the (eps_k, I_k) nodes.
  std::vector<std::vector<double>> T(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) T[i][0] = I[i];
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t i = j; i < m; ++i) {
      const double e_lo = schedule.epsilons[i - j];
      const double e_hi = schedule.epsilons[i];
      T[i][j] = (e_lo * T[i][j - 1] - e_hi * T[i - 1][j - 1]) / (e_lo - e_hi);
    }

  double spread = 0.0;
  if (m >= 2)
    spread = std::abs(T[m - 1][m - 1] - T[m - 1][m - 2]) +
             std::abs(T[m - 1][m - 1] - T[m - 2][m - 2]);

  // |int_{|t|>W} kernel * h| <= sup_{|t|>W} |kernel (1+t^2)| * int |h| dPi,
  // and kernel*(1+t^2) = (1+tx)/(x-t), so the sup is (1/W+|x|)/(1-|x|/W).
  const double cxw = (1.0 / W + std::abs(x)) / (1.0 - std::abs(x) / W);
  const double tail = cxw * h.tail_pi_mass(W) / M_PI;

  HilbertResult res;
  res.value = T[m - 1][m - 1];
  res.richardson_error = spread + quad_err + tail;
  return res;
}

OuterSamples outer_from_modulus(const PiFunction& h,
                                const std::vector<double>& grid,
                                const PVSchedule& schedule) {
  OuterSamples out;
  out.values.reserve(grid.size());
  out.error_bounds.reserve(grid.size());
  for (double x : grid) {
    const HilbertResult ht = hilbert_transform(h, x, schedule);
    const double mod = std::exp(h(x));
    out.values.push_back(std::polar(mod, ht.value));
    out.error_bounds.push_back(mod * std::expm1(ht.richardson_error));
  }
  return out;
}

std::vector<std::pair<double, double>> weak_l1_tail(
    const PiFunction& h, const std::vector<double>& A_grid,
    const PVSchedule& schedule, int eval_points) {
  if (eval_points < 3) throw std::invalid_argument("eval_points too small");
  // Poisson-uniform grid: t = tan(theta) turns dPi into d(theta).
  const double margin = M_PI / (2.0 * (eval_points + 1));
  const double dtheta = (M_PI - 2.0 * margin) / (eval_points - 1);
  std::vector<double> transformed(static_cast<std::size_t>(eval_points));
  for (int q = 0; q < eval_points; ++q) {
    const double theta = -M_PI / 2.0 + margin + q * dtheta;
    transformed[std::size_t(q)] =
        hilbert_transform(h, std::tan(theta), schedule).value;
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(A_grid.size());
  for (double A : A_grid) {
    if (!(A > 0.0)) throw std::invalid_argument("A grid must be positive");
    double measure = 0.0;
    for (double v : transformed)
      if (std::abs(v) > A) measure += dtheta;
    out.emplace_back(A, A * measure);
  }
  return out;
}

}  // namespace modelkit
