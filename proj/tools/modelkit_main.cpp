// Batch front end: one command per process, JSON in, a single JSON result
// document out (plus optional CSV side files).  Exit codes: 0 definite,
// 2 inconclusive / undecided / out-of-scope, 1 error.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>

#include "modelkit/io.hpp"

namespace mk = modelkit;
using mk::io::json;

namespace {

struct CommonArgs {
  std::string input;
  std::string output;
  std::string schedule;
  std::string csv;
  int seed = 12345;
  double tolerance = -1.0;  // command-specific override when >= 0
};

struct Schedules {
  mk::TruncationSchedule truncation;
  mk::PVSchedule pv;
  mk::WindowSchedule windows;
  mk::ProbeConfig probe;
  mk::hardy::LineGrid grid;
  mk::DecisionConfig decision;
  json echo = json::object();
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mk::Error("FileError", "cannot open input: " + path);
  json j;
  in >> j;
  return j;
}

Schedules load_schedules(const std::string& path) {
  Schedules s;
  if (path.empty()) return s;
  const json j = read_json_file(path);
  mk::io::require_keys(j, "schedule",
                       {"truncation", "pv", "windows", "probe", "grid"}, {});
  if (j.contains("truncation")) {
    const json& t = j.at("truncation");
    mk::io::require_keys(t, "schedule.truncation", {"max_terms", "tolerance"}, {});
    s.truncation.max_terms = t.value("max_terms", s.truncation.max_terms);
    s.truncation.tolerance = t.value("tolerance", s.truncation.tolerance);
  }
  if (j.contains("pv")) {
    const json& t = j.at("pv");
    mk::io::require_keys(t, "schedule.pv", {"epsilons", "window"}, {});
    if (t.contains("epsilons"))
      s.pv.epsilons = t.at("epsilons").get<std::vector<double>>();
    s.pv.window = t.value("window", s.pv.window);
  }
  if (j.contains("windows")) {
    const json& t = j.at("windows");
    mk::io::require_keys(t, "schedule.windows",
                         {"w0", "growth", "count", "tolerance"}, {});
    s.windows.w0 = t.value("w0", s.windows.w0);
    s.windows.growth = t.value("growth", s.windows.growth);
    s.windows.count = t.value("count", s.windows.count);
    s.windows.tolerance = t.value("tolerance", s.windows.tolerance);
  }
  if (j.contains("probe"))
    s.probe = mk::io::parse_probe_config(j.at("probe"), "schedule.probe");
  if (j.contains("grid")) {
    const json& t = j.at("grid");
    mk::io::require_keys(t, "schedule.grid", {"half_width", "step"}, {});
    s.grid.half_width = t.value("half_width", s.grid.half_width);
    s.grid.target_step = t.value("step", s.grid.target_step);
  }
  s.echo = j;
  return s;
}

json schedules_echo(const Schedules& s, const CommonArgs& args) {
  json cfg;
  cfg["truncation"] = {{"max_terms", s.truncation.max_terms},
                       {"tolerance", s.truncation.tolerance}};
  cfg["pv"] = {{"epsilons", s.pv.epsilons}, {"window", s.pv.window}};
  cfg["windows"] = {{"w0", s.windows.w0},
                    {"growth", s.windows.growth},
                    {"count", s.windows.count},
                    {"tolerance", s.windows.tolerance}};
  cfg["probe"] = {{"basis_sizes", s.probe.basis_sizes},
                  {"sigma_floor", s.probe.sigma_floor},
                  {"decrease_factor", s.probe.decrease_factor},
                  {"drift_bound", s.probe.drift_bound},
                  {"eta", s.probe.eta},
                  {"spacing", s.probe.spacing},
                  {"family_max_terms", s.probe.family_schedule.max_terms}};
  cfg["grid"] = {{"half_width", s.grid.half_width},
                 {"step", s.grid.target_step}};
  cfg["seed"] = args.seed;
  if (args.tolerance >= 0.0) cfg["tolerance_override"] = args.tolerance;
  return cfg;
}

int emit(const CommonArgs& args, const std::string& command, const json& config,
         const json& result, const json& criteria, int exit_code) {
  json doc;
  doc["command"] = command;
  doc["config"] = config;
  doc["result"] = result;
  doc["criteria"] = criteria;
  doc["exit_code"] = exit_code;
  json meta;
  meta["timestamp"] =
      double(std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::system_clock::now().time_since_epoch())
                 .count()) /
      1000.0;
  doc["metadata"] = meta;

  const std::string text = doc.dump(2) + "\n";
  if (args.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(args.output);
    if (!out) throw mk::Error("FileError", "cannot open output: " + args.output);
    out << text;
  }
  return exit_code;
}

int run_density(const CommonArgs& args, const Schedules& sched) {
  const json in = read_json_file(args.input);
  mk::io::require_keys(in, "input", {"sequence", "a_values"}, {"sequence"});
  const mk::DiscreteSequence seq =
      mk::io::parse_sequence(in.at("sequence"), "input.sequence");
  std::vector<double> a_values;
  if (in.contains("a_values"))
    a_values = in.at("a_values").get<std::vector<double>>();

  mk::WindowSchedule ws = sched.windows;
  if (args.tolerance >= 0.0) ws.tolerance = args.tolerance;
  const mk::DensityBracket bracket =
      mk::estimate_density_bracket(seq, a_values, ws);

  json result;
  result["bracket"] = mk::io::to_json(bracket);
  json reports = json::array();
  for (const auto& r : bracket.reports) reports.push_back(mk::io::to_json(r));
  result["reports"] = reports;
  json criteria = json::array();
  if (bracket.exact) {
    const auto thr = mk::density_to_kernel_threshold(bracket);
    result["kernel_threshold"] = mk::io::to_json(thr);
    criteria.push_back(thr.interior_rule);
    criteria.push_back(thr.exterior_rule);
  }

  if (!args.csv.empty() && !bracket.reports.empty()) {
    std::vector<std::vector<double>> rows;
    for (const auto& [w, v] : bracket.reports.back().window_integrals)
      rows.push_back({w, v});
    mk::io::write_csv(args.csv, {"window", "integral"}, rows);
  }
  return emit(args, "density", schedules_echo(sched, args), result, criteria,
              bracket.exact ? 0 : 2);
}

int run_decide(const CommonArgs& args, const Schedules& sched) {
  const json in = read_json_file(args.input);
  mk::io::require_keys(in, "input", {"U", "V", "cross_validate"}, {"U", "V"});
  const auto U = mk::io::parse_inner_spec(in.at("U"), "input.U");
  const auto V = mk::io::parse_inner_spec(in.at("V"), "input.V");

  mk::DecisionConfig cfg = sched.decision;
  cfg.schedule = sched.truncation;
  cfg.density_windows = sched.windows;
  if (args.tolerance >= 0.0) cfg.equality_tolerance = args.tolerance;

  const mk::MifPair pair = mk::classify_pair(U, V);
  const mk::DecisionCertificate cert = mk::decide_multipliers(pair, cfg);

  json result = mk::io::to_json(cert);
  json criteria = json::array();
  criteria.push_back(cert.narrative);
  for (const auto& n : cert.hypothesis_notes) criteria.push_back(n);

  if (in.value("cross_validate", false)) {
    const mk::CrossValidation cv = mk::cross_validate(cert, sched.probe);
    result["cross_validation"] = mk::io::to_json(cv);
  }

  const bool definite = cert.verdict == mk::Verdict::Nontrivial ||
                        cert.verdict == mk::Verdict::Trivial;
  return emit(args, "decide", schedules_echo(sched, args), result, criteria,
              definite ? 0 : 2);
}

int run_probe(const CommonArgs& args, const Schedules& sched) {
  const json in = read_json_file(args.input);
  mk::io::require_keys(in, "input", {"symbol", "config"}, {"symbol"});
  const mk::ToeplitzSymbol sym =
      mk::io::parse_symbol(in.at("symbol"), "input.symbol");
  mk::ProbeConfig cfg = sched.probe;
  if (in.contains("config"))
    cfg = mk::io::parse_probe_config(in.at("config"), "input.config");
  if (args.tolerance >= 0.0) cfg.sigma_floor = args.tolerance;

  const mk::ProbeReport rep = mk::kernel_triviality_probe(sym, cfg);
  json result = mk::io::to_json(rep);
  result["linear_coefficient"] = mk::symbol_linear_coefficient(sym);
  json criteria = json::array({rep.disclaimer});

  // For symbols built from one registered unbounded family against pure
  // exponentials, the density threshold predicts the kernel side; surface
  // that prediction and flag any disagreement with the numerical verdict.
  {
    int family_count = 0, family_exponent = 0;
    bool others_pure = true;
    for (const auto& f : sym.factors) {
      if (f.spec.has_unbounded_blaschke()) {
        ++family_count;
        family_exponent = f.exponent;
      } else if (!f.spec.pure_singular()) {
        others_pure = false;
      }
    }
    if (family_count == 1 && others_pure) {
      mk::ArithFamily fam;
      for (const auto& f : sym.factors)
        if (f.spec.has_unbounded_blaschke()) fam = *f.spec.blaschke.family();
      const auto bracket = mk::estimate_density_bracket(
          mk::DiscreteSequence::from_family(fam));
      if (bracket.exact) {
        const auto thr = mk::density_to_kernel_threshold(bracket);
        const double c = mk::symbol_linear_coefficient(sym);
        std::string expected = "undecided (at the threshold)";
        if (family_exponent < 0) {
          // S^c conj(B): nontrivial kernel exactly below 2 pi D
          if (c < thr.threshold - 1e-12) expected = "nontrivial";
          else if (c > thr.threshold + 1e-12) expected = "trivial";
        } else {
          // conj(S^{-c}) B: nontrivial kernel exactly above 2 pi D
          if (-c > thr.threshold + 1e-12) expected = "nontrivial";
          else if (-c < thr.threshold - 1e-12) expected = "trivial";
        }
        result["density_prediction"] =
            json{{"threshold", thr.threshold}, {"expected", expected}};
        const std::string v = mk::to_string(rep.verdict);
        const bool disagree =
            (expected == "nontrivial" && v == "LikelyTrivial") ||
            (expected == "trivial" && v == "LikelyNontrivial");
        if (disagree)
          criteria.push_back(
              "DISAGREEMENT: the density threshold predicts a " + expected +
              " kernel but the probe reports " + v +
              "; the probe ran on a truncated family and truncation can "
              "change the kernel");
        else
          criteria.push_back("density threshold prediction: " + expected);
      }
    }
  }

  if (!args.csv.empty()) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < rep.basis_sizes.size(); ++i)
      rows.push_back({double(rep.basis_sizes[i]), rep.sigma_min[i]});
    mk::io::write_csv(args.csv, {"basis_size", "sigma_min"}, rows);
  }
  return emit(args, "probe", schedules_echo(sched, args), result, criteria,
              rep.verdict != mk::ProbeVerdict::Inconclusive ? 0 : 2);
}

int run_hilbert(const CommonArgs& args, const Schedules& sched) {
  const json in = read_json_file(args.input);
  mk::io::require_keys(in, "input", {"h", "points", "weak_l1_grid"}, {"h", "points"});
  const mk::PiFunction h = mk::io::parse_pi_function(in.at("h"), "input.h");
  const auto points = in.at("points").get<std::vector<double>>();

  json values = json::array();
  for (double x : points) {
    const mk::HilbertResult r = mk::hilbert_transform(h, x, sched.pv);
    values.push_back(mk::io::to_json(r));
  }
  json result;
  result["points"] = points;
  result["values"] = values;
  if (in.contains("weak_l1_grid")) {
    const auto As = in.at("weak_l1_grid").get<std::vector<double>>();
    json wl = json::array();
    for (const auto& [A, prod] : mk::weak_l1_tail(h, As, sched.pv))
      wl.push_back(json::array({A, prod}));
    result["weak_l1"] = wl;
  }
  return emit(args, "hilbert", schedules_echo(sched, args), result,
              json::array(), 0);
}

int run_verify_multiplier(const CommonArgs& args, const Schedules& sched) {
  const json in = read_json_file(args.input);
  mk::io::require_keys(
      in, "input",
      {"U", "V", "phi", "test_points", "count", "carleson_halfwidth"},
      {"U", "V", "phi"});
  const auto U = mk::io::parse_inner_spec(in.at("U"), "input.U");
  const auto V = mk::io::parse_inner_spec(in.at("V"), "input.V");

  const json& pj = in.at("phi");
  mk::io::require_keys(pj, "input.phi", {"kernel", "table"}, {});
  std::function<mk::Complex(double)> phi;
  if (pj.contains("kernel")) {
    const json& kj = pj.at("kernel");
    mk::io::require_keys(kj, "input.phi.kernel", {"space", "at"}, {"space", "at"});
    const std::string space = kj.at("space").get<std::string>();
    const mk::Complex at = mk::io::parse_complex(kj.at("at"), "input.phi.kernel.at");
    const mk::InnerFunctionSpec base =
        space == "U" ? U
        : space == "V"
            ? V
            : mk::io::parse_inner_spec(json::parse(space), "input.phi.kernel.space");
    phi = [base, at](double x) {
      return mk::reproducing_kernel(base, at, mk::Complex(x, 0.0));
    };
  } else if (pj.contains("table")) {
    std::vector<std::pair<double, double>> re, im;
    for (const auto& row : pj.at("table")) {
      if (!row.is_array() || row.size() != 3)
        throw mk::SchemaError("phi.table rows must be [t, re, im]");
      re.emplace_back(row[0].get<double>(), row[1].get<double>());
      im.emplace_back(row[0].get<double>(), row[2].get<double>());
    }
    const auto fre = mk::pi_function_from_table(re, -1.0);
    const auto fim = mk::pi_function_from_table(im, -1.0);
    phi = [fre, fim](double x) { return mk::Complex(fre(x), fim(x)); };
  } else {
    throw mk::SchemaError("input.phi: provide 'kernel' or 'table'");
  }

  std::vector<mk::Complex> pts;
  if (in.contains("test_points")) {
    for (const auto& p : in.at("test_points"))
      pts.push_back(mk::io::parse_complex(p, "input.test_points[]"));
  } else {
    const int count = in.value("count", 10);
    std::mt19937_64 rng(std::uint64_t(args.seed));
    std::uniform_real_distribution<double> ux(-5.0, 5.0), uy(0.3, 3.0);
    for (int i = 0; i < count; ++i) pts.emplace_back(ux(rng), uy(rng));
  }

  mk::MultiplierResidualConfig mcfg;
  mcfg.grid = sched.grid;
  const std::vector<double> res = mk::multiplier_residual(U, V, phi, pts, mcfg);

  const double X = in.value("carleson_halfwidth", 50.0);
  const mk::CarlesonReport carleson = mk::carleson_window_sup(phi, X);

  json result;
  json jpts = json::array();
  for (mk::Complex p : pts) jpts.push_back(mk::io::to_json(p));
  result["test_points"] = jpts;
  result["residuals"] = res;
  result["min_residual"] = *std::min_element(res.begin(), res.end());
  result["max_residual"] = *std::max_element(res.begin(), res.end());
  result["carleson"] = mk::io::to_json(carleson);
  return emit(args, "verify-multiplier", schedules_echo(sched, args), result,
              json::array(), 0);
}

int run_lemma1(const CommonArgs& args, const Schedules& sched) {
  const json in = read_json_file(args.input);
  mk::io::require_keys(in, "input", {"theta", "b", "tolerance"}, {"theta", "b"});
  const auto theta = mk::io::parse_inner_spec(in.at("theta"), "input.theta");

  mk::BlaschkeInterpolationData b;
  mk::io::require_keys(in.at("b"), "input.b", {"zeros"}, {"zeros"});
  for (const auto& z : in.at("b").at("zeros")) {
    if (z.is_object() && z.contains("multiplicity")) {
      json zz = z;
      const int m = zz.at("multiplicity").get<int>();
      zz.erase("multiplicity");
      b.zeros.push_back(mk::io::parse_complex(zz, "input.b.zeros[]"));
      b.multiplicities.push_back(m);
    } else {
      b.zeros.push_back(mk::io::parse_complex(z, "input.b.zeros[]"));
      b.multiplicities.push_back(1);
    }
  }
  double tol = in.value("tolerance", 1e-8);
  if (args.tolerance >= 0.0) tol = args.tolerance;

  const mk::KernelElement k =
      mk::lemma1_construct(theta, b, tol, sched.probe);
  return emit(args, "lemma1", schedules_echo(sched, args), mk::io::to_json(k),
              json::array(), 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"model-space and Toeplitz-kernel numerics"};
  app.require_subcommand(1);

  CommonArgs args;
  const std::vector<std::string> names = {"density",           "decide",
                                          "probe",             "hilbert",
                                          "verify-multiplier", "lemma1"};
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--input", args.input)->required();
    sub->add_option("--output", args.output);
    sub->add_option("--schedule", args.schedule);
    sub->add_option("--csv", args.csv);
    sub->add_option("--seed", args.seed);
    sub->add_option("--tolerance", args.tolerance);
  }

  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    const Schedules sched = load_schedules(args.schedule);
    if (cmd == "density") return run_density(args, sched);
    if (cmd == "decide") return run_decide(args, sched);
    if (cmd == "probe") return run_probe(args, sched);
    if (cmd == "hilbert") return run_hilbert(args, sched);
    if (cmd == "verify-multiplier") return run_verify_multiplier(args, sched);
    if (cmd == "lemma1") return run_lemma1(args, sched);
    std::cerr << "unknown command\n";
    return 1;
  } catch (const mk::Error& e) {
    json err{{"error", {{"code", e.code()}, {"message", e.what()}}}};
    std::ostream* out = &std::cout;
    std::ofstream f;
    if (!args.output.empty()) {
      f.open(args.output);
      if (f) out = &f;
    }
    *out << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err{{"error", {{"code", "Error"}, {"message", e.what()}}}};
    std::ostream* out = &std::cout;
    std::ofstream f;
    if (!args.output.empty()) {
      f.open(args.output);
      if (f) out = &f;
    }
    *out << err.dump(2) << "\n";
    return 1;
  }
}
