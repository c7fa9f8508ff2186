#include "modelkit/io.hpp"

#include <cmath>
#include <fstream>

namespace modelkit::io {

void require_keys(const json& j, const std::string& where,
                  const std::vector<std::string>& allowed,
                  const std::vector<std::string>& required) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw SchemaError(where + ": unknown key '" + key + "'");
  }
  for (const auto& key : required)
    if (!j.contains(key))
      throw SchemaError(where + ": missing required key '" + key + "'");
}

Complex parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  require_keys(j, where, {"re", "im"}, {"re"});
  return Complex(j.at("re").get<double>(), j.value("im", 0.0));
}

json to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

namespace {

ArithFamily parse_family(const json& j, const std::string& where) {
  require_keys(j, where, {"family", "alpha", "beta", "nmin", "nmax"},
               {"family", "alpha", "beta"});
  if (j.at("family").get<std::string>() != "arith")
    throw SchemaError(where + ": only the 'arith' family is registered");
  ArithFamily fam;
  fam.alpha = j.at("alpha").get<double>();
  fam.beta = j.at("beta").get<double>();
  if (j.contains("nmin") && !j.at("nmin").is_null())
    fam.nmin = j.at("nmin").get<long>();
  if (j.contains("nmax") && !j.at("nmax").is_null())
    fam.nmax = j.at("nmax").get<long>();
  return fam;
}

json family_to_json(const ArithFamily& fam) {
  json j{{"family", "arith"}, {"alpha", fam.alpha}, {"beta", fam.beta}};
  j["nmin"] = fam.nmin ? json(*fam.nmin) : json(nullptr);
  j["nmax"] = fam.nmax ? json(*fam.nmax) : json(nullptr);
  return j;
}

double finite_or_null_to_double(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity()
                     : j.get<double>();
}

json double_to_finite_or_null(double v) {
  return std::isfinite(v) ? json(v) : json(nullptr);
}

}  // namespace

InnerFunctionSpec parse_inner_spec(const json& j, const std::string& where) {
  require_keys(j, where, {"mass", "constant", "zeros"}, {});
  InnerFunctionSpec spec;
  spec.mass = j.value("mass", 0.0);
  if (j.contains("constant"))
    spec.unimodular_constant = parse_complex(j.at("constant"), where + ".constant");
  if (j.contains("zeros")) {
    const json& z = j.at("zeros");
    if (z.is_array()) {
      std::vector<Complex> zeros;
      for (std::size_t i = 0; i < z.size(); ++i)
        zeros.push_back(parse_complex(z[i], where + ".zeros[]"));
      if (!zeros.empty()) spec.blaschke = BlaschkeData(std::move(zeros));
    } else {
      spec.blaschke = BlaschkeData(parse_family(z, where + ".zeros"));
    }
  }
  spec.validate();
  return spec;
}

json to_json(const InnerFunctionSpec& spec) {
  json j{{"mass", spec.mass}, {"constant", to_json(spec.unimodular_constant)}};
  if (spec.blaschke.unbounded()) {
    j["zeros"] = family_to_json(*spec.blaschke.family());
  } else if (!spec.blaschke.zeros().empty()) {
    json arr = json::array();
    for (Complex z : spec.blaschke.zeros()) arr.push_back(to_json(z));
    j["zeros"] = arr;
  }
  return j;
}

DiscreteSequence parse_sequence(const json& j, const std::string& where) {
  require_keys(j, where, {"points", "family"}, {});
  if (j.contains("points") == j.contains("family"))
    throw SchemaError(where + ": provide exactly one of 'points' or 'family'");
  if (j.contains("family"))
    return DiscreteSequence::from_family(parse_family(j.at("family"), where));
  std::vector<Complex> pts;
  for (const auto& p : j.at("points"))
    pts.push_back(parse_complex(p, where + ".points[]"));
  return DiscreteSequence::from_points(std::move(pts));
}

PiFunction parse_pi_function(const json& j, const std::string& where) {
  require_keys(j, where, {"name", "table", "table_csv", "decay_exponent"}, {});
  const int sources = int(j.contains("name")) + int(j.contains("table")) +
                      int(j.contains("table_csv"));
  if (sources != 1)
    throw SchemaError(where +
                      ": provide exactly one of 'name', 'table', 'table_csv'");
  if (j.contains("name")) return named_pi_function(j.at("name").get<std::string>());
  if (!j.contains("decay_exponent"))
    throw SchemaError(where + ": sampled tables need 'decay_exponent'");
  const double q = j.at("decay_exponent").get<double>();
  if (j.contains("table_csv"))
    return pi_function_from_csv(j.at("table_csv").get<std::string>(), q);
  std::vector<std::pair<double, double>> samples;
  for (const auto& row : j.at("table")) {
    if (!row.is_array() || row.size() != 2)
      throw SchemaError(where + ".table: rows must be [t, value]");
    samples.emplace_back(row[0].get<double>(), row[1].get<double>());
  }
  return pi_function_from_table(samples, q);
}

ToeplitzSymbol parse_symbol(const json& j, const std::string& where) {
  require_keys(j, where, {"factors"}, {"factors"});
  ToeplitzSymbol sym;
  for (const auto& f : j.at("factors")) {
    require_keys(f, where + ".factors[]", {"spec", "exponent"}, {"spec"});
    const int e = f.value("exponent", 1);
    if (e != 1 && e != -1)
      throw SchemaError(where + ": exponent must be +1 or -1");
    sym.factors.push_back(
        {parse_inner_spec(f.at("spec"), where + ".factors[].spec"), e});
  }
  return sym;
}

ProbeConfig parse_probe_config(const json& j, const std::string& where) {
  require_keys(j, where,
               {"basis_sizes", "sigma_floor", "decrease_factor", "drift_bound",
                "eta", "spacing", "gram_condition_limit", "family_max_terms"},
               {});
  ProbeConfig cfg;
  if (j.contains("basis_sizes"))
    cfg.basis_sizes = j.at("basis_sizes").get<std::vector<int>>();
  cfg.sigma_floor = j.value("sigma_floor", cfg.sigma_floor);
  cfg.decrease_factor = j.value("decrease_factor", cfg.decrease_factor);
  cfg.drift_bound = j.value("drift_bound", cfg.drift_bound);
  cfg.eta = j.value("eta", cfg.eta);
  cfg.spacing = j.value("spacing", cfg.spacing);
  cfg.gram_condition_limit =
      j.value("gram_condition_limit", cfg.gram_condition_limit);
  cfg.family_schedule.max_terms =
      j.value("family_max_terms", cfg.family_schedule.max_terms);
  return cfg;
}

json to_json(const RegularityReport& r) {
  json wi = json::array();
  for (const auto& [w, v] : r.window_integrals) wi.push_back(json::array({w, v}));
  return json{{"a", r.a},
              {"window_integrals", wi},
              {"converged", r.converged},
              {"extrapolated_value", double_to_finite_or_null(r.extrapolated_value)},
              {"fitted_decay", r.fitted_decay},
              {"windows_capped", r.windows_capped},
              {"beyond_extent_divergent", r.beyond_extent_divergent}};
}

json to_json(const DensityBracket& b) {
  const char* method =
      b.method == DensityMethod::FamilyClosedForm  ? "FamilyClosedForm"
      : b.method == DensityMethod::SelfRegularity ? "SelfRegularity"
                                                   : "Inconclusive";
  return json{{"lower", b.lower},
              {"upper", double_to_finite_or_null(b.upper)},
              {"exact", b.exact},
              {"method", method},
              {"a_hat", b.a_hat},
              {"dropped_points", b.dropped_points}};
}

json to_json(const KernelThreshold& t) {
  return json{{"density", t.density},
              {"threshold", t.threshold},
              {"interior_rule", t.interior_rule},
              {"exterior_rule", t.exterior_rule}};
}

json to_json(const ProbeReport& r) {
  return json{{"basis_sizes", r.basis_sizes},
              {"sigma_min", r.sigma_min},
              {"gram_condition", r.gram_condition},
              {"verdict", to_string(r.verdict)},
              {"sigma_floor", r.sigma_floor},
              {"decrease_factor", r.decrease_factor},
              {"drift_bound", r.drift_bound},
              {"disclaimer", r.disclaimer}};
}

json to_json(const KernelElement& k) {
  json bp = json::array(), co = json::array();
  for (Complex p : k.basis_points) bp.push_back(to_json(p));
  for (Complex c : k.coefficients) co.push_back(to_json(c));
  return json{{"basis_points", bp},
              {"coefficients", co},
              {"interpolation_residuals", k.interpolation_residuals},
              {"norm", k.norm},
              {"hardy_residual", k.hardy_residual}};
}

json to_json(const CarlesonReport& r) {
  return json{{"sup", r.sup}, {"argmax", r.argmax}, {"trend", r.trend}};
}

json to_json(const DerivativeCheck& c) {
  return json{{"pass", c.pass},
              {"observed_min", c.observed_min},
              {"observed_max", c.observed_max},
              {"tail_certified", c.tail_certified},
              {"grid_only_caveat", c.grid_only_caveat}};
}

json to_json(const MClassification& m) {
  return json{{"linear_coefficient", m.linear_coefficient},
              {"bounded_remainder", m.bounded_remainder},
              {"verdict", m.verdict == MVerdict::NotInTildeL1 ? "NotInTildeL1"
                                                              : "Unknown"}};
}

json to_json(const DecisionCertificate& c) {
  json j{{"verdict", to_string(c.verdict)},
         {"rule", to_string(c.rule)},
         {"shape", to_string(c.pair.shape)},
         {"mass_u", c.mass_u},
         {"mass_v", c.mass_v},
         {"m_classification", to_json(c.m_classification)},
         {"hypothesis_notes", c.hypothesis_notes},
         {"narrative", c.narrative}};
  j["density"] = c.density ? json(*c.density) : json(nullptr);
  j["threshold"] = c.threshold ? json(*c.threshold) : json(nullptr);
  if (c.derivative_check) j["derivative_check"] = to_json(*c.derivative_check);
  if (c.density_bracket) j["density_bracket"] = to_json(*c.density_bracket);
  j["inputs"] = json{{"U", to_json(c.pair.U)}, {"V", to_json(c.pair.V)}};
  return j;
}

json to_json(const CrossValidation& cv) {
  return json{{"probe", to_json(cv.probe)}, {"agreement", cv.agreement}};
}

json to_json(const HilbertResult& h) {
  return json{{"value", h.value}, {"richardson_error", h.richardson_error}};
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("FileError", "cannot open CSV output: " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  out.precision(17);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? "," : "\n");
  }
}

}  // namespace modelkit::io
