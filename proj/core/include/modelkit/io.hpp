#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "modelkit/decider.hpp"
#include "modelkit/hilbert.hpp"

namespace modelkit::io {

using json = nlohmann::ordered_json;

// Strict object validation: unknown keys are rejected, required keys must be
// present.  `where` names the object in error messages.
void require_keys(const json& j, const std::string& where,
                  const std::vector<std::string>& allowed,
                  const std::vector<std::string>& required);

Complex parse_complex(const json& j, const std::string& where);
json to_json(Complex z);

InnerFunctionSpec parse_inner_spec(const json& j, const std::string& where);
json to_json(const InnerFunctionSpec& spec);

DiscreteSequence parse_sequence(const json& j, const std::string& where);
PiFunction parse_pi_function(const json& j, const std::string& where);
ToeplitzSymbol parse_symbol(const json& j, const std::string& where);
ProbeConfig parse_probe_config(const json& j, const std::string& where);

json to_json(const RegularityReport& r);
json to_json(const DensityBracket& b);
json to_json(const KernelThreshold& t);
json to_json(const ProbeReport& r);
json to_json(const KernelElement& k);
json to_json(const CarlesonReport& r);
json to_json(const DerivativeCheck& c);
json to_json(const MClassification& m);
json to_json(const DecisionCertificate& c);
json to_json(const CrossValidation& cv);
json to_json(const HilbertResult& h);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace modelkit::io
