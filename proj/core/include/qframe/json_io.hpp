#pragma once

// JSON (de)serialization for every domain type the command line exchanges.
//
// Parsers collect all structural defects -- one JSON pointer per defect --
// before throwing a single ValidationError, then run the value's own
// validate(), so a value returned from a parser always satisfies its module
// invariants.  Serialization is canonical: object keys are sorted, complex
// numbers appear as [re, im] pairs, and probabilities carrying an exact
// rational are written as decimal or fraction strings so that a round trip
// preserves them bit for bit.

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "qframe/classifier.hpp"
#include "qframe/contextuality.hpp"
#include "qframe/experiments.hpp"
#include "qframe/quantum.hpp"

namespace qframe::io {

using json = nlohmann::json;

// File plumbing.  Read failures and JSON syntax errors surface as
// ValidationError with an empty pointer.
std::string read_file(const std::string& path);
json load_json_file(const std::string& path);
std::string sha256_hex(const std::string& bytes);

// Parsers.
classifier::Classification parse_classification(const json& j);
classifier::Infomorphism parse_infomorphism(const json& j);
classifier::ClassifierDiagram parse_diagram(const json& j);
classifier::CccdCandidate parse_cccd(const json& j);

quantum::SystemLayout parse_layout(const json& j);
quantum::PureState parse_pure_state(const json& j);
quantum::DensityMatrix parse_density(const json& j);
quantum::Observable parse_observable(const json& j);
quantum::Qrf parse_qrf(const json& j);

contextuality::MeasurementScenario parse_scenario(const json& j);
contextuality::EmpiricalModel parse_model(const json& j);

experiments::BellSetup parse_bell_setup(const json& j);
std::vector<experiments::AgentComponent> parse_agent(const json& j);
experiments::QfpInstance parse_qfp_instance(const json& j);
experiments::ThermoSetup parse_thermo_setup(const json& j);

// Serializers (inverses of the parsers on valid values).
json to_json(const classifier::Classification& c);
json to_json(const classifier::Infomorphism& f);
json to_json(const classifier::ClassifierDiagram& d);
json to_json(const classifier::CccdCandidate& c);

json to_json(const quantum::SystemLayout& l);
json to_json(const quantum::PureState& s);
json to_json(const quantum::DensityMatrix& rho);
json to_json(const quantum::Observable& o);
json to_json(const quantum::Qrf& q);

json to_json(const contextuality::MeasurementScenario& s);
json to_json(const contextuality::EmpiricalModel& m);

json to_json(const experiments::BellSetup& b);
json agent_to_json(const std::vector<experiments::AgentComponent>& agent);
json to_json(const experiments::QfpInstance& inst);
json to_json(const experiments::ThermoSetup& t);

// Raw complex matrix as rows of [re, im] pairs.
json matrix_to_json(const quantum::Matrix& m);

}  // namespace qframe::io
