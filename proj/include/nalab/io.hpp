#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "nalab/checks.hpp"
#include "nalab/decide.hpp"
#include "nalab/hilbert.hpp"
#include "nalab/scenario.hpp"
#include "nalab/semantics.hpp"
#include "nalab/sentence.hpp"

namespace nalab {

using Json = nlohmann::ordered_json;

/// File, syntax, schema or invariant problem in an input document.
/// Messages start with the path into the document, e.g. "$.events[2].code: ...".
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json model_to_json(const NModel& m);
NModel model_from_json(const Json& j, const std::string& path = "$");

Json proof_to_json(const Proof& p);
Proof proof_from_json(const Json& j, const std::string& path = "$");

Json sentence_to_json(Sentence s);
Sentence sentence_from_json(const Json& j, const std::string& path = "$");

Json scenario_to_json(const ArithScenario& sc);
/// Also runs validate_scenario.
ArithScenario scenario_from_json(const Json& j, const std::string& path = "$");

Json report_to_json(const TraceReport& r);
Json budget_to_json(const BudgetReport& b);
Json decision_to_json(const Decision& d, Formula a, std::size_t m, std::size_t n);

/// "-" reads stdin.
Json read_json_file(const std::string& path);
NModel load_model(const std::string& path);
Proof load_proof(const std::string& path);
ArithScenario load_scenario(const std::string& path);

}  // namespace nalab
