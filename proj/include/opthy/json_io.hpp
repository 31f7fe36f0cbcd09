#pragma once

#include "opthy/bell.hpp"
#include "opthy/causal/discovery.hpp"
#include "opthy/causal/faithfulness.hpp"
#include "opthy/hypergraph.hpp"
#include "opthy/ontology.hpp"
#include "opthy/quantum.hpp"
#include "opthy/trivializer.hpp"

#include <json.hpp>

#include <memory>
#include <string>

namespace opthy {

using Json = nlohmann::json;

// Theory document:
//   {"name", "basics": [{"label", "outcomes"}], "conjunctions": [[labels]],
//    "preparations": [labels], "tables": [{"measurement", "preparation",
//    "dist": {outcome: "num/den"}}], "views": [{"base", "tag", "blocks":
//    [{"label", "outcomes"}]}]}
// "views" is optional. Masses are strings ("3/8") or integers.
Json to_json(const OperationalTheory& theory);
OperationalTheory theory_from_json(const Json& doc);

// Model document: {"name", "theory", "ontic_states", "priors": {prep:
// {state: mass}}, "responses": [{"measurement", "state", "dist"}]}.
Json to_json(const OntologicalModel& model);
OntologicalModel model_from_json(const Json& doc);

/// Theory document of the trivial theory plus a "trivialization" object.
Json to_json(const Trivialization& t);
Json to_json(const TrivializationMap& map);

Json to_json(const Distribution& d);
Distribution distribution_from_json(const Json& obj, const std::string& what);

Json to_json(const ChshReport& r);
Json to_json(const NonDisturbanceReport& r);
Json to_json(const TheoryEquivalenceReport& r);
Json to_json(const SimultaneousReport& r);
Json to_json(const MeasurementReport& r);
Json to_json(const Hypergraph& g);
Json to_json(const CiSet& cis);
Json to_json(const Dag& dag);
Json to_json(const FaithfulnessReport& r);
Json to_json(const RealizationReport& r);

/// Reads and parses a file; throws ValidationError with the path on failure.
Json read_json_file(const std::string& path);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& doc);

}  // namespace opthy
