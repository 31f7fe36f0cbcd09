#pragma once

#include "opthy/causal/dag.hpp"
#include "opthy/ontology.hpp"

#include <cstdint>
#include <string>

namespace opthy {

// The two-party scenario uses variables A, B (choices), X, Y (outcomes) and
// L (ontic state); the trivial one uses C, Z and L.

/// The six named statements of the two-party scenario, k = 1..6:
///   1: X _||_ B | A      2: Y _||_ A | B      3: X _||_ Y | A,L
///   4: Y _||_ X | B,L    5: X _||_ B | A,L    6: Y _||_ A | B,L
CiStatement bell_ci(int k);
CiSet bell_cis(int first, int last);

/// All statements among the exogenous variables (A, B, L or C, L), which
/// hold whenever those are mutually independent.
CiSet exogenous_family(const VariableSpace& space);

/// A->X, L->X, L->Y, B->Y over the space's variable order.
Dag local_dag(const VariableSpace& space);
/// local_dag plus A->Y.
Dag signalling_dag(const VariableSpace& space);
/// C->Z, L->Z.
Dag trivial_dag(const VariableSpace& space);

/// Joint of the DAG's factorization with seeded random rational conditionals
/// (integer weights in 1..1000, normalized). Generic: it satisfies only the
/// statements the DAG implies, barring coincidences.
ExactJoint generic_joint(const Dag& dag, const VariableSpace& space, std::uint64_t seed);

enum class ScenarioKind { Local, Signalling, Trivial };

struct CausalScenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::Local;
  VariableSpace space;
  Dag factorization;  // graph of the model's factorization
  CiSet required;     // statements the minimal graphs must imply
  CiSet reference;    // statements probed for fine-tuning
};

/// Scenario of a model: trivial theories give Trivial; two-party models
/// whose ci_report contains statement 6 give Local, the others Signalling.
CausalScenario scenario_of(const OntologicalModel& model);

/// Observed statements for discovery: those of a generic joint of the
/// scenario's factorization.
CiSet generic_observed(const CausalScenario& scenario, std::uint64_t seed = 1);

}  // namespace opthy
