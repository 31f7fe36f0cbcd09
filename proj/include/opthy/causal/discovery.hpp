#pragma once

#include "opthy/causal/dag.hpp"

#include <vector>

namespace opthy {

/// Largest variable count minimal_dags accepts.
inline constexpr std::size_t kMaxDiscoveryVariables = 6;

/// Every DAG over the space's variables (in space order) with
/// required ⊆ markov_implied ⊆ observed, sorted by edge count then mask.
/// Throws PreconditionError when required ⊄ observed or the space is too big.
std::vector<Dag> consistent_dags(const CiSet& observed, const CiSet& required, const VariableSpace& space);
std::vector<Dag> consistent_dags_serial(const CiSet& observed, const CiSet& required, const VariableSpace& space);

/// The consistent DAGs none of whose proper edge subsets is itself consistent.
std::vector<Dag> minimal_dags(const CiSet& observed, const CiSet& required, const VariableSpace& space);
std::vector<Dag> minimal_dags_serial(const CiSet& observed, const CiSet& required, const VariableSpace& space);

/// Number of labelled DAGs on n nodes by brute force (29281 for n = 5).
std::size_t count_dags(std::size_t n);

}  // namespace opthy
