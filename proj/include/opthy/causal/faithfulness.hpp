#pragma once

#include "opthy/causal/dag.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace opthy {

enum class Faithfulness { Faithful, FineTuned };

std::string to_string(Faithfulness f);

struct CiFailureRate {
  CiStatement statement;
  std::size_t failures = 0;
  double rate = 0.0;
};

struct FaithfulnessReport {
  Faithfulness verdict = Faithfulness::Faithful;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  double tolerance = 1e-9;
  std::vector<CiFailureRate> rates;  // in the order of the reference set
};

/// Fraction of trials above which a reference statement counts as failing.
inline constexpr double kFineTuningThreshold = 0.10;

/// Joint of the DAG's factorization prod p(v | parents(v)) with every
/// conditional distribution drawn uniformly from its simplex.
RealJoint sample_factorization(const Dag& dag, const VariableSpace& space, std::mt19937_64& rng);

/// Trial t samples its parameters from a generator seeded with (seed, t), so
/// the outcome does not depend on how trials are spread over threads.
/// FineTuned iff some reference statement fails in more than 10% of trials.
/// Throws ValidationError when trials is 0.
FaithfulnessReport faithfulness_probe(const Dag& dag, const VariableSpace& space, const CiSet& reference,
                                      std::size_t trials, std::uint64_t seed, double tolerance = 1e-9);
FaithfulnessReport faithfulness_probe_serial(const Dag& dag, const VariableSpace& space, const CiSet& reference,
                                             std::size_t trials, std::uint64_t seed, double tolerance = 1e-9);

}  // namespace opthy
