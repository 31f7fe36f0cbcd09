#pragma once

#include "opthy/hypergraph.hpp"
#include "opthy/theory.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace opthy {

/// Bookkeeping of a trivialization.
///
/// new_basics maps each replaced context (key of its maximal conjunction,
/// e.g. "A0&B0") to the label of the new basic measurement ("C00").
/// outcome_bijections maps each new basic to (conjunction outcome, flat
/// outcome) pairs: the component outcome indices are concatenated, so
/// (X0,Y1) becomes Z01. When a component has more than ten outcomes the
/// indices are '_'-separated (Z3_11).
/// marginal_views maps every old measurement to the measurements of the new
/// theory that reproduce it: itself if it was kept, otherwise one coarse-
/// graining per replaced context containing it, ordered by context key
/// (the first candidate is the canonical one).
struct TrivializationMap {
  std::map<std::string, std::string> new_basics;
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> outcome_bijections;
  std::map<std::string, std::vector<MeasurementId>> marginal_views;

  friend bool operator==(const TrivializationMap&, const TrivializationMap&) = default;
};

struct Trivialization {
  OperationalTheory theory;
  TrivializationMap map;
};

/// Replaces each selected context (all contexts by default) by one new basic
/// measurement whose table is the context's joint table carried through the
/// outcome bijection. Old basics and conjunctions that only live inside
/// replaced contexts are dropped; their marginal views are declared on the
/// new theory. Lone basics and untouched contexts are kept as they are.
///
/// Throws PreconditionError for a disturbing theory (naming one violation) or
/// for a selected set that is not a context.
Trivialization trivialize(const OperationalTheory& theory, const std::optional<std::vector<Context>>& selected = {});

struct TheoryEquivalenceReport {
  bool equivalent = true;
  /// Set when the preparation labels differ and were paired by declaration order.
  bool preparations_paired_by_order = false;
  std::vector<std::string> mismatches;
};

/// Every old measurement's table equals each mapped view's table for every
/// preparation. Throws PreconditionError listing old measurements the map
/// does not cover.
TheoryEquivalenceReport verify_theory_equivalence(const OperationalTheory& old_theory,
                                                  const OperationalTheory& new_theory, const TrivializationMap& map);

/// Candidate views of an old measurement; throws LookupError when uncovered.
const std::vector<MeasurementId>& marginal_view(const TrivializationMap& map, const MeasurementId& old_measurement);

/// Graph of the trivial theory with a shared-marginal edge between every two
/// new basics whose replaced contexts had a basic measurement in common.
Hypergraph annotate_trivialized(const OperationalTheory& trivial, const TrivializationMap& map);

}  // namespace opthy
