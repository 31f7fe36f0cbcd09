#pragma once

#include "opthy/distribution.hpp"
#include "opthy/measurement.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace opthy {

struct BasicSpec {
  std::string label;
  std::vector<std::string> outcomes;
  friend bool operator==(const BasicSpec&, const BasicSpec&) = default;
};

struct TableEntry {
  MeasurementId measurement;
  std::string preparation;
  Distribution dist;
};

/// A finite operational theory: basic measurements with their outcome sets,
/// the member conjunctions (simultaneous measurements), preparations, and an
/// exact table p(X|M,P) for every member measurement and preparation.
///
/// Coarse-grainings are not members. A theory may declare named coarse-graining
/// views (e.g. the marginal C00^(1) of a trivialized theory) so that models
/// and equivalence checks can refer to them; every conjunction additionally
/// has derived marginal views, see derived_views().
///
/// Immutable after construction.
class OperationalTheory {
 public:
  /// Validates everything: unique labels, downward closure of conjunctions,
  /// table coverage, coarse-graining views partitioning their base outcomes.
  /// Outcomes omitted from a table entry carry mass zero.
  OperationalTheory(std::string name, std::vector<BasicSpec> basics,
                    std::vector<std::vector<std::string>> conjunctions, std::vector<std::string> preparations,
                    std::vector<TableEntry> tables, std::vector<MeasurementId> views = {});

  const std::string& name() const { return name_; }
  const std::vector<BasicSpec>& basics() const { return basics_; }
  const std::vector<MeasurementId>& conjunctions() const { return conjunctions_; }
  const std::vector<std::string>& preparations() const { return preparations_; }
  const std::vector<MeasurementId>& views() const { return views_; }

  /// Basics in declaration order followed by conjunctions in declaration order.
  std::vector<MeasurementId> members() const;
  bool is_member(const MeasurementId& m) const;
  bool has_preparation(const std::string& p) const;
  bool is_trivial() const { return conjunctions_.empty(); }

  const BasicSpec& basic(const std::string& label) const;

  /// Outcome labels of a member, a coarse-graining of a member, or a
  /// declared view. Conjunction outcomes are the Cartesian product of the
  /// component outcome lists, first component varying slowest.
  std::vector<std::string> outcomes(const MeasurementId& m) const;

  /// Stored table of a member measurement.
  const Distribution& table(const MeasurementId& member, const std::string& preparation) const;

  /// Distribution of a member or coarse-graining (block sums of its base).
  Distribution distribution(const MeasurementId& m, const std::string& preparation) const;

  /// Resolves "A0", "A0&B0" or a declared view key such as "C00^(1)".
  MeasurementId resolve(const std::string& key) const;

  friend bool operator==(const OperationalTheory& a, const OperationalTheory& b);

 private:
  void check_coarse_graining(const MeasurementId& m) const;

  std::string name_;
  std::vector<BasicSpec> basics_;
  std::vector<MeasurementId> conjunctions_;
  std::vector<std::string> preparations_;
  std::map<std::pair<std::string, std::string>, Distribution> tables_;
  std::vector<MeasurementId> views_;
};

/// p(outcome | measurement, preparation).
Rational probability(const OperationalTheory& theory, const std::string& outcome, const MeasurementId& measurement,
                     const std::string& preparation);

/// Explicit outcome pairing (outcome of the first measurement, outcome of the
/// second). Without one, outcomes are paired by position.
using OutcomeCorrespondence = std::vector<std::pair<std::string, std::string>>;

/// p(X|Mi,P) == p(f(X)|Mj,P) for every preparation of the theory.
/// Throws PreconditionError on unequal outcome cardinality without a correspondence.
bool are_operationally_equivalent(const OperationalTheory& theory, const MeasurementId& mi, const MeasurementId& mj,
                                  const std::optional<OutcomeCorrespondence>& correspondence = std::nullopt);

struct DisturbanceViolation {
  MeasurementId measurement;  // standalone member
  MeasurementId conjunction;  // containing conjunction
  std::string preparation;
};

struct NonDisturbanceReport {
  bool non_disturbing = true;
  std::vector<DisturbanceViolation> violations;
};

/// Checks that every sub-measurement marginal of every member conjunction
/// equals the standalone member's table, for every preparation.
NonDisturbanceReport is_non_disturbing(const OperationalTheory& theory);

using Context = std::set<std::string>;

enum class LoneBasics { Exclude, AsSingletons };

/// Maximal sets of simultaneously measurable basics. Basics that appear in
/// no conjunction are singleton contexts only when requested, so a trivial
/// theory has no contexts by default.
std::vector<Context> contexts(const OperationalTheory& theory, LoneBasics lone = LoneBasics::Exclude);

/// Coarse-graining of `conjunction` onto the sub-measurement over `onto`
/// (a basic or a smaller conjunction). Block labels are the outcomes of the
/// sub-measurement; the tag lists the 1-based positions of the kept members,
/// so the A0-marginal of A0&B0 is "A0&B0^(1)".
MeasurementId component_marginal(const OperationalTheory& theory, const MeasurementId& conjunction,
                                 const std::vector<std::string>& onto);

/// Sub-measurement (basic or member conjunction) that a component marginal
/// projects onto.
MeasurementId marginal_target(const MeasurementId& marginal);

/// Every component marginal of every conjunction onto each of its member
/// sub-measurements, in member order.
std::vector<MeasurementId> derived_views(const OperationalTheory& theory);

/// Partition of the base outcomes into singletons, labelled by the outcomes.
MeasurementId identity_coarse_graining(const OperationalTheory& theory, const MeasurementId& base);

}  // namespace opthy
