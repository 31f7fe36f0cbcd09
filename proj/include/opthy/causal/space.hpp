#pragma once

#include "opthy/ontology.hpp"
#include "opthy/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace opthy {

struct Variable {
  std::string name;
  std::vector<std::string> values;
  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Ordered finite random variables. At most 16 of them; subsets are bitmasks
/// over the declaration order.
class VariableSpace {
 public:
  VariableSpace() = default;
  explicit VariableSpace(std::vector<Variable> variables);

  const std::vector<Variable>& variables() const { return vars_; }
  std::size_t size() const { return vars_.size(); }
  const Variable& at(std::size_t i) const { return vars_.at(i); }
  std::size_t index_of(const std::string& name) const;  // LookupError if unknown
  bool contains(const std::string& name) const;

  /// Number of full assignments.
  std::size_t cell_count() const { return cells_; }
  /// Mixed-radix index of a full assignment, first variable slowest.
  std::size_t index(const std::vector<std::size_t>& assignment) const;
  std::vector<std::size_t> assignment(std::size_t index) const;

  std::uint32_t mask_of(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(std::uint32_t mask) const;

  friend bool operator==(const VariableSpace& a, const VariableSpace& b) { return a.vars_ == b.vars_; }

 private:
  std::vector<Variable> vars_;
  std::vector<std::size_t> strides_;
  std::size_t cells_ = 1;
};

/// Joint distribution over a space stored densely by mixed-radix index.
/// T is Rational (exact) or double (sampled parameters).
template <class T>
class JointTable {
 public:
  /// Throws ValidationError on a size mismatch, a negative cell, or a total
  /// that is not 1 (exactly for Rational, within 1e-9 for double).
  JointTable(VariableSpace space, std::vector<T> mass);

  const VariableSpace& space() const { return space_; }
  const std::vector<T>& masses() const { return mass_; }
  const T& at(const std::vector<std::size_t>& assignment) const { return mass_[space_.index(assignment)]; }
  /// Mass of an assignment given by value labels.
  T probability(const std::map<std::string, std::string>& assignment) const;

  /// Marginal over the variables in `mask`, indexed mixed-radix over those
  /// variables in space order.
  std::vector<T> marginal(std::uint32_t mask) const;

 private:
  VariableSpace space_;
  std::vector<T> mass_;
};

using ExactJoint = JointTable<Rational>;
using RealJoint = JointTable<double>;

extern template class JointTable<Rational>;
extern template class JointTable<double>;

/// Distributions over the measurement-choice variables (A, B or C), keyed by
/// variable name; missing ones are uniform.
using MeasurementPriors = std::map<std::string, Distribution>;

/// Space of the scenario a model lives in: A, B, X, Y, L for a two-party
/// theory (A/B values are the basic labels, X/Y their outcomes) and C, Z, L
/// for a theory without conjunctions. L ranges over the ontic states.
VariableSpace scenario_space(const OntologicalModel& model);

/// p(choices, outcomes, L) = response(joint measurement at L)(outcomes)
///                           * prod p(choice) * p(L | preparation).
/// The preparation defaults to the theory's only one. Throws
/// PreconditionError when the theory is neither two-party nor trivial, when
/// basics of one party disagree on outcome labels, or when the preparation
/// is ambiguous.
ExactJoint joint_from_model(const OntologicalModel& model, const MeasurementPriors& priors = {},
                            const std::optional<std::string>& preparation = std::nullopt);

}  // namespace opthy
