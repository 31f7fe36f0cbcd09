#pragma once

#include "opthy/causal/space.hpp"

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace opthy {

/// lhs _||_ rhs | given. Canonical form: rhs and given sorted by name; when
/// rhs is a single variable, lhs is the lexicographically smaller of the two.
struct CiStatement {
  std::string lhs;
  std::vector<std::string> rhs;
  std::vector<std::string> given;

  /// Builds the canonical form. Throws ValidationError when rhs is empty or
  /// the three parts overlap.
  static CiStatement make(std::string lhs, std::vector<std::string> rhs, std::vector<std::string> given = {});

  /// "X _||_ B | A" (no bar when nothing is conditioned on).
  std::string str() const;
  /// Parses the str() form; also accepts "{B,L}" or "B,L" for sets.
  static CiStatement parse(const std::string& text);

  friend auto operator<=>(const CiStatement&, const CiStatement&) = default;
  friend bool operator==(const CiStatement&, const CiStatement&) = default;
};

using CiSet = std::set<CiStatement>;

/// Every canonical statement over the space: lhs one variable, rhs a
/// non-empty subset of the others, given a subset of the rest. Statements
/// are addressed by index for bitset work.
class StatementUniverse {
 public:
  struct Entry {
    std::size_t lhs;
    std::uint32_t rhs;
    std::uint32_t given;
  };

  explicit StatementUniverse(const VariableSpace& space);

  const VariableSpace& space() const { return space_; }
  std::size_t size() const { return entries_.size(); }
  const Entry& entry(std::size_t i) const { return entries_[i]; }
  CiStatement statement(std::size_t i) const;
  /// Index of a statement; throws LookupError when it names other variables.
  std::size_t index_of(const CiStatement& s) const;

  std::vector<bool> bits(const CiSet& set) const;
  CiSet statements(const std::vector<bool>& bits) const;

 private:
  VariableSpace space_;
  std::vector<Entry> entries_;
  std::vector<CiStatement> canonical_;
};

/// Exact check: for every assignment with p(rhs, given) > 0,
/// p(lhs | rhs, given) = p(lhs | given).
bool check_ci(const ExactJoint& joint, const CiStatement& stmt);

/// Same with |p(lhs|rhs,given) - p(lhs|given)| <= tolerance.
bool check_ci(const RealJoint& joint, const CiStatement& stmt, double tolerance = 1e-9);

/// All canonical statements that hold in the joint.
CiSet ci_report(const ExactJoint& joint);

/// Statements over `names` that hold when those variables are mutually
/// independent, i.e. every statement using only these variables.
CiSet independence_family(const VariableSpace& space, const std::vector<std::string>& names);

}  // namespace opthy
