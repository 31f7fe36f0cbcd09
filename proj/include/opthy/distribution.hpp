#pragma once

#include "opthy/rational.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace opthy {

/// Finite probability distribution over an ordered list of outcome labels.
/// Masses are non-negative and sum to exactly 1.
class Distribution {
 public:
  using Entry = std::pair<std::string, Rational>;

  /// Validates and builds. Throws ValidationError naming the offending label
  /// for duplicate labels, negative masses or a total different from 1.
  explicit Distribution(std::vector<Entry> entries);

  static Distribution point(std::span<const std::string> support, std::size_t index);
  static Distribution uniform(std::span<const std::string> support);

  const std::vector<std::string>& support() const { return labels_; }
  const std::vector<Rational>& masses() const { return masses_; }
  std::size_t size() const { return labels_.size(); }

  /// Mass of `label`; throws LookupError when the label is not in the support.
  const Rational& mass(const std::string& label) const;
  const Rational& mass_at(std::size_t i) const { return masses_.at(i); }
  std::size_t index_of(const std::string& label) const;
  bool contains(const std::string& label) const;

  /// True when some outcome carries mass 1.
  bool is_point_mass() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<Rational> masses_;
};

/// Convenience wrapper matching `dist([(label, mass), ...])`.
inline Distribution dist(std::vector<Distribution::Entry> entries) {
  return Distribution(std::move(entries));
}

}  // namespace opthy
