#include "opthy/distribution.hpp"

#include "opthy/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace opthy {

Distribution::Distribution(std::vector<Entry> entries) {
  if (entries.empty()) throw ValidationError("distribution with empty support");
  std::unordered_set<std::string> seen;
  Rational total;
  labels_.reserve(entries.size());
  masses_.reserve(entries.size());
  for (auto& [label, mass] : entries) {
    if (!seen.insert(label).second) throw ValidationError("duplicate outcome label '" + label + "'");
    if (mass.sign() < 0) {
      throw ValidationError("negative mass " + mass.str() + " at outcome '" + label + "'");
    }
    total += mass;
    labels_.push_back(std::move(label));
    masses_.push_back(std::move(mass));
  }
  if (total != Rational(1)) {
    throw ValidationError("masses sum to " + total.str() + ", not 1 (last outcome '" + labels_.back() +
                          "')");
  }
}

Distribution Distribution::point(std::span<const std::string> support, std::size_t index) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < support.size(); ++i) {
    entries.emplace_back(support[i], i == index ? Rational(1) : Rational(0));
  }
  return Distribution(std::move(entries));
}

Distribution Distribution::uniform(std::span<const std::string> support) {
  std::vector<Entry> entries;
  const auto n = static_cast<std::int64_t>(support.size());
  for (const auto& s : support) entries.emplace_back(s, rat(1, n));
  return Distribution(std::move(entries));
}

std::size_t Distribution::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw LookupError("unknown outcome '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

bool Distribution::contains(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

const Rational& Distribution::mass(const std::string& label) const { return masses_[index_of(label)]; }

bool Distribution::is_point_mass() const {
  return std::any_of(masses_.begin(), masses_.end(), [](const Rational& m) { return m == Rational(1); });
}

}  // namespace opthy
