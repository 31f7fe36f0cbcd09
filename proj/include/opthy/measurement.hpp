#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace opthy {

/// Identity of a measurement: a basic label, a simultaneous measurement of
/// several basics (conjunction), or a coarse-graining of another measurement
/// whose outcomes are grouped into named blocks.
///
/// Conjunction members are kept sorted so A0&B0 and B0&A0 are the same id.
class MeasurementId {
 public:
  enum class Kind { Basic, Conjunction, CoarseGraining };

  struct Block {
    std::string label;
    std::vector<std::string> outcomes;
    friend bool operator==(const Block&, const Block&) = default;
  };

  static MeasurementId basic(std::string label);
  /// Throws ValidationError for fewer than two distinct labels.
  static MeasurementId conjunction(std::vector<std::string> basics);
  /// Block coverage is checked against the base outcome set by the theory.
  static MeasurementId coarse_graining(MeasurementId base, std::vector<Block> blocks, std::string tag);

  /// Parses "A0", "A0&B0". Coarse-graining keys are resolved by the theory.
  static MeasurementId parse(std::string_view key);

  Kind kind() const { return kind_; }
  bool is_basic() const { return kind_ == Kind::Basic; }
  bool is_conjunction() const { return kind_ == Kind::Conjunction; }
  bool is_coarse_graining() const { return kind_ == Kind::CoarseGraining; }

  /// Basic label list: {label} for a basic, the sorted members for a
  /// conjunction, the base's list for a coarse-graining.
  const std::vector<std::string>& basics() const;
  const std::string& label() const;  // basic only
  const MeasurementId& base() const;  // coarse-graining only
  const std::vector<Block>& blocks() const { return blocks_; }
  const std::string& tag() const { return tag_; }

  /// Display and lookup key: "A0", "A0&B0", "C00^(1)".
  std::string key() const;

  friend bool operator==(const MeasurementId& a, const MeasurementId& b);
  friend bool operator<(const MeasurementId& a, const MeasurementId& b) { return a.key() < b.key(); }

 private:
  MeasurementId() = default;

  Kind kind_ = Kind::Basic;
  std::vector<std::string> basics_;
  std::shared_ptr<const MeasurementId> base_;
  std::vector<Block> blocks_;
  std::string tag_;
};

/// Outcome label of a conjunction: component outcomes joined by ','.
std::string join_outcome(const std::vector<std::string>& parts);
std::vector<std::string> split_outcome(std::string_view outcome);

/// Key of the conjunction over `basics` (sorted, '&'-joined).
std::string conjunction_key(std::vector<std::string> basics);

}  // namespace opthy
