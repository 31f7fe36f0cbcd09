#include "opthy/measurement.hpp"

#include "opthy/errors.hpp"

#include <algorithm>

namespace opthy {

MeasurementId MeasurementId::basic(std::string label) {
  if (label.empty()) throw ValidationError("empty measurement label");
  if (label.find_first_of("&^,") != std::string::npos) {
    throw ValidationError("measurement label '" + label + "' contains a reserved character");
  }
  MeasurementId m;
  m.kind_ = Kind::Basic;
  m.basics_ = {std::move(label)};
  return m;
}

MeasurementId MeasurementId::conjunction(std::vector<std::string> basics) {
  std::sort(basics.begin(), basics.end());
  basics.erase(std::unique(basics.begin(), basics.end()), basics.end());
  if (basics.size() < 2) throw ValidationError("conjunction needs at least two distinct basic measurements");
  for (const auto& b : basics) (void)basic(b);
  MeasurementId m;
  m.kind_ = Kind::Conjunction;
  m.basics_ = std::move(basics);
  return m;
}

MeasurementId MeasurementId::coarse_graining(MeasurementId base, std::vector<Block> blocks, std::string tag) {
  if (blocks.empty()) throw ValidationError("coarse-graining without blocks");
  MeasurementId m;
  m.kind_ = Kind::CoarseGraining;
  m.basics_ = base.basics_;
  m.base_ = std::make_shared<const MeasurementId>(std::move(base));
  m.blocks_ = std::move(blocks);
  m.tag_ = std::move(tag);
  return m;
}

MeasurementId MeasurementId::parse(std::string_view key) {
  if (key.find('^') != std::string_view::npos) {
    throw LookupError("coarse-graining '" + std::string(key) + "' must be resolved through its theory");
  }
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto amp = key.find('&', start);
    parts.emplace_back(key.substr(start, amp == std::string_view::npos ? amp : amp - start));
    if (amp == std::string_view::npos) break;
    start = amp + 1;
  }
  if (parts.size() == 1) return basic(std::move(parts.front()));
  return conjunction(std::move(parts));
}

const std::vector<std::string>& MeasurementId::basics() const { return basics_; }

const std::string& MeasurementId::label() const {
  if (kind_ != Kind::Basic) throw LookupError("label() on non-basic measurement " + key());
  return basics_.front();
}

const MeasurementId& MeasurementId::base() const {
  if (!base_) throw LookupError("base() on measurement " + key() + " which is not a coarse-graining");
  return *base_;
}

std::string MeasurementId::key() const {
  switch (kind_) {
    case Kind::Basic:
      return basics_.front();
    case Kind::Conjunction:
      return conjunction_key(basics_);
    case Kind::CoarseGraining:
      return base_->key() + "^(" + tag_ + ")";
  }
  return {};
}

bool operator==(const MeasurementId& a, const MeasurementId& b) {
  if (a.kind_ != b.kind_ || a.basics_ != b.basics_) return false;
  if (a.kind_ != MeasurementId::Kind::CoarseGraining) return true;
  return *a.base_ == *b.base_ && a.blocks_ == b.blocks_;
}

std::string join_outcome(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split_outcome(std::string_view outcome) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto comma = outcome.find(',', start);
    parts.emplace_back(outcome.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

std::string conjunction_key(std::vector<std::string> basics) {
  std::sort(basics.begin(), basics.end());
  std::string out;
  for (std::size_t i = 0; i < basics.size(); ++i) {
    if (i) out += '&';
    out += basics[i];
  }
  return out;
}

}  // namespace opthy
