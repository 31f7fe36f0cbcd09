#include "opthy/theory.hpp"

#include "opthy/errors.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace opthy {

namespace {

bool is_subset(const std::vector<std::string>& small, const std::vector<std::string>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// All subsets of `members` (sorted) with at least two elements, excluding the full set.
std::vector<std::vector<std::string>> proper_subsets(const std::vector<std::string>& members, std::size_t min_size) {
  std::vector<std::vector<std::string>> out;
  const std::size_t n = members.size();
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
    std::vector<std::string> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) s.push_back(members[i]);
    }
    if (s.size() >= min_size) out.push_back(std::move(s));
  }
  return out;
}

std::string positions_tag(const std::vector<std::size_t>& positions, std::size_t width) {
  std::string tag;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (width > 9 && i) tag += ',';
    tag += std::to_string(positions[i] + 1);
  }
  return tag;
}

}  // namespace

OperationalTheory::OperationalTheory(std::string name, std::vector<BasicSpec> basics,
                                     std::vector<std::vector<std::string>> conjunctions,
                                     std::vector<std::string> preparations, std::vector<TableEntry> tables,
                                     std::vector<MeasurementId> views)
    : name_(std::move(name)), basics_(std::move(basics)), preparations_(std::move(preparations)) {
  if (basics_.empty()) throw ValidationError("theory '" + name_ + "' has no basic measurements");
  std::unordered_set<std::string> labels;
  for (const auto& b : basics_) {
    (void)MeasurementId::basic(b.label);
    if (!labels.insert(b.label).second) throw ValidationError("duplicate basic measurement '" + b.label + "'");
    if (b.outcomes.empty()) throw ValidationError("basic measurement '" + b.label + "' has no outcomes");
    std::unordered_set<std::string> outs;
    for (const auto& o : b.outcomes) {
      if (o.empty() || o.find(',') != std::string::npos) {
        throw ValidationError("invalid outcome label '" + o + "' of '" + b.label + "'");
      }
      if (!outs.insert(o).second) throw ValidationError("duplicate outcome '" + o + "' of '" + b.label + "'");
    }
  }

  std::set<std::vector<std::string>> conj_sets;
  for (auto& c : conjunctions) {
    auto m = MeasurementId::conjunction(std::move(c));
    for (const auto& b : m.basics()) {
      if (!labels.count(b)) throw ValidationError("conjunction " + m.key() + " references unknown basic '" + b + "'");
    }
    if (!conj_sets.insert(m.basics()).second) throw ValidationError("duplicate conjunction " + m.key());
    conjunctions_.push_back(std::move(m));
  }
  for (const auto& c : conjunctions_) {
    for (const auto& sub : proper_subsets(c.basics(), 2)) {
      if (!conj_sets.count(sub)) {
        throw ValidationError("downward closure violated: " + c.key() + " is a member but " + conjunction_key(sub) +
                              " is not");
      }
    }
  }

  if (preparations_.empty()) throw ValidationError("theory '" + name_ + "' has no preparations");
  std::unordered_set<std::string> preps;
  for (const auto& p : preparations_) {
    if (p.empty()) throw ValidationError("empty preparation label");
    if (!preps.insert(p).second) throw ValidationError("duplicate preparation '" + p + "'");
  }

  for (auto& entry : tables) {
    if (!is_member(entry.measurement)) {
      throw ValidationError("table for non-member measurement " + entry.measurement.key());
    }
    if (!preps.count(entry.preparation)) {
      throw ValidationError("table for unknown preparation '" + entry.preparation + "'");
    }
    const auto outs = outcomes(entry.measurement);
    for (const auto& label : entry.dist.support()) {
      if (std::find(outs.begin(), outs.end(), label) == outs.end()) {
        throw ValidationError("outcome '" + label + "' is not an outcome of " + entry.measurement.key());
      }
    }
    std::vector<Distribution::Entry> canonical;
    canonical.reserve(outs.size());
    for (const auto& o : outs) {
      canonical.emplace_back(o, entry.dist.contains(o) ? entry.dist.mass(o) : Rational(0));
    }
    auto key = std::make_pair(entry.measurement.key(), entry.preparation);
    if (tables_.count(key)) {
      throw ValidationError("duplicate table for " + key.first + " under '" + key.second + "'");
    }
    tables_.emplace(std::move(key), Distribution(std::move(canonical)));
  }
  for (const auto& m : members()) {
    for (const auto& p : preparations_) {
      if (!tables_.count({m.key(), p})) {
        throw ValidationError("missing table for " + m.key() + " under '" + p + "'");
      }
    }
  }

  std::unordered_set<std::string> view_keys;
  for (auto& v : views) {
    if (!v.is_coarse_graining()) throw ValidationError("view " + v.key() + " is not a coarse-graining");
    check_coarse_graining(v);
    if (!view_keys.insert(v.key()).second) throw ValidationError("duplicate view " + v.key());
    views_.push_back(std::move(v));
  }
}

std::vector<MeasurementId> OperationalTheory::members() const {
  std::vector<MeasurementId> out;
  out.reserve(basics_.size() + conjunctions_.size());
  for (const auto& b : basics_) out.push_back(MeasurementId::basic(b.label));
  out.insert(out.end(), conjunctions_.begin(), conjunctions_.end());
  return out;
}

bool OperationalTheory::is_member(const MeasurementId& m) const {
  if (m.is_basic()) {
    return std::any_of(basics_.begin(), basics_.end(), [&](const BasicSpec& b) { return b.label == m.label(); });
  }
  if (m.is_conjunction()) return std::find(conjunctions_.begin(), conjunctions_.end(), m) != conjunctions_.end();
  return false;
}

bool OperationalTheory::has_preparation(const std::string& p) const {
  return std::find(preparations_.begin(), preparations_.end(), p) != preparations_.end();
}

const BasicSpec& OperationalTheory::basic(const std::string& label) const {
  for (const auto& b : basics_) {
    if (b.label == label) return b;
  }
  throw LookupError("unknown basic measurement '" + label + "' in theory '" + name_ + "'");
}

std::vector<std::string> OperationalTheory::outcomes(const MeasurementId& m) const {
  switch (m.kind()) {
    case MeasurementId::Kind::Basic:
      return basic(m.label()).outcomes;
    case MeasurementId::Kind::Conjunction: {
      if (!is_member(m)) throw LookupError("unknown measurement " + m.key() + " in theory '" + name_ + "'");
      std::vector<std::vector<std::string>> tuples{{}};
      for (const auto& b : m.basics()) {
        std::vector<std::vector<std::string>> next;
        for (const auto& prefix : tuples) {
          for (const auto& o : basic(b).outcomes) {
            auto t = prefix;
            t.push_back(o);
            next.push_back(std::move(t));
          }
        }
        tuples = std::move(next);
      }
      std::vector<std::string> out;
      out.reserve(tuples.size());
      for (const auto& t : tuples) out.push_back(join_outcome(t));
      return out;
    }
    case MeasurementId::Kind::CoarseGraining: {
      check_coarse_graining(m);
      std::vector<std::string> out;
      for (const auto& b : m.blocks()) out.push_back(b.label);
      return out;
    }
  }
  return {};
}

void OperationalTheory::check_coarse_graining(const MeasurementId& m) const {
  const auto base_outcomes = outcomes(m.base());
  std::unordered_map<std::string, int> hits;
  std::unordered_set<std::string> block_labels;
  for (const auto& block : m.blocks()) {
    if (!block_labels.insert(block.label).second) {
      throw ValidationError("coarse-graining " + m.key() + " repeats block label '" + block.label + "'");
    }
    for (const auto& o : block.outcomes) ++hits[o];
  }
  for (const auto& o : base_outcomes) {
    auto it = hits.find(o);
    if (it == hits.end() || it->second != 1) {
      throw ValidationError("coarse-graining " + m.key() + " does not cover outcome '" + o + "' exactly once");
    }
  }
  if (hits.size() != base_outcomes.size()) {
    throw ValidationError("coarse-graining " + m.key() + " names outcomes outside its base");
  }
}

const Distribution& OperationalTheory::table(const MeasurementId& member, const std::string& preparation) const {
  auto it = tables_.find({member.key(), preparation});
  if (it == tables_.end()) {
    if (!has_preparation(preparation)) throw LookupError("unknown preparation '" + preparation + "'");
    throw LookupError("no table for measurement " + member.key() + " in theory '" + name_ + "'");
  }
  return it->second;
}

Distribution OperationalTheory::distribution(const MeasurementId& m, const std::string& preparation) const {
  if (!m.is_coarse_graining()) return table(m, preparation);
  check_coarse_graining(m);
  const Distribution base = distribution(m.base(), preparation);
  std::vector<Distribution::Entry> entries;
  for (const auto& block : m.blocks()) {
    Rational sum;
    for (const auto& o : block.outcomes) sum += base.mass(o);
    entries.emplace_back(block.label, std::move(sum));
  }
  return Distribution(std::move(entries));
}

MeasurementId OperationalTheory::resolve(const std::string& key) const {
  if (key.find('^') != std::string::npos) {
    for (const auto& v : views_) {
      if (v.key() == key) return v;
    }
    for (const auto& v : derived_views(*this)) {
      if (v.key() == key) return v;
    }
    throw LookupError("unknown view '" + key + "' in theory '" + name_ + "'");
  }
  auto m = MeasurementId::parse(key);
  if (!is_member(m)) throw LookupError("unknown measurement '" + key + "' in theory '" + name_ + "'");
  return m;
}

bool operator==(const OperationalTheory& a, const OperationalTheory& b) {
  return a.name_ == b.name_ && a.basics_ == b.basics_ && a.conjunctions_ == b.conjunctions_ &&
         a.preparations_ == b.preparations_ && a.tables_ == b.tables_ && a.views_ == b.views_;
}

Rational probability(const OperationalTheory& theory, const std::string& outcome, const MeasurementId& measurement,
                     const std::string& preparation) {
  return theory.distribution(measurement, preparation).mass(outcome);
}

bool are_operationally_equivalent(const OperationalTheory& theory, const MeasurementId& mi, const MeasurementId& mj,
                                  const std::optional<OutcomeCorrespondence>& correspondence) {
  const auto oi = theory.outcomes(mi);
  const auto oj = theory.outcomes(mj);
  OutcomeCorrespondence pairs;
  if (correspondence) {
    pairs = *correspondence;
    if (pairs.size() != oi.size() || pairs.size() != oj.size()) {
      throw PreconditionError("outcome correspondence between " + mi.key() + " and " + mj.key() + " is not a bijection");
    }
  } else {
    if (oi.size() != oj.size()) {
      throw PreconditionError("cannot compare " + mi.key() + " (" + std::to_string(oi.size()) + " outcomes) with " +
                              mj.key() + " (" + std::to_string(oj.size()) + " outcomes) without a correspondence");
    }
    for (std::size_t k = 0; k < oi.size(); ++k) pairs.emplace_back(oi[k], oj[k]);
  }
  for (const auto& p : theory.preparations()) {
    const auto di = theory.distribution(mi, p);
    const auto dj = theory.distribution(mj, p);
    for (const auto& [x, y] : pairs) {
      if (di.mass(x) != dj.mass(y)) return false;
    }
  }
  return true;
}

MeasurementId component_marginal(const OperationalTheory& theory, const MeasurementId& conjunction,
                                 const std::vector<std::string>& onto) {
  if (!conjunction.is_conjunction()) {
    throw PreconditionError("component marginal of non-conjunction " + conjunction.key());
  }
  auto kept = onto;
  std::sort(kept.begin(), kept.end());
  const auto& members = conjunction.basics();
  if (kept.empty() || kept.size() >= members.size() || !is_subset(kept, members)) {
    throw PreconditionError("cannot marginalize " + conjunction.key() + " onto " + conjunction_key(kept));
  }
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (std::binary_search(kept.begin(), kept.end(), members[i])) positions.push_back(i);
  }
  const MeasurementId target = kept.size() == 1 ? MeasurementId::basic(kept.front()) : MeasurementId::conjunction(kept);
  const auto target_outcomes = kept.size() == 1 ? theory.basic(kept.front()).outcomes : theory.outcomes(target);

  std::vector<MeasurementId::Block> blocks;
  std::unordered_map<std::string, std::size_t> block_of;
  for (const auto& t : target_outcomes) {
    block_of.emplace(t, blocks.size());
    blocks.push_back({t, {}});
  }
  for (const auto& o : theory.outcomes(conjunction)) {
    const auto parts = split_outcome(o);
    std::vector<std::string> projected;
    for (auto pos : positions) projected.push_back(parts[pos]);
    blocks[block_of.at(join_outcome(projected))].outcomes.push_back(o);
  }
  return MeasurementId::coarse_graining(conjunction, std::move(blocks), positions_tag(positions, members.size()));
}

MeasurementId marginal_target(const MeasurementId& marginal) {
  const auto& base = marginal.base();
  const auto& members = base.basics();
  std::vector<std::string> kept;
  const auto& tag = marginal.tag();
  if (members.size() > 9) {
    for (const auto& p : split_outcome(tag)) kept.push_back(members.at(std::stoul(p) - 1));
  } else {
    for (char c : tag) kept.push_back(members.at(static_cast<std::size_t>(c - '1')));
  }
  return kept.size() == 1 ? MeasurementId::basic(kept.front()) : MeasurementId::conjunction(kept);
}

std::vector<MeasurementId> derived_views(const OperationalTheory& theory) {
  std::vector<MeasurementId> out;
  for (const auto& c : theory.conjunctions()) {
    for (const auto& b : c.basics()) out.push_back(component_marginal(theory, c, {b}));
    for (const auto& sub : proper_subsets(c.basics(), 2)) out.push_back(component_marginal(theory, c, sub));
  }
  return out;
}

MeasurementId identity_coarse_graining(const OperationalTheory& theory, const MeasurementId& base) {
  std::vector<MeasurementId::Block> blocks;
  for (const auto& o : theory.outcomes(base)) blocks.push_back({o, {o}});
  return MeasurementId::coarse_graining(base, std::move(blocks), "id");
}

NonDisturbanceReport is_non_disturbing(const OperationalTheory& theory) {
  NonDisturbanceReport report;
  for (const auto& c : theory.conjunctions()) {
    std::vector<std::vector<std::string>> subs;
    for (const auto& b : c.basics()) subs.push_back({b});
    for (auto& s : proper_subsets(c.basics(), 2)) subs.push_back(std::move(s));
    for (const auto& sub : subs) {
      const auto view = component_marginal(theory, c, sub);
      const auto target = marginal_target(view);
      for (const auto& p : theory.preparations()) {
        if (theory.distribution(view, p).masses() != theory.table(target, p).masses()) {
          report.non_disturbing = false;
          report.violations.push_back({target, c, p});
        }
      }
    }
  }
  return report;
}

std::vector<Context> contexts(const OperationalTheory& theory, LoneBasics lone) {
  std::vector<Context> out;
  for (const auto& c : theory.conjunctions()) {
    const bool maximal = std::none_of(theory.conjunctions().begin(), theory.conjunctions().end(),
                                      [&](const MeasurementId& other) {
                                        return other.basics().size() > c.basics().size() &&
                                               is_subset(c.basics(), other.basics());
                                      });
    if (maximal) out.emplace_back(c.basics().begin(), c.basics().end());
  }
  if (lone == LoneBasics::AsSingletons) {
    for (const auto& b : theory.basics()) {
      const bool covered = std::any_of(theory.conjunctions().begin(), theory.conjunctions().end(),
                                       [&](const MeasurementId& c) {
                                         return std::binary_search(c.basics().begin(), c.basics().end(), b.label);
                                       });
      if (!covered) out.push_back({b.label});
    }
  }
  return out;
}

}  // namespace opthy
