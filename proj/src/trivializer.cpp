#include "opthy/trivializer.hpp"

#include "opthy/errors.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace opthy {

namespace {

bool contains_all(const Context& ctx, const std::vector<std::string>& members) {
  return std::all_of(members.begin(), members.end(), [&](const std::string& m) { return ctx.count(m) > 0; });
}

std::string flat_label(const std::vector<std::size_t>& indices, bool wide) {
  std::string out = "Z";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (wide && i) out += '_';
    out += std::to_string(indices[i]);
  }
  return out;
}

std::string describe(const DisturbanceViolation& v) {
  return v.measurement.key() + " is disturbed within " + v.conjunction.key() + " under '" + v.preparation + "'";
}

}  // namespace

Trivialization trivialize(const OperationalTheory& theory, const std::optional<std::vector<Context>>& selected) {
  const auto nd = is_non_disturbing(theory);
  if (!nd.non_disturbing) {
    throw PreconditionError("cannot trivialize a disturbing theory: " + describe(nd.violations.front()));
  }

  const auto all = contexts(theory);
  std::vector<Context> chosen;
  if (selected) {
    for (const auto& ctx : *selected) {
      if (std::find(all.begin(), all.end(), ctx) == all.end()) {
        std::vector<std::string> members(ctx.begin(), ctx.end());
        throw PreconditionError("{" + conjunction_key(members) + "} is not a context of '" + theory.name() + "'");
      }
      if (std::find(chosen.begin(), chosen.end(), ctx) == chosen.end()) chosen.push_back(ctx);
    }
    // Keep the theory's context order regardless of the caller's order.
    std::sort(chosen.begin(), chosen.end(), [&](const Context& a, const Context& b) {
      return std::find(all.begin(), all.end(), a) < std::find(all.begin(), all.end(), b);
    });
  } else {
    chosen = all;
  }
  std::vector<Context> untouched;
  for (const auto& ctx : all) {
    if (std::find(chosen.begin(), chosen.end(), ctx) == chosen.end()) untouched.push_back(ctx);
  }
  const auto in_untouched = [&](const std::vector<std::string>& members) {
    return std::any_of(untouched.begin(), untouched.end(), [&](const Context& c) { return contains_all(c, members); });
  };
  const auto in_chosen = [&](const std::vector<std::string>& members) {
    return std::any_of(chosen.begin(), chosen.end(), [&](const Context& c) { return contains_all(c, members); });
  };

  std::vector<BasicSpec> kept_basics;
  std::set<std::string> taken;
  for (const auto& b : theory.basics()) {
    if (!in_chosen({b.label}) || in_untouched({b.label})) {
      kept_basics.push_back(b);
      taken.insert(b.label);
    }
  }
  std::vector<std::vector<std::string>> kept_conjunctions;
  for (const auto& c : theory.conjunctions()) {
    if (in_untouched(c.basics())) kept_conjunctions.push_back(c.basics());
  }

  TrivializationMap map;
  std::vector<BasicSpec> new_basics;
  std::vector<TableEntry> tables;
  std::vector<MeasurementId> views;

  for (std::size_t k = 0; k < chosen.size(); ++k) {
    const std::vector<std::string> members(chosen[k].begin(), chosen[k].end());
    const auto conj = MeasurementId::conjunction(members);
    const std::string label = hyperedge_label(members, k, taken);
    taken.insert(label);
    map.new_basics[conj.key()] = label;

    bool wide = false;
    for (const auto& m : members) wide = wide || theory.basic(m).outcomes.size() > 10;
    std::unordered_map<std::string, std::string> to_flat;
    std::vector<std::string> flat_outcomes;
    auto& bijection = map.outcome_bijections[label];
    for (const auto& o : theory.outcomes(conj)) {
      const auto parts = split_outcome(o);
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& outs = theory.basic(members[i]).outcomes;
        idx.push_back(static_cast<std::size_t>(std::find(outs.begin(), outs.end(), parts[i]) - outs.begin()));
      }
      auto flat = flat_label(idx, wide);
      to_flat.emplace(o, flat);
      flat_outcomes.push_back(flat);
      bijection.emplace_back(o, std::move(flat));
    }
    new_basics.push_back({label, flat_outcomes});

    const auto new_basic = MeasurementId::basic(label);
    for (const auto& p : theory.preparations()) {
      const auto& joint = theory.table(conj, p);
      std::vector<Distribution::Entry> entries;
      for (std::size_t i = 0; i < joint.size(); ++i) {
        entries.emplace_back(to_flat.at(joint.support()[i]), joint.mass_at(i));
      }
      tables.push_back({new_basic, p, Distribution(std::move(entries))});
    }

    // Conjunction itself: the inverse bijection as singleton blocks.
    std::vector<MeasurementId::Block> id_blocks;
    for (const auto& [tuple, flat] : bijection) id_blocks.push_back({tuple, {flat}});
    map.marginal_views[conj.key()].push_back(MeasurementId::coarse_graining(new_basic, std::move(id_blocks), "id"));

    // Marginal views onto each strict sub-measurement of the context,
    // carried over from the old conjunction to the new basic.
    std::vector<MeasurementId> subs;
    for (const auto& v : derived_views(theory)) {
      if (v.base() == conj) subs.push_back(v);
    }
    for (const auto& sub : subs) {
      std::vector<MeasurementId::Block> blocks;
      for (const auto& b : sub.blocks()) {
        MeasurementId::Block nb{b.label, {}};
        for (const auto& o : b.outcomes) nb.outcomes.push_back(to_flat.at(o));
        blocks.push_back(std::move(nb));
      }
      auto view = MeasurementId::coarse_graining(new_basic, std::move(blocks), sub.tag());
      map.marginal_views[marginal_target(sub).key()].push_back(view);
      views.push_back(std::move(view));
    }
  }

  for (const auto& b : kept_basics) {
    const auto m = MeasurementId::basic(b.label);
    auto& slot = map.marginal_views[m.key()];
    slot.insert(slot.begin(), m);
    for (const auto& p : theory.preparations()) tables.push_back({m, p, theory.table(m, p)});
  }
  for (const auto& c : kept_conjunctions) {
    const auto m = MeasurementId::conjunction(c);
    auto& slot = map.marginal_views[m.key()];
    slot.insert(slot.begin(), m);
    for (const auto& p : theory.preparations()) tables.push_back({m, p, theory.table(m, p)});
  }
  // Kept measurement first, then views ordered by the key of their context.
  std::unordered_map<std::string, std::string> context_of;
  for (const auto& [ctx_key, label] : map.new_basics) context_of.emplace(label, ctx_key);
  for (auto& [key, candidates] : map.marginal_views) {
    std::stable_sort(candidates.begin(), candidates.end(), [&](const MeasurementId& a, const MeasurementId& b) {
      if (!a.is_coarse_graining() || !b.is_coarse_graining()) return !a.is_coarse_graining() && b.is_coarse_graining();
      return context_of.at(a.base().key()) < context_of.at(b.base().key());
    });
  }

  new_basics.insert(new_basics.end(), kept_basics.begin(), kept_basics.end());
  OperationalTheory out(theory.name() + "-trivial", std::move(new_basics), std::move(kept_conjunctions),
                        theory.preparations(), std::move(tables), std::move(views));
  return {std::move(out), std::move(map)};
}

const std::vector<MeasurementId>& marginal_view(const TrivializationMap& map, const MeasurementId& old_measurement) {
  auto it = map.marginal_views.find(old_measurement.key());
  if (it == map.marginal_views.end() || it->second.empty()) {
    throw LookupError("trivialization map does not cover " + old_measurement.key());
  }
  return it->second;
}

TheoryEquivalenceReport verify_theory_equivalence(const OperationalTheory& old_theory,
                                                  const OperationalTheory& new_theory, const TrivializationMap& map) {
  TheoryEquivalenceReport report;
  std::vector<std::pair<std::string, std::string>> preps;
  const auto& po = old_theory.preparations();
  const auto& pn = new_theory.preparations();
  if (std::set<std::string>(po.begin(), po.end()) == std::set<std::string>(pn.begin(), pn.end())) {
    for (const auto& p : po) preps.emplace_back(p, p);
  } else if (po.size() == pn.size()) {
    report.preparations_paired_by_order = true;
    for (std::size_t i = 0; i < po.size(); ++i) preps.emplace_back(po[i], pn[i]);
  } else {
    throw PreconditionError("preparation sets of '" + old_theory.name() + "' and '" + new_theory.name() +
                            "' cannot be paired");
  }

  std::vector<std::string> unmapped;
  for (const auto& m : old_theory.members()) {
    auto it = map.marginal_views.find(m.key());
    if (it == map.marginal_views.end() || it->second.empty()) unmapped.push_back(m.key());
  }
  if (!unmapped.empty()) {
    std::string list;
    for (const auto& u : unmapped) list += (list.empty() ? "" : ", ") + u;
    throw PreconditionError("trivialization map does not cover: " + list);
  }

  for (const auto& m : old_theory.members()) {
    const auto old_outcomes = old_theory.outcomes(m);
    for (const auto& view : map.marginal_views.at(m.key())) {
      const auto new_outcomes = new_theory.outcomes(view);
      if (new_outcomes.size() != old_outcomes.size()) {
        report.equivalent = false;
        report.mismatches.push_back(m.key() + " vs " + view.key() + ": outcome counts differ");
        continue;
      }
      const bool same_labels = std::is_permutation(old_outcomes.begin(), old_outcomes.end(), new_outcomes.begin());
      for (const auto& [p_old, p_new] : preps) {
        const auto& d_old = old_theory.table(m, p_old);
        const auto d_new = new_theory.distribution(view, p_new);
        for (std::size_t i = 0; i < old_outcomes.size(); ++i) {
          const auto& o = old_outcomes[i];
          const auto& a = d_old.mass(o);
          const auto& b = same_labels ? d_new.mass(o) : d_new.mass_at(i);
          if (a != b) {
            report.equivalent = false;
            report.mismatches.push_back(m.key() + " vs " + view.key() + " under " + p_old + "/" + p_new + " at " + o +
                                        ": " + a.str() + " != " + b.str());
          }
        }
      }
    }
  }
  return report;
}

Hypergraph annotate_trivialized(const OperationalTheory& trivial, const TrivializationMap& map) {
  std::vector<std::string> vertices;
  for (const auto& b : trivial.basics()) vertices.push_back(b.label);
  std::vector<std::pair<std::string, std::vector<std::string>>> replaced;
  for (const auto& v : vertices) {
    for (const auto& [ctx_key, label] : map.new_basics) {
      if (label == v) replaced.emplace_back(label, MeasurementId::parse(ctx_key).basics());
    }
  }
  std::vector<std::vector<std::string>> edges;
  for (std::size_t i = 0; i < replaced.size(); ++i) {
    for (std::size_t j = i + 1; j < replaced.size(); ++j) {
      const auto& a = replaced[i].second;
      const auto& b = replaced[j].second;
      const bool shared = std::any_of(a.begin(), a.end(), [&](const std::string& x) {
        return std::find(b.begin(), b.end(), x) != b.end();
      });
      if (shared) edges.push_back({replaced[i].first, replaced[j].first});
    }
  }
  return Hypergraph(std::move(vertices), std::move(edges), EdgeStyle::SharedMarginal, trivial.name());
}

}  // namespace opthy
