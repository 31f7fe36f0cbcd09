#include "opthy/ontology.hpp"

#include "opthy/errors.hpp"

#include <algorithm>
#include <set>

namespace opthy {

namespace {

Distribution canonical(const std::vector<std::string>& support, const Distribution& d, const std::string& what) {
  for (const auto& label : d.support()) {
    if (std::find(support.begin(), support.end(), label) == support.end()) {
      throw ValidationError(what + ": unknown label '" + label + "'");
    }
  }
  std::vector<Distribution::Entry> entries;
  for (const auto& s : support) entries.emplace_back(s, d.contains(s) ? d.mass(s) : Rational(0));
  return Distribution(std::move(entries));
}

}  // namespace

OntologicalModel::OntologicalModel(std::string name, std::shared_ptr<const OperationalTheory> theory,
                                   std::vector<std::string> ontic_states, std::map<std::string, Distribution> priors,
                                   std::vector<ResponseEntry> responses)
    : name_(std::move(name)), theory_(std::move(theory)), states_(std::move(ontic_states)) {
  if (!theory_) throw ValidationError("model '" + name_ + "' has no theory");
  if (states_.empty()) throw ValidationError("model '" + name_ + "' has no ontic states");
  std::set<std::string> unique(states_.begin(), states_.end());
  if (unique.size() != states_.size()) throw ValidationError("model '" + name_ + "' repeats an ontic state");

  for (const auto& p : theory_->preparations()) {
    auto it = priors.find(p);
    if (it == priors.end()) throw ValidationError("model '" + name_ + "' has no prior for preparation '" + p + "'");
    priors_.emplace(p, canonical(states_, it->second, "prior for '" + p + "'"));
  }
  for (const auto& [p, d] : priors) {
    if (!theory_->has_preparation(p)) throw ValidationError("prior for unknown preparation '" + p + "'");
  }

  for (auto& r : responses) {
    if (!theory_->is_member(r.measurement)) {
      throw ValidationError("response for non-member measurement " + r.measurement.key());
    }
    if (!unique.count(r.state)) throw ValidationError("response at unknown ontic state '" + r.state + "'");
    auto key = std::make_pair(r.measurement.key(), r.state);
    if (responses_.count(key)) throw ValidationError("duplicate response for " + key.first + " at " + key.second);
    responses_.emplace(std::move(key), canonical(theory_->outcomes(r.measurement), r.dist,
                                                 "response of " + r.measurement.key() + " at " + r.state));
  }
  for (const auto& m : theory_->members()) {
    for (const auto& s : states_) {
      if (!responses_.count({m.key(), s})) {
        throw ValidationError("model '" + name_ + "' has no response for " + m.key() + " at state " + s);
      }
    }
  }
}

const Distribution& OntologicalModel::prior(const std::string& preparation) const {
  auto it = priors_.find(preparation);
  if (it == priors_.end()) throw LookupError("unknown preparation '" + preparation + "'");
  return it->second;
}

Distribution OntologicalModel::response(const MeasurementId& m, const std::string& state) const {
  if (!m.is_coarse_graining()) {
    auto it = responses_.find({m.key(), state});
    if (it == responses_.end()) throw LookupError("no response for " + m.key() + " at state '" + state + "'");
    return it->second;
  }
  (void)theory_->outcomes(m);  // validates the partition
  const auto base = response(m.base(), state);
  std::vector<Distribution::Entry> entries;
  for (const auto& block : m.blocks()) {
    Rational sum;
    for (const auto& o : block.outcomes) sum += base.mass(o);
    entries.emplace_back(block.label, std::move(sum));
  }
  return Distribution(std::move(entries));
}

OntologicalModel OntologicalModel::rebind(std::shared_ptr<const OperationalTheory> theory) const {
  std::vector<ResponseEntry> responses;
  for (const auto& [key, d] : responses_) responses.push_back({MeasurementId::parse(key.first), key.second, d});
  return OntologicalModel(name_, std::move(theory), states_, priors_, std::move(responses));
}

OperationalTheory recover_operational(const OntologicalModel& model) {
  const auto& t = model.theory();
  std::vector<TableEntry> tables;
  std::vector<std::vector<std::string>> conjunctions;
  for (const auto& c : t.conjunctions()) conjunctions.push_back(c.basics());
  for (const auto& m : t.members()) {
    const auto outs = t.outcomes(m);
    for (const auto& p : t.preparations()) {
      const auto& prior = model.prior(p);
      std::vector<Rational> mass(outs.size());
      for (const auto& s : model.ontic_states()) {
        const auto& weight = prior.mass(s);
        if (weight.is_zero()) continue;
        const auto r = model.response(m, s);
        for (std::size_t i = 0; i < outs.size(); ++i) mass[i] += r.mass_at(i) * weight;
      }
      std::vector<Distribution::Entry> entries;
      for (std::size_t i = 0; i < outs.size(); ++i) entries.emplace_back(outs[i], mass[i]);
      tables.push_back({m, p, Distribution(std::move(entries))});
    }
  }
  return OperationalTheory(t.name(), t.basics(), std::move(conjunctions), t.preparations(), std::move(tables),
                           t.views());
}

bool recovers_theory(const OntologicalModel& model) { return recover_operational(model) == model.theory(); }

bool is_outcome_deterministic(const OntologicalModel& model) {
  for (const auto& m : model.theory().members()) {
    for (const auto& s : model.ontic_states()) {
      const auto r = model.response(m, s);
      for (const auto& mass : r.masses()) {
        if (!mass.is_zero() && mass != Rational(1)) return false;
      }
    }
  }
  return true;
}

SimultaneousReport is_simultaneously_noncontextual(const OntologicalModel& model) {
  SimultaneousReport report;
  const auto& t = model.theory();
  for (const auto& view : derived_views(t)) {
    const auto target = marginal_target(view);
    for (const auto& s : model.ontic_states()) {
      if (model.response(view, s).masses() != model.response(target, s).masses()) {
        report.noncontextual = false;
        report.witnesses.push_back({target, view.base(), s});
      }
    }
  }
  return report;
}

std::vector<MeasurementId> equivalence_candidates(const OperationalTheory& theory) {
  std::vector<MeasurementId> out = theory.members();
  std::set<std::string> keys;
  for (const auto& m : out) keys.insert(m.key());
  for (const auto& group : {theory.views(), derived_views(theory)}) {
    for (const auto& v : group) {
      if (keys.insert(v.key()).second) out.push_back(v);
    }
  }
  return out;
}

MeasurementReport is_measurement_noncontextual(const OntologicalModel& model) {
  MeasurementReport report;
  const auto& t = model.theory();
  const auto candidates = equivalence_candidates(t);
  std::vector<std::size_t> cardinality;
  for (const auto& c : candidates) cardinality.push_back(t.outcomes(c).size());

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (cardinality[i] != cardinality[j]) continue;
      if (!are_operationally_equivalent(t, candidates[i], candidates[j])) continue;
      ++report.equivalent_pairs;
      for (const auto& s : model.ontic_states()) {
        if (model.response(candidates[i], s).masses() != model.response(candidates[j], s).masses()) {
          report.noncontextual = false;
          report.witnesses.push_back({candidates[i], candidates[j], s});
        }
      }
    }
  }
  return report;
}

}  // namespace opthy
