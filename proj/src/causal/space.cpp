#include "opthy/causal/space.hpp"

#include "opthy/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace opthy {

VariableSpace::VariableSpace(std::vector<Variable> variables) : vars_(std::move(variables)) {
  if (vars_.size() > 16) throw ValidationError("at most 16 variables are supported");
  std::set<std::string> names;
  for (const auto& v : vars_) {
    if (v.name.empty()) throw ValidationError("variable with empty name");
    if (!names.insert(v.name).second) throw ValidationError("duplicate variable '" + v.name + "'");
    if (v.values.empty()) throw ValidationError("variable '" + v.name + "' has no values");
    std::set<std::string> vals(v.values.begin(), v.values.end());
    if (vals.size() != v.values.size()) throw ValidationError("variable '" + v.name + "' repeats a value");
  }
  strides_.assign(vars_.size(), 1);
  for (std::size_t i = vars_.size(); i-- > 0;) {
    strides_[i] = cells_;
    cells_ *= vars_[i].values.size();
  }
}

std::size_t VariableSpace::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == name) return i;
  }
  throw LookupError("unknown variable '" + name + "'");
}

bool VariableSpace::contains(const std::string& name) const {
  return std::any_of(vars_.begin(), vars_.end(), [&](const Variable& v) { return v.name == name; });
}

std::size_t VariableSpace::index(const std::vector<std::size_t>& assignment) const {
  if (assignment.size() != vars_.size()) throw ValidationError("assignment has the wrong length");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (assignment[i] >= vars_[i].values.size()) throw ValidationError("value out of range for " + vars_[i].name);
    idx += assignment[i] * strides_[i];
  }
  return idx;
}

std::vector<std::size_t> VariableSpace::assignment(std::size_t index) const {
  std::vector<std::size_t> out(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    out[i] = (index / strides_[i]) % vars_[i].values.size();
  }
  return out;
}

std::uint32_t VariableSpace::mask_of(const std::vector<std::string>& names) const {
  std::uint32_t m = 0;
  for (const auto& n : names) m |= 1u << index_of(n);
  return m;
}

std::vector<std::string> VariableSpace::names_of(std::uint32_t mask) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (mask >> i & 1u) out.push_back(vars_[i].name);
  }
  return out;
}

namespace {

bool is_negative(const Rational& r) { return r.sign() < 0; }
bool is_negative(double d) { return d < 0.0; }
bool is_unit(const Rational& r) { return r == Rational(1); }
bool is_unit(double d) { return std::abs(d - 1.0) <= 1e-9; }

}  // namespace

template <class T>
JointTable<T>::JointTable(VariableSpace space, std::vector<T> mass) : space_(std::move(space)), mass_(std::move(mass)) {
  if (mass_.size() != space_.cell_count()) throw ValidationError("joint table size does not match its space");
  T total{};
  for (const auto& m : mass_) {
    if (is_negative(m)) throw ValidationError("joint table has a negative cell");
    total += m;
  }
  if (!is_unit(total)) throw ValidationError("joint table does not sum to 1");
}

template <class T>
T JointTable<T>::probability(const std::map<std::string, std::string>& assignment) const {
  std::uint32_t mask = 0;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < space_.size(); ++i) {
    const auto& var = space_.at(i);
    auto it = assignment.find(var.name);
    if (it == assignment.end()) continue;
    auto pos = std::find(var.values.begin(), var.values.end(), it->second);
    if (pos == var.values.end()) throw LookupError("'" + it->second + "' is not a value of " + var.name);
    mask |= 1u << i;
    idx.push_back(static_cast<std::size_t>(pos - var.values.begin()));
  }
  if (idx.size() != assignment.size()) throw LookupError("assignment names an unknown variable");
  std::size_t flat = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < space_.size(); ++i) {
    if (mask >> i & 1u) flat = flat * space_.at(i).values.size() + idx[k++];
  }
  return marginal(mask)[flat];
}

template <class T>
std::vector<T> JointTable<T>::marginal(std::uint32_t mask) const {
  const std::size_t n = space_.size();
  std::vector<std::size_t> sub_stride(n, 0);
  std::size_t size = 1;
  for (std::size_t i = n; i-- > 0;) {
    if (mask >> i & 1u) {
      sub_stride[i] = size;
      size *= space_.at(i).values.size();
    }
  }
  std::vector<T> out(size);
  std::vector<std::size_t> digit(n, 0);
  for (std::size_t cell = 0; cell < mass_.size(); ++cell) {
    std::size_t sub = 0;
    for (std::size_t i = 0; i < n; ++i) sub += digit[i] * sub_stride[i];
    out[sub] += mass_[cell];
    for (std::size_t i = n; i-- > 0;) {
      if (++digit[i] < space_.at(i).values.size()) break;
      digit[i] = 0;
    }
  }
  return out;
}

template class JointTable<Rational>;
template class JointTable<double>;

namespace {

struct Parties {
  std::vector<std::string> first;
  std::vector<std::string> second;
};

// Two-coloring of the compatibility graph; the party of the first basic is A.
Parties split_parties(const OperationalTheory& t) {
  const auto ctxs = contexts(t);
  std::map<std::string, int> side;
  const auto& basics = t.basics();
  for (const auto& c : ctxs) {
    if (c.size() != 2) throw PreconditionError("'" + t.name() + "' is not a two-party theory: context of size " +
                                               std::to_string(c.size()));
  }
  for (const auto& b : basics) {
    if (side.count(b.label)) continue;
    side[b.label] = 0;
    std::vector<std::string> stack{b.label};
    while (!stack.empty()) {
      const auto cur = stack.back();
      stack.pop_back();
      for (const auto& c : ctxs) {
        if (!c.count(cur)) continue;
        for (const auto& other : c) {
          if (other == cur) continue;
          auto it = side.find(other);
          if (it == side.end()) {
            side[other] = 1 - side[cur];
            stack.push_back(other);
          } else if (it->second == side[cur]) {
            throw PreconditionError("'" + t.name() + "' is not a two-party theory");
          }
        }
      }
    }
  }
  Parties p;
  for (const auto& b : basics) (side[b.label] == 0 ? p.first : p.second).push_back(b.label);
  if (p.first.empty() || p.second.empty()) throw PreconditionError("'" + t.name() + "' is not a two-party theory");
  for (const auto& a : p.first) {
    for (const auto& b : p.second) {
      if (!t.is_member(MeasurementId::conjunction({a, b}))) {
        throw PreconditionError("'" + t.name() + "' lacks the conjunction " + a + "&" + b);
      }
    }
  }
  return p;
}

const std::vector<std::string>& shared_outcomes(const OperationalTheory& t, const std::vector<std::string>& party) {
  const auto& first = t.basic(party.front()).outcomes;
  for (const auto& b : party) {
    if (t.basic(b).outcomes != first) {
      throw PreconditionError("basics " + party.front() + " and " + b + " have different outcome labels");
    }
  }
  return first;
}

Distribution choice_prior(const MeasurementPriors& priors, const std::string& var, const std::vector<std::string>& values) {
  auto it = priors.find(var);
  if (it == priors.end()) return Distribution::uniform(values);
  std::vector<Distribution::Entry> entries;
  for (const auto& label : it->second.support()) {
    if (std::find(values.begin(), values.end(), label) == values.end()) {
      throw ValidationError("prior for " + var + " names unknown value '" + label + "'");
    }
  }
  for (const auto& v : values) entries.emplace_back(v, it->second.contains(v) ? it->second.mass(v) : Rational(0));
  return Distribution(std::move(entries));
}

std::string pick_preparation(const OperationalTheory& t, const std::optional<std::string>& preparation) {
  if (preparation) {
    if (!t.has_preparation(*preparation)) throw LookupError("unknown preparation '" + *preparation + "'");
    return *preparation;
  }
  if (t.preparations().size() != 1) throw PreconditionError("'" + t.name() + "' has several preparations, name one");
  return t.preparations().front();
}

}  // namespace

VariableSpace scenario_space(const OntologicalModel& model) {
  const auto& t = model.theory();
  if (t.is_trivial()) {
    std::vector<std::string> labels;
    for (const auto& b : t.basics()) labels.push_back(b.label);
    return VariableSpace({{"C", labels}, {"Z", shared_outcomes(t, labels)}, {"L", model.ontic_states()}});
  }
  const auto parties = split_parties(t);
  return VariableSpace({{"A", parties.first},
                        {"B", parties.second},
                        {"X", shared_outcomes(t, parties.first)},
                        {"Y", shared_outcomes(t, parties.second)},
                        {"L", model.ontic_states()}});
}

ExactJoint joint_from_model(const OntologicalModel& model, const MeasurementPriors& priors,
                            const std::optional<std::string>& preparation) {
  const auto& t = model.theory();
  const auto space = scenario_space(model);
  const auto prep = pick_preparation(t, preparation);
  const auto& lambda = model.prior(prep);
  for (const auto& [name, d] : priors) {
    if (name != "A" && name != "B" && name != "C") throw ValidationError("no measurement-choice variable '" + name + "'");
    if (!space.contains(name)) throw ValidationError("variable '" + name + "' is not in this scenario");
  }
  std::vector<Rational> mass(space.cell_count());

  if (t.is_trivial()) {
    const auto& cs = space.at(0).values;
    const auto pc = choice_prior(priors, "C", cs);
    for (std::size_t c = 0; c < cs.size(); ++c) {
      for (std::size_t l = 0; l < model.ontic_states().size(); ++l) {
        const auto r = model.response(MeasurementId::basic(cs[c]), model.ontic_states()[l]);
        const auto w = pc.mass_at(c) * lambda.mass_at(l);
        for (std::size_t z = 0; z < r.size(); ++z) mass[space.index({c, z, l})] = r.mass_at(z) * w;
      }
    }
    return ExactJoint(space, std::move(mass));
  }

  const auto& as = space.at(0).values;
  const auto& bs = space.at(1).values;
  const auto pa = choice_prior(priors, "A", as);
  const auto pb = choice_prior(priors, "B", bs);
  const auto& xs = space.at(2).values;
  const auto& ys = space.at(3).values;
  for (std::size_t a = 0; a < as.size(); ++a) {
    for (std::size_t b = 0; b < bs.size(); ++b) {
      const auto conj = MeasurementId::conjunction({as[a], bs[b]});
      // Conjunction outcomes run over its members in sorted-label order.
      const bool a_first = conj.basics().front() == as[a];
      for (std::size_t l = 0; l < model.ontic_states().size(); ++l) {
        const auto r = model.response(conj, model.ontic_states()[l]);
        const auto w = pa.mass_at(a) * pb.mass_at(b) * lambda.mass_at(l);
        for (std::size_t x = 0; x < xs.size(); ++x) {
          for (std::size_t y = 0; y < ys.size(); ++y) {
            const auto label = a_first ? join_outcome({xs[x], ys[y]}) : join_outcome({ys[y], xs[x]});
            mass[space.index({a, b, x, y, l})] = r.mass(label) * w;
          }
        }
      }
    }
  }
  return ExactJoint(space, std::move(mass));
}

}  // namespace opthy
