#include "opthy/causal/scenarios.hpp"

#include "opthy/errors.hpp"

#include <random>

namespace opthy {

CiStatement bell_ci(int k) {
  switch (k) {
    case 1: return CiStatement::make("X", {"B"}, {"A"});
    case 2: return CiStatement::make("Y", {"A"}, {"B"});
    case 3: return CiStatement::make("X", {"Y"}, {"A", "L"});
    case 4: return CiStatement::make("Y", {"X"}, {"B", "L"});
    case 5: return CiStatement::make("X", {"B"}, {"A", "L"});
    case 6: return CiStatement::make("Y", {"A"}, {"B", "L"});
  }
  throw LookupError("no statement CI" + std::to_string(k));
}

CiSet bell_cis(int first, int last) {
  CiSet out;
  for (int k = first; k <= last; ++k) out.insert(bell_ci(k));
  return out;
}

CiSet exogenous_family(const VariableSpace& space) {
  if (space.contains("C")) return independence_family(space, {"C", "L"});
  return independence_family(space, {"A", "B", "L"});
}

namespace {

std::vector<std::string> node_names(const VariableSpace& space) {
  std::vector<std::string> out;
  for (const auto& v : space.variables()) out.push_back(v.name);
  return out;
}

}  // namespace

Dag local_dag(const VariableSpace& space) {
  return Dag(node_names(space), {{"A", "X"}, {"L", "X"}, {"L", "Y"}, {"B", "Y"}});
}

Dag signalling_dag(const VariableSpace& space) {
  return Dag(node_names(space), {{"A", "X"}, {"L", "X"}, {"L", "Y"}, {"B", "Y"}, {"A", "Y"}});
}

Dag trivial_dag(const VariableSpace& space) { return Dag(node_names(space), {{"C", "Z"}, {"L", "Z"}}); }

ExactJoint generic_joint(const Dag& dag, const VariableSpace& space, std::uint64_t seed) {
  if (dag.nodes() != node_names(space)) throw ValidationError("DAG node order differs from the space");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> weight(1, 1000);
  const std::size_t n = space.size();
  std::vector<std::vector<Rational>> cpt(n);
  std::vector<std::vector<std::size_t>> parents(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t configs = 1;
    for (std::size_t u = 0; u < n; ++u) {
      if (dag.parents(v) >> u & 1u) {
        parents[v].push_back(u);
        configs *= space.at(u).values.size();
      }
    }
    const std::size_t k = space.at(v).values.size();
    for (std::size_t c = 0; c < configs; ++c) {
      std::vector<std::int64_t> w(k);
      std::int64_t total = 0;
      for (auto& x : w) total += x = weight(rng);
      for (auto x : w) cpt[v].push_back(rat(x, total));
    }
  }
  std::vector<Rational> mass(space.cell_count());
  for (std::size_t cell = 0; cell < mass.size(); ++cell) {
    const auto a = space.assignment(cell);
    Rational m(1);
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t c = 0;
      for (auto u : parents[v]) c = c * space.at(u).values.size() + a[u];
      m *= cpt[v][c * space.at(v).values.size() + a[v]];
    }
    mass[cell] = std::move(m);
  }
  return ExactJoint(space, std::move(mass));
}

CausalScenario scenario_of(const OntologicalModel& model) {
  CausalScenario s;
  s.name = model.name();
  s.space = scenario_space(model);
  if (model.theory().is_trivial()) {
    s.kind = ScenarioKind::Trivial;
    s.factorization = trivial_dag(s.space);
    s.required = exogenous_family(s.space);
    s.reference = s.required;
    return s;
  }
  const auto report = ci_report(joint_from_model(model));
  s.kind = report.count(bell_ci(6)) ? ScenarioKind::Local : ScenarioKind::Signalling;
  s.factorization = s.kind == ScenarioKind::Local ? local_dag(s.space) : signalling_dag(s.space);
  s.required = bell_cis(1, s.kind == ScenarioKind::Local ? 6 : 5);
  const auto exo = exogenous_family(s.space);
  s.required.insert(exo.begin(), exo.end());
  s.reference = bell_cis(1, 6);
  return s;
}

CiSet generic_observed(const CausalScenario& scenario, std::uint64_t seed) {
  return ci_report(generic_joint(scenario.factorization, scenario.space, seed));
}

}  // namespace opthy
