// One line per acceptance criterion; exit status is the number of failures.
#include "opthy/bell.hpp"
#include "opthy/causal/discovery.hpp"
#include "opthy/causal/faithfulness.hpp"
#include "opthy/causal/scenarios.hpp"
#include "opthy/errors.hpp"
#include "opthy/hypergraph.hpp"
#include "opthy/models.hpp"
#include "opthy/quantum.hpp"
#include "opthy/theories.hpp"
#include "opthy/trivializer.hpp"

#include <boost/integer/common_factor.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

using namespace opthy;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

int run(int id, double budget_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_seconds) o.require(false, "took longer than " + std::to_string(budget_seconds) + " s");
  std::printf("criterion %2d: %s (%.3f s)%s%s\n", id, o.pass ? "PASS" : "FAIL", secs, o.detail.empty() ? "" : "  ",
              o.detail.c_str());
  std::fflush(stdout);
  return o.pass ? 0 : 1;
}

std::vector<OperationalTheory> scenario_theories() {
  return {classical_theory(), epr_theory(), pr_theory(), classical_trivial(), epr_trivial(), pr_trivial()};
}

std::vector<OntologicalModel> scenario_models() {
  return {classical_model(), epr_model(), pr_model(), classical_trivial_model(), epr_trivial_model(),
          pr_trivial_model()};
}

std::string join(const CiSet& s) {
  std::string out;
  for (const auto& c : s) out += (out.empty() ? "" : ", ") + c.str();
  return out;
}

Outcome chsh_values() {
  Outcome o;
  const std::vector<std::tuple<OperationalTheory, Rational, ChshClass>> cases{
      {classical_theory(), Rational(2), ChshClass::Classical},
      {epr_theory(), rat(5, 2), ChshClass::Quantum},
      {pr_theory(), Rational(4), ChshClass::SuperQuantum}};
  for (const auto& [t, value, klass] : cases) {
    const auto r = chsh(t);
    o.require(r.value == value && r.klass == klass,
              t.name() + " gives " + r.value.str() + " " + to_string(r.klass) + ", expected " + value.str() + " " +
                  to_string(klass));
  }
  return o;
}

Outcome recovery() {
  Outcome o;
  const auto theories = scenario_theories();
  const auto models = scenario_models();
  for (std::size_t i = 0; i < models.size(); ++i) {
    o.require(recover_operational(models[i]) == theories[i], models[i].name() + " does not recover its theory");
  }
  return o;
}

Outcome non_disturbance() {
  Outcome o;
  for (const auto& t : scenario_theories()) {
    const auto r = is_non_disturbing(t);
    o.require(r.non_disturbing && r.violations.empty(), t.name() + " disturbs");
  }
  return o;
}

bool has_measurement_witness(const MeasurementReport& r, const std::string& a, const std::string& b) {
  return std::any_of(r.witnesses.begin(), r.witnesses.end(), [&](const MeasurementWitness& w) {
    return (w.first.key() == a && w.second.key() == b) || (w.first.key() == b && w.second.key() == a);
  });
}

Outcome contextuality() {
  Outcome o;
  const auto cl = classical_model();
  o.require(is_simultaneously_noncontextual(cl).noncontextual, "classical is simultaneously contextual");
  o.require(is_measurement_noncontextual(cl).noncontextual, "classical is measurement contextual");
  for (const auto& m : {epr_model(), pr_model()}) {
    const auto s = is_simultaneously_noncontextual(m);
    const bool witness = std::any_of(s.witnesses.begin(), s.witnesses.end(), [](const SimultaneousWitness& w) {
      return w.measurement.key() == "B1" && w.conjunction.key() == "A1&B1";
    });
    o.require(!s.noncontextual && witness, m.name() + " lacks the (B1, A1&B1) witness");
    o.require(!is_measurement_noncontextual(m).noncontextual, m.name() + " is measurement noncontextual");
  }
  for (const auto& m : {classical_trivial_model(), epr_trivial_model(), pr_trivial_model()}) {
    o.require(is_simultaneously_noncontextual(m).noncontextual, m.name() + " is simultaneously contextual");
  }
  o.require(is_measurement_noncontextual(classical_trivial_model()).noncontextual,
            "classical-trivial is measurement contextual");
  for (const auto& m : {epr_trivial_model(), pr_trivial_model()}) {
    const auto r = is_measurement_noncontextual(m);
    o.require(!r.noncontextual && has_measurement_witness(r, "C01^(2)", "C11^(2)"),
              m.name() + " lacks the (C01^(2), C11^(2)) witness");
  }
  return o;
}

Outcome graph_counts() {
  Outcome o;
  const auto ghz = line_graph(ghz_graph());
  o.require(ghz.vertices().size() == 5 && ghz.hyperedges().size() == 10, "ghz line graph is not 5/10");
  const auto pm = line_graph(peres_mermin_graph());
  o.require(pm.vertices().size() == 6 && pm.hyperedges().size() == 9, "peres-mermin line graph is not 6/9");
  const auto tr = trivialize(mini_theory());
  const auto g = annotate_trivialized(tr.theory, tr.map);
  o.require(g.hyperedges() == std::vector<std::vector<std::string>>{{"M123", "M14"}},
            "mini annotation is not the single edge M123-M14");
  return o;
}

Outcome trivialization() {
  Outcome o;
  const std::vector<std::pair<OperationalTheory, std::optional<OperationalTheory>>> cases{
      {classical_theory(), classical_trivial()},
      {epr_theory(), epr_trivial()},
      {pr_theory(), pr_trivial()},
      {mini_theory(), std::nullopt}};
  for (const auto& [t, expected] : cases) {
    const auto tr = trivialize(t);
    o.require(verify_theory_equivalence(t, tr.theory, tr.map).equivalent, t.name() + " is not equivalent");
    if (expected) o.require(tr.theory == *expected, t.name() + " trivializes to a different theory");
  }
  return o;
}

Outcome ci_lists() {
  Outcome o;
  for (const auto& m : {classical_model(), epr_model(), pr_model()}) {
    const auto joint = joint_from_model(m);
    const auto report = ci_report(joint);
    for (int k = 1; k <= 5; ++k) o.require(report.count(bell_ci(k)), m.name() + " misses CI" + std::to_string(k));
    for (const auto& s : exogenous_family(joint.space())) o.require(report.count(s), m.name() + " misses " + s.str());
    const bool want6 = m.name() == "classical";
    o.require(report.count(bell_ci(6)) == (want6 ? 1u : 0u), m.name() + (want6 ? " misses CI6" : " has CI6"));
  }
  for (const auto& m : {classical_trivial_model(), epr_trivial_model(), pr_trivial_model()}) {
    const auto joint = joint_from_model(m);
    const auto report = ci_report(joint);
    const auto family = exogenous_family(joint.space());
    CiSet missing, extra;
    std::set_difference(family.begin(), family.end(), report.begin(), report.end(), std::inserter(missing, missing.end()));
    std::set_difference(report.begin(), report.end(), family.begin(), family.end(), std::inserter(extra, extra.end()));
    o.require(missing.empty(), m.name() + " misses " + join(missing));
    o.require(extra.empty(), m.name() + " also has " + join(extra));
  }
  return o;
}

bool contains(const std::vector<Dag>& dags, const Dag& d) { return std::find(dags.begin(), dags.end(), d) != dags.end(); }

Outcome minimal_graphs() {
  Outcome o;
  for (const auto& m : scenario_models()) {
    const auto sc = scenario_of(m);
    const Dag expected = sc.kind == ScenarioKind::Trivial ? trivial_dag(sc.space)
                         : m.name() == "classical"        ? local_dag(sc.space)
                                                          : signalling_dag(sc.space);
    const auto observed = generic_observed(sc);
    try {
      o.require(contains(minimal_dags(observed, sc.required, sc.space), expected),
                m.name() + ": expected graph is not among the minimal DAGs");
    } catch (const PreconditionError&) {
      CiSet unimplied;
      const auto implied = markov_implied(expected, sc.space);
      for (const auto& s : sc.required) {
        if (!implied.count(s)) unimplied.insert(s);
      }
      o.require(false, m.name() + ": required statements not implied by the expected graph: " + join(unimplied));
    }
  }
  return o;
}

Outcome fine_tuning() {
  Outcome o;
  constexpr std::size_t kTrials = 200;
  constexpr std::uint64_t kSeed = 20240607;
  for (const auto& m : scenario_models()) {
    const auto sc = scenario_of(m);
    const auto r = faithfulness_probe(sc.factorization, sc.space, sc.reference, kTrials, kSeed);
    if (m.name() == "classical" || sc.kind == ScenarioKind::Trivial) {
      std::size_t failures = 0;
      for (const auto& rate : r.rates) failures += rate.failures;
      o.require(r.verdict == Faithfulness::Faithful && failures == 0, m.name() + " is not faithful");
      continue;
    }
    o.require(r.verdict == Faithfulness::FineTuned, m.name() + " is not fine-tuned");
    for (const auto& rate : r.rates) {
      const bool generic = rate.statement == bell_ci(2) || rate.statement == bell_ci(4) || rate.statement == bell_ci(6);
      if (generic) o.require(rate.rate > 0.9, m.name() + ": " + rate.statement.str() + " fails too rarely");
    }
  }
  return o;
}

Outcome quantum() {
  Outcome o;
  const auto r = verify_epr_realization();
  std::size_t compared = 0;
  for (const auto& c : r.cells) {
    if (c.label.rfind("C", 0) == 0) continue;
    ++compared;
    o.require(c.deviation <= 1e-9, c.label + " deviates by " + std::to_string(c.deviation));
  }
  o.require(compared == 24, "compared " + std::to_string(compared) + " two-party cells");
  o.require(r.max_completeness_error <= 1e-12, "completeness error too large");
  o.require(r.pass, "realization check failed");
  return o;
}

Outcome properties() {
  Outcome o;
  std::mt19937_64 rng(99);

  std::uniform_int_distribution<std::int64_t> num(-100000, 100000), den(1, 100000);
  bool reduced = true;
  for (int i = 0; i < 1000; ++i) {
    const auto n = num(rng), d = den(rng);
    const auto r = rat(n, d);
    reduced &= r.den() > 0 && boost::integer::gcd(boost::multiprecision::abs(r.num()), r.den()) == 1 &&
               Rational::Integer(n) * r.den() == r.num() * Rational::Integer(d);
  }
  o.require(reduced, "rational normalization");

  bool normalized = true;
  std::uniform_int_distribution<std::int64_t> w(1, 1000);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::int64_t> ws(static_cast<std::size_t>(1 + i % 7));
    std::int64_t total = 0;
    for (auto& x : ws) total += x = w(rng);
    std::vector<Distribution::Entry> e;
    for (std::size_t j = 0; j < ws.size(); ++j) e.emplace_back("o" + std::to_string(j), rat(ws[j], total));
    Rational sum;
    const Distribution d(e);
    for (const auto& m : d.masses()) sum += m;
    normalized &= sum == Rational(1);
    e.front().second += rat(1, total + 1);
    try {
      Distribution bad(e);
      normalized = false;
    } catch (const ValidationError&) {
    }
  }
  o.require(normalized, "distribution normalization");

  bool equivalence = true;
  std::uniform_int_distribution<int> grid(0, 2);
  for (int round = 0; round < 20; ++round) {
    std::vector<BasicSpec> basics;
    std::vector<TableEntry> tables;
    for (int i = 0; i < 6; ++i) {
      const auto label = "M" + std::to_string(i);
      basics.push_back({label, {"0", "1"}});
      for (const auto* p : {"P", "Q"}) {
        const auto a = grid(rng);
        tables.push_back({MeasurementId::basic(label), p, dist({{"0", rat(a, 2)}, {"1", rat(2 - a, 2)}})});
      }
    }
    const OperationalTheory t("r", basics, {}, {"P", "Q"}, tables);
    bool eq[6][6];
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        eq[i][j] = are_operationally_equivalent(t, MeasurementId::basic("M" + std::to_string(i)),
                                                MeasurementId::basic("M" + std::to_string(j)));
      }
    }
    for (int i = 0; i < 6; ++i) {
      equivalence &= eq[i][i];
      for (int j = 0; j < 6; ++j) {
        equivalence &= eq[i][j] == eq[j][i];
        for (int k = 0; k < 6; ++k) equivalence &= !(eq[i][j] && eq[j][k]) || eq[i][k];
      }
    }
  }
  o.require(equivalence, "operational equivalence");

  bool markov = true;
  std::uniform_int_distribution<std::size_t> size(3, 5);
  std::uniform_int_distribution<int> card(2, 3);
  std::bernoulli_distribution coin(0.4);
  for (int round = 0; round < 100; ++round) {
    const auto n = size(rng);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (coin(rng)) mask |= std::uint64_t{1} << (order[i] * Dag::kMaxNodes + order[j]);
      }
    }
    std::vector<Variable> vars;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
      Variable v{"V" + std::to_string(i), {}};
      for (int k = card(rng); k > 0; --k) v.values.push_back(std::to_string(k));
      names.push_back(v.name);
      vars.push_back(v);
    }
    const VariableSpace space(vars);
    const Dag dag(names, mask);
    const auto holds = ci_report(generic_joint(dag, space, rng()));
    for (const auto& s : markov_implied(dag, space)) markov &= holds.count(s) > 0;
  }
  o.require(markov, "markov soundness");

  bool lines = true;
  for (int round = 0; round < 100; ++round) {
    const int n = std::uniform_int_distribution<int>(2, 8)(rng);
    std::vector<std::string> vertices;
    for (int i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
    std::set<std::vector<std::string>> edges;
    const int target = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int e = 0; e < target; ++e) {
      std::vector<std::string> members;
      for (const auto& v : vertices) {
        if (coin(rng)) members.push_back(v);
      }
      if (members.size() >= 2) edges.insert(members);
    }
    const std::vector<std::vector<std::string>> list(edges.begin(), edges.end());
    lines &= line_graph(Hypergraph(vertices, list, EdgeStyle::Compatibility)).vertices().size() == list.size();
  }
  o.require(lines, "line-graph vertex count");
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  failures += run(1, 1, chsh_values);
  failures += run(2, 1, recovery);
  failures += run(3, 1, non_disturbance);
  failures += run(4, 1e9, contextuality);
  failures += run(5, 1, graph_counts);
  failures += run(6, 1e9, trivialization);
  failures += run(7, 10, ci_lists);
  failures += run(8, 60, minimal_graphs);
  failures += run(9, 30, fine_tuning);
  failures += run(10, 1, quantum);
  failures += run(11, 1e9, properties);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
