#include "opthy/bell.hpp"
#include "opthy/causal/discovery.hpp"
#include "opthy/causal/faithfulness.hpp"
#include "opthy/causal/scenarios.hpp"
#include "opthy/errors.hpp"
#include "opthy/hypergraph.hpp"
#include "opthy/json_io.hpp"
#include "opthy/models.hpp"
#include "opthy/quantum.hpp"
#include "opthy/theories.hpp"
#include "opthy/trivializer.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

using namespace opthy;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct Input {
  std::string builtin;
  std::string theory;
  std::string model;
};

struct Style {
  bool color = false;
  std::string bold(const std::string& s) const { return color ? "\033[1m" + s + "\033[0m" : s; }
  std::string verdict(bool good, const std::string& s) const {
    if (!color) return s;
    return (good ? "\033[32m" : "\033[31m") + s + "\033[0m";
  }
};

Style style_from_env() {
  const char* v = std::getenv("OPTHY_COLOR");
  return Style{v != nullptr && std::string(v) == "1"};
}

const std::map<std::string, std::function<OperationalTheory()>>& theory_builtins() {
  static const std::map<std::string, std::function<OperationalTheory()>> m{
      {"classical", classical_theory}, {"epr", epr_theory},
      {"pr", pr_theory},               {"classical-trivial", classical_trivial},
      {"epr-trivial", epr_trivial},    {"pr-trivial", pr_trivial},
      {"mini", mini_theory}};
  return m;
}

const std::map<std::string, std::function<OntologicalModel()>>& model_builtins() {
  static const std::map<std::string, std::function<OntologicalModel()>> m{
      {"classical", classical_model},         {"epr", epr_model},
      {"pr", pr_model},                       {"classical-trivial", classical_trivial_model},
      {"epr-trivial", epr_trivial_model},     {"pr-trivial", pr_trivial_model}};
  return m;
}

const std::map<std::string, std::function<Hypergraph()>>& graph_builtins() {
  static const std::map<std::string, std::function<Hypergraph()>> m{{"ghz", ghz_graph},
                                                                    {"peres-mermin", peres_mermin_graph}};
  return m;
}

bool known_builtin(const std::string& name) {
  return theory_builtins().count(name) || graph_builtins().count(name);
}

void require_one_source(const Input& in) {
  const int n = !in.builtin.empty() + !in.theory.empty() + !in.model.empty();
  if (n != 1) throw ValidationError("give exactly one of --builtin, --theory, --model");
  if (!in.builtin.empty() && !known_builtin(in.builtin)) throw ValidationError("unknown fixture '" + in.builtin + "'");
}

OperationalTheory load_theory(const Input& in) {
  require_one_source(in);
  if (!in.theory.empty()) return theory_from_json(read_json_file(in.theory));
  if (!in.model.empty()) return model_from_json(read_json_file(in.model)).theory();
  auto it = theory_builtins().find(in.builtin);
  if (it == theory_builtins().end()) throw ValidationError("fixture '" + in.builtin + "' is a graph, not a theory");
  return it->second();
}

// A model comes from --model, or from --builtin optionally re-attached to the
// theory given with --theory.
OntologicalModel load_model(const Input& in) {
  if (!in.model.empty()) {
    if (!in.builtin.empty() || !in.theory.empty()) throw ValidationError("--model excludes --builtin and --theory");
    return model_from_json(read_json_file(in.model));
  }
  if (in.builtin.empty()) throw ValidationError("model commands need --model or --builtin");
  auto it = model_builtins().find(in.builtin);
  if (it == model_builtins().end()) {
    if (!known_builtin(in.builtin)) throw ValidationError("unknown fixture '" + in.builtin + "'");
    throw ValidationError("fixture '" + in.builtin + "' has no ontological model");
  }
  auto model = it->second();
  if (!in.theory.empty()) {
    return model.rebind(std::make_shared<const OperationalTheory>(theory_from_json(read_json_file(in.theory))));
  }
  return model;
}

void add_input(CLI::App* cmd, Input& in, bool allow_model = true) {
  cmd->add_option("--builtin", in.builtin, "Built-in fixture");
  cmd->add_option("--theory", in.theory, "Theory JSON file");
  if (allow_model) cmd->add_option("--model", in.model, "Model JSON file");
}

void add_format(CLI::App* cmd, std::string& format, std::vector<std::string> allowed) {
  cmd->add_option("--format", format, "Output format")->check(CLI::IsMember(std::move(allowed)));
}

std::string join(const std::vector<std::string>& v, const std::string& sep = ",") {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

// ---------------------------------------------------------------- commands

int cmd_validate(const Input& in, const std::string& format, const Style& st) {
  require_one_source(in);
  Json out;
  if (!in.builtin.empty() && graph_builtins().count(in.builtin)) {
    const auto g = graph_builtins().at(in.builtin)();
    out = {{"valid", true}, {"kind", "graph"}, {"name", g.name()}};
  } else if (!in.model.empty()) {
    const auto m = load_model(in);
    out = {{"valid", true}, {"kind", "model"}, {"name", m.name()}};
  } else {
    const auto t = load_theory(in);
    out = {{"valid", true}, {"kind", "theory"}, {"name", t.name()}};
  }
  if (format == "text") {
    std::cout << out["kind"].get<std::string>() << " '" << out["name"].get<std::string>() << "': "
              << st.verdict(true, "valid") << "\n";
  } else {
    std::cout << dump(out);
  }
  return kOk;
}

int cmd_report(const Input& in, const std::string& format, const Style& st) {
  const auto t = load_theory(in);
  const auto nd = is_non_disturbing(t);
  const auto g = from_theory(t);
  Json ctx = Json::array();
  for (const auto& c : contexts(t)) ctx.push_back(std::vector<std::string>(c.begin(), c.end()));
  // Equivalent basics are reported, never merged.
  Json equivalent = Json::array();
  const auto members = t.members();
  for (std::size_t i = 0; i < t.basics().size(); ++i) {
    for (std::size_t j = i + 1; j < t.basics().size(); ++j) {
      const auto a = MeasurementId::basic(t.basics()[i].label);
      const auto b = MeasurementId::basic(t.basics()[j].label);
      if (t.outcomes(a).size() == t.outcomes(b).size() && are_operationally_equivalent(t, a, b)) {
        equivalent.push_back({a.key(), b.key()});
      }
    }
  }
  Json out{{"name", t.name()},
           {"basics", t.basics().size()},
           {"conjunctions", t.conjunctions().size()},
           {"preparations", t.preparations()},
           {"trivial", t.is_trivial()},
           {"contexts", ctx},
           {"linear", is_linear(g)},
           {"non_disturbance", to_json(nd)},
           {"equivalent_basics", equivalent}};
  if (format != "text") {
    std::cout << dump(out);
    return kOk;
  }
  std::cout << st.bold("theory " + t.name()) << "\n";
  std::cout << "preparations: " << join(t.preparations()) << "\n";
  std::cout << "contexts: ";
  for (const auto& c : contexts(t)) std::cout << "{" << join({c.begin(), c.end()}) << "} ";
  std::cout << "\nnon-disturbing: " << st.verdict(nd.non_disturbing, nd.non_disturbing ? "yes" : "no") << "\n";
  for (const auto& m : members) {
    for (const auto& p : t.preparations()) {
      const auto& d = t.table(m, p);
      std::cout << "  " << m.key() << " | " << p << ":";
      for (std::size_t i = 0; i < d.size(); ++i) std::cout << " " << d.support()[i] << "=" << d.mass_at(i);
      std::cout << "\n";
    }
  }
  for (const auto& pair : equivalent) {
    std::cout << "equivalent: " << pair[0].get<std::string>() << " ~ " << pair[1].get<std::string>() << "\n";
  }
  return kOk;
}

int cmd_chsh(const Input& in, const std::string& format, const std::string& preparation, const Style& st) {
  const auto t = load_theory(in);
  const auto r = preparation.empty() ? chsh(t) : chsh(t, preparation);
  if (format == "text") {
    std::cout << "<A0,B0>=" << r.correlators[0] << " <A0,B1>=" << r.correlators[1] << " <A1,B0>=" << r.correlators[2]
              << " <A1,B1>=" << r.correlators[3] << "\n";
    std::cout << "CHSH = " << st.bold(r.value.str()) << " (" << to_string(r.klass) << ")\n";
  } else {
    std::cout << dump(to_json(r));
  }
  return kOk;
}

std::vector<Context> parse_contexts(const std::vector<std::string>& keys) {
  std::vector<Context> out;
  for (const auto& k : keys) {
    const auto m = MeasurementId::parse(k);
    out.emplace_back(m.basics().begin(), m.basics().end());
  }
  return out;
}

int cmd_trivialize(const Input& in, const std::string& format, const std::vector<std::string>& selected,
                   const Style& st) {
  const auto t = load_theory(in);
  const auto tr = selected.empty() ? trivialize(t) : trivialize(t, parse_contexts(selected));
  if (format == "text") {
    std::cout << st.bold("trivialized " + t.name()) << " -> " << tr.theory.name() << "\n";
    std::vector<std::string> labels;
    for (const auto& b : tr.theory.basics()) labels.push_back(b.label);
    std::cout << "basics: " << join(labels, " ") << "\n";
    for (const auto& [ctx, label] : tr.map.new_basics) std::cout << "  " << ctx << " -> " << label << "\n";
    const auto eq = verify_theory_equivalence(t, tr.theory, tr.map);
    std::cout << "equivalent: " << st.verdict(eq.equivalent, eq.equivalent ? "yes" : "no") << "\n";
  } else {
    std::cout << dump(to_json(tr));
  }
  return kOk;
}

bool expectation_met(const std::string& expect, const std::map<std::string, bool>& facts) {
  auto it = facts.find(expect);
  if (it == facts.end()) {
    std::string known;
    for (const auto& [k, v] : facts) known += (known.empty() ? "" : ", ") + k;
    throw ValidationError("unknown --expect '" + expect + "' (one of: " + known + ")");
  }
  return it->second;
}

int cmd_model_check(const Input& in, const std::string& format, const std::string& expect, const Style& st) {
  const auto m = load_model(in);
  const bool det = is_outcome_deterministic(m);
  const auto snc = is_simultaneously_noncontextual(m);
  const auto mnc = is_measurement_noncontextual(m);
  const bool rec = recovers_theory(m);
  const std::map<std::string, bool> facts{{"deterministic", det},
                                          {"simultaneous-noncontextual", snc.noncontextual},
                                          {"measurement-noncontextual", mnc.noncontextual},
                                          {"noncontextual", snc.noncontextual && mnc.noncontextual},
                                          {"contextual", !(snc.noncontextual && mnc.noncontextual)},
                                          {"recovers", rec}};
  const bool met = expect.empty() || expectation_met(expect, facts);
  if (format == "text") {
    const auto yn = [&](bool b) { return st.verdict(b, b ? "yes" : "no"); };
    std::cout << "deterministic: " << yn(det) << "\n";
    std::cout << "simultaneous-NC: " << yn(snc.noncontextual) << "\n";
    std::cout << "measurement-NC: " << yn(mnc.noncontextual) << "\n";
    std::cout << "recovery-exact: " << yn(rec) << "\n";
    for (const auto& w : snc.witnesses) {
      std::cout << "  simultaneous witness: " << w.measurement.key() << " in " << w.conjunction.key() << " at "
                << w.state << "\n";
    }
    for (const auto& w : mnc.witnesses) {
      std::cout << "  measurement witness: " << w.first.key() << " ~ " << w.second.key() << " at " << w.state << "\n";
    }
  } else {
    Json out{{"model", m.name()},
             {"deterministic", det},
             {"simultaneous", to_json(snc)},
             {"measurement", to_json(mnc)},
             {"recovery_exact", rec}};
    if (!expect.empty()) out["expectation"] = {{"expect", expect}, {"met", met}};
    std::cout << dump(out);
  }
  return met ? kOk : kViolation;
}

int cmd_causal_cis(const Input& in, const std::string& format, const Style& st) {
  const auto m = load_model(in);
  const auto joint = joint_from_model(m);
  const auto report = ci_report(joint);
  const auto sc = scenario_of(m);
  Json named = Json::object();
  if (sc.kind != ScenarioKind::Trivial) {
    for (int k = 1; k <= 6; ++k) named["CI" + std::to_string(k)] = report.count(bell_ci(k)) > 0;
  }
  const auto exo = exogenous_family(sc.space);
  bool exo_holds = true;
  for (const auto& s : exo) exo_holds = exo_holds && report.count(s);
  if (format == "text") {
    std::cout << st.bold(std::to_string(report.size()) + " independences in " + m.name()) << "\n";
    for (const auto& [k, v] : named.items()) std::cout << k << ": " << st.verdict(v.get<bool>(), v.get<bool>() ? "holds" : "fails") << "\n";
    std::cout << "exogenous independence: " << (exo_holds ? "holds" : "fails") << "\n";
    for (const auto& s : report) std::cout << "  " << s.str() << "\n";
  } else {
    std::cout << dump({{"model", m.name()}, {"named", named}, {"exogenous", exo_holds}, {"statements", to_json(report)}});
  }
  return kOk;
}

int cmd_causal_dags(const Input& in, const std::string& format, const std::string& observed_kind, const Style& st) {
  const auto m = load_model(in);
  const auto sc = scenario_of(m);
  const auto observed = observed_kind == "model" ? ci_report(joint_from_model(m)) : generic_observed(sc);
  CiSet missing;
  for (const auto& r : sc.required) {
    if (!observed.count(r)) missing.insert(r);
  }
  if (!missing.empty()) {
    if (format == "json") {
      std::cout << dump({{"model", m.name()}, {"observed", observed_kind}, {"unsatisfiable_required", to_json(missing)}});
    } else {
      std::cerr << "required statements not in the observed set:\n";
      for (const auto& s : missing) std::cerr << "  " << s.str() << "\n";
    }
    return kViolation;
  }
  const auto dags = minimal_dags(observed, sc.required, sc.space);
  bool has_reference = false;
  for (const auto& d : dags) has_reference = has_reference || d == sc.factorization;
  if (format == "dot") {
    for (std::size_t i = 0; i < dags.size(); ++i) std::cout << dags[i].to_dot("minimal" + std::to_string(i + 1));
  } else if (format == "text") {
    std::cout << st.bold(std::to_string(dags.size()) + " minimal DAG(s) for " + m.name()) << "\n";
    for (const auto& d : dags) {
      std::vector<std::string> e;
      for (const auto& [a, b] : d.edges()) e.push_back(a + "->" + b);
      std::cout << "  " << join(e, " ") << (d == sc.factorization ? "  (model factorization)" : "") << "\n";
    }
  } else {
    Json list = Json::array();
    for (const auto& d : dags) list.push_back(to_json(d));
    std::cout << dump({{"model", m.name()},
                       {"observed", observed_kind},
                       {"minimal", list},
                       {"factorization", to_json(sc.factorization)},
                       {"factorization_minimal", has_reference}});
  }
  return kOk;
}

int cmd_causal_probe(const Input& in, const std::string& format, std::uint64_t seed, std::size_t trials,
                     const std::string& expect, const Style& st) {
  const auto m = load_model(in);
  const auto sc = scenario_of(m);
  const auto r = faithfulness_probe(sc.factorization, sc.space, sc.reference, trials, seed);
  const std::map<std::string, bool> facts{{"faithful", r.verdict == Faithfulness::Faithful},
                                          {"finetuned", r.verdict == Faithfulness::FineTuned}};
  const bool met = expect.empty() || expectation_met(expect, facts);
  if (format == "text") {
    std::cout << st.bold(m.name() + ": " + to_string(r.verdict)) << " (" << r.trials << " trials, seed " << r.seed
              << ")\n";
    for (const auto& f : r.rates) std::cout << "  " << f.statement.str() << ": " << f.failures << " failures\n";
  } else {
    auto out = to_json(r);
    out["model"] = m.name();
    out["factorization"] = to_json(sc.factorization);
    std::cout << dump(out);
  }
  return met ? kOk : kViolation;
}

int cmd_graph(const Input& in, const std::string& format, bool line, bool annotate) {
  require_one_source(in);
  std::optional<Hypergraph> g;
  if (!in.builtin.empty() && graph_builtins().count(in.builtin)) {
    if (annotate) throw ValidationError("--annotate needs a theory");
    g = graph_builtins().at(in.builtin)();
  } else {
    const auto t = load_theory(in);
    if (annotate) {
      const auto tr = trivialize(t);
      g = annotate_trivialized(tr.theory, tr.map);
    } else {
      g = from_theory(t);
    }
  }
  if (line) g = line_graph(*g);
  if (format == "dot") {
    std::cout << to_dot(*g);
  } else if (format == "text") {
    std::cout << g->name() << ": " << g->vertices().size() << " vertices, " << g->hyperedges().size() << " edges\n";
    for (const auto& e : g->hyperedges()) std::cout << "  {" << join(e) << "}\n";
  } else {
    std::cout << dump(to_json(*g));
  }
  return kOk;
}

int cmd_quantum(const std::string& format, std::optional<double> rotation, const Style& st) {
  const auto r = verify_epr_realization(rotation);
  if (format == "text") {
    std::cout << "realization: " << st.verdict(r.pass, r.pass ? "pass" : "fail") << "\n";
    std::ostringstream s;
    s.precision(3);
    s << "max deviation " << r.max_deviation << ", max completeness error " << r.max_completeness_error;
    std::cout << s.str() << "\n";
  } else {
    std::cout << dump(to_json(r));
  }
  return r.pass ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operational theories, ontological models and their causal structure"};
  app.require_subcommand(1);
  const auto st = style_from_env();

  Input in;
  std::string format = "json";
  std::string expect;
  std::string preparation;
  std::vector<std::string> selected;
  std::string observed_kind = "generic";
  std::uint64_t seed = 0;
  std::size_t trials = 200;
  bool line = false, annotate = false;
  double rotation = 0.0;

  auto* validate = app.add_subcommand("validate", "Check a theory, model or graph fixture");
  add_input(validate, in);
  add_format(validate, format, {"json", "text"});

  auto* report = app.add_subcommand("report", "Contexts, non-disturbance and tables of a theory");
  add_input(report, in);
  add_format(report, format, {"json", "text"});

  auto* chsh_cmd = app.add_subcommand("chsh", "CHSH value and class");
  add_input(chsh_cmd, in);
  add_format(chsh_cmd, format, {"json", "text"});
  chsh_cmd->add_option("--preparation", preparation, "Preparation label");

  auto* triv = app.add_subcommand("trivialize", "Replace contexts by single measurements");
  add_input(triv, in);
  add_format(triv, format, {"json", "text"});
  triv->add_option("--context", selected, "Context to replace, e.g. A0&B0 (repeatable; default all)");

  auto* mc = app.add_subcommand("model-check", "Determinism, contextuality and recovery of a model");
  add_input(mc, in);
  add_format(mc, format, {"json", "text"});
  mc->add_option("--expect", expect, "Property that must hold");

  auto* causal = app.add_subcommand("causal", "Causal analysis of a model");
  causal->require_subcommand(1);
  auto* cis = causal->add_subcommand("cis", "Conditional independences of the model's joint");
  add_input(cis, in);
  add_format(cis, format, {"json", "text"});
  auto* dags = causal->add_subcommand("dags", "Minimal DAGs for the model's scenario");
  add_input(dags, in);
  add_format(dags, format, {"json", "text", "dot"});
  dags->add_option("--observed", observed_kind, "Observed statements: generic factorization or the model joint")
      ->check(CLI::IsMember({"generic", "model"}));
  auto* probe = causal->add_subcommand("probe", "Faithfulness of the model's factorization");
  add_input(probe, in);
  add_format(probe, format, {"json", "text"});
  probe->add_option("--seed", seed, "Seed");
  probe->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  probe->add_option("--expect", expect, "faithful or finetuned");

  auto* graph = app.add_subcommand("graph", "Compatibility hypergraph");
  add_input(graph, in, false);
  add_format(graph, format, {"json", "text", "dot"});
  graph->add_flag("--line", line, "Line graph");
  graph->add_flag("--annotate", annotate, "Trivialize and draw shared-marginal edges");

  auto* quantum = app.add_subcommand("quantum-verify", "Born-rule check of the EPR tables");
  add_format(quantum, format, {"json", "text"});
  auto* rot = quantum->add_option("--rotate-b1", rotation, "Rotate the b1 basis about z (radians)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*validate) return cmd_validate(in, format, st);
    if (*report) return cmd_report(in, format, st);
    if (*chsh_cmd) return cmd_chsh(in, format, preparation, st);
    if (*triv) return cmd_trivialize(in, format, selected, st);
    if (*mc) return cmd_model_check(in, format, expect, st);
    if (*cis) return cmd_causal_cis(in, format, st);
    if (*dags) return cmd_causal_dags(in, format, observed_kind, st);
    if (*probe) return cmd_causal_probe(in, format, seed, trials, expect, st);
    if (*graph) return cmd_graph(in, format, line, annotate);
    if (*quantum) return cmd_quantum(format, *rot ? std::optional<double>(rotation) : std::nullopt, st);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const LookupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
