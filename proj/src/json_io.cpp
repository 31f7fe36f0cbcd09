#include "opthy/json_io.hpp"

#include "opthy/errors.hpp"

#include <fstream>
#include <sstream>

namespace opthy {

namespace {

const Json& field(const Json& obj, const char* key, const std::string& what) {
  if (!obj.is_object()) throw ValidationError(what + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(what + " lacks \"" + key + "\"");
  return *it;
}

std::string text(const Json& v, const std::string& what) {
  if (!v.is_string()) throw ValidationError(what + " must be a string");
  return v.get<std::string>();
}

std::vector<std::string> strings(const Json& v, const std::string& what) {
  if (!v.is_array()) throw ValidationError(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(text(s, what));
  return out;
}

Rational mass(const Json& v, const std::string& what) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  throw ValidationError(what + ": masses are \"num/den\" strings or integers");
}

Json block_list(const std::vector<MeasurementId::Block>& blocks) {
  Json out = Json::array();
  for (const auto& b : blocks) out.push_back({{"label", b.label}, {"outcomes", b.outcomes}});
  return out;
}

MeasurementId view_from_json(const Json& v, std::size_t i) {
  const auto what = "views[" + std::to_string(i) + "]";
  std::vector<MeasurementId::Block> blocks;
  const auto& bl = field(v, "blocks", what);
  if (!bl.is_array()) throw ValidationError(what + ".blocks must be an array");
  for (const auto& b : bl) {
    blocks.push_back({text(field(b, "label", what), what), strings(field(b, "outcomes", what), what)});
  }
  return MeasurementId::coarse_graining(MeasurementId::parse(text(field(v, "base", what), what)), std::move(blocks),
                                        text(field(v, "tag", what), what));
}

}  // namespace

Json to_json(const Distribution& d) {
  Json out = Json::object();
  for (std::size_t i = 0; i < d.size(); ++i) out[d.support()[i]] = d.mass_at(i).str();
  return out;
}

Distribution distribution_from_json(const Json& obj, const std::string& what) {
  if (!obj.is_object()) throw ValidationError(what + " must be an object of masses");
  std::vector<Distribution::Entry> entries;
  for (const auto& [k, v] : obj.items()) entries.emplace_back(k, mass(v, what + "." + k));
  return Distribution(std::move(entries));
}

Json to_json(const OperationalTheory& t) {
  Json doc;
  doc["name"] = t.name();
  doc["basics"] = Json::array();
  for (const auto& b : t.basics()) doc["basics"].push_back({{"label", b.label}, {"outcomes", b.outcomes}});
  doc["conjunctions"] = Json::array();
  for (const auto& c : t.conjunctions()) doc["conjunctions"].push_back(c.basics());
  doc["preparations"] = t.preparations();
  doc["tables"] = Json::array();
  for (const auto& m : t.members()) {
    for (const auto& p : t.preparations()) {
      doc["tables"].push_back({{"measurement", m.key()}, {"preparation", p}, {"dist", to_json(t.table(m, p))}});
    }
  }
  if (!t.views().empty()) {
    doc["views"] = Json::array();
    for (const auto& v : t.views()) {
      doc["views"].push_back({{"base", v.base().key()}, {"tag", v.tag()}, {"blocks", block_list(v.blocks())}});
    }
  }
  return doc;
}

OperationalTheory theory_from_json(const Json& doc) {
  try {
    const std::string what = "theory";
    std::vector<BasicSpec> basics;
    const auto& bs = field(doc, "basics", what);
    if (!bs.is_array()) throw ValidationError("theory.basics must be an array");
    for (const auto& b : bs) {
      basics.push_back({text(field(b, "label", "basic"), "basic label"), strings(field(b, "outcomes", "basic"), "outcomes")});
    }
    std::vector<std::vector<std::string>> conjunctions;
    if (doc.contains("conjunctions")) {
      const auto& cs = doc.at("conjunctions");
      if (!cs.is_array()) throw ValidationError("theory.conjunctions must be an array");
      for (const auto& c : cs) {
        conjunctions.push_back(c.is_string() ? MeasurementId::parse(c.get<std::string>()).basics()
                                             : strings(c, "conjunction"));
      }
    }
    std::vector<TableEntry> tables;
    const auto& ts = field(doc, "tables", what);
    if (!ts.is_array()) throw ValidationError("theory.tables must be an array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const auto w = "tables[" + std::to_string(i) + "]";
      tables.push_back({MeasurementId::parse(text(field(ts[i], "measurement", w), w)),
                        text(field(ts[i], "preparation", w), w), distribution_from_json(field(ts[i], "dist", w), w)});
    }
    std::vector<MeasurementId> views;
    if (doc.contains("views")) {
      const auto& vs = doc.at("views");
      if (!vs.is_array()) throw ValidationError("theory.views must be an array");
      for (std::size_t i = 0; i < vs.size(); ++i) views.push_back(view_from_json(vs[i], i));
    }
    return OperationalTheory(text(field(doc, "name", what), "name"), std::move(basics), std::move(conjunctions),
                             strings(field(doc, "preparations", what), "preparations"), std::move(tables),
                             std::move(views));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed theory document: ") + e.what());
  }
}

Json to_json(const OntologicalModel& m) {
  Json doc;
  doc["name"] = m.name();
  doc["theory"] = to_json(m.theory());
  doc["ontic_states"] = m.ontic_states();
  doc["priors"] = Json::object();
  for (const auto& p : m.theory().preparations()) doc["priors"][p] = to_json(m.prior(p));
  doc["responses"] = Json::array();
  for (const auto& meas : m.theory().members()) {
    for (const auto& s : m.ontic_states()) {
      doc["responses"].push_back({{"measurement", meas.key()}, {"state", s}, {"dist", to_json(m.response(meas, s))}});
    }
  }
  return doc;
}

OntologicalModel model_from_json(const Json& doc) {
  try {
    const std::string what = "model";
    auto theory = std::make_shared<const OperationalTheory>(theory_from_json(field(doc, "theory", what)));
    std::map<std::string, Distribution> priors;
    const auto& ps = field(doc, "priors", what);
    if (!ps.is_object()) throw ValidationError("model.priors must be an object");
    for (const auto& [p, d] : ps.items()) priors.emplace(p, distribution_from_json(d, "priors." + p));
    std::vector<ResponseEntry> responses;
    const auto& rs = field(doc, "responses", what);
    if (!rs.is_array()) throw ValidationError("model.responses must be an array");
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const auto w = "responses[" + std::to_string(i) + "]";
      responses.push_back({MeasurementId::parse(text(field(rs[i], "measurement", w), w)), text(field(rs[i], "state", w), w),
                           distribution_from_json(field(rs[i], "dist", w), w)});
    }
    const auto name = doc.contains("name") ? text(doc.at("name"), "name") : theory->name();
    return OntologicalModel(name, theory, strings(field(doc, "ontic_states", what), "ontic_states"), std::move(priors),
                            std::move(responses));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed model document: ") + e.what());
  }
}

Json to_json(const TrivializationMap& map) {
  Json out;
  out["new_basics"] = map.new_basics;
  out["outcome_bijections"] = Json::object();
  for (const auto& [label, pairs] : map.outcome_bijections) {
    Json obj = Json::object();
    for (const auto& [tuple, flat] : pairs) obj[tuple] = flat;
    out["outcome_bijections"][label] = obj;
  }
  out["marginal_views"] = Json::object();
  for (const auto& [key, views] : map.marginal_views) {
    Json list = Json::array();
    for (const auto& v : views) list.push_back(v.key());
    out["marginal_views"][key] = list;
  }
  return out;
}

Json to_json(const Trivialization& t) {
  auto doc = to_json(t.theory);
  doc["trivialization"] = to_json(t.map);
  return doc;
}

Json to_json(const ChshReport& r) {
  Json c = Json::object();
  const char* names[4] = {"A0,B0", "A0,B1", "A1,B0", "A1,B1"};
  for (int i = 0; i < 4; ++i) c[names[i]] = r.correlators[static_cast<std::size_t>(i)].str();
  return {{"correlators", c}, {"value", r.value.str()}, {"class", to_string(r.klass)}};
}

Json to_json(const NonDisturbanceReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) {
    v.push_back({{"measurement", x.measurement.key()}, {"conjunction", x.conjunction.key()}, {"preparation", x.preparation}});
  }
  return {{"non_disturbing", r.non_disturbing}, {"violations", v}};
}

Json to_json(const TheoryEquivalenceReport& r) {
  return {{"equivalent", r.equivalent},
          {"preparations_paired_by_order", r.preparations_paired_by_order},
          {"mismatches", r.mismatches}};
}

Json to_json(const SimultaneousReport& r) {
  Json w = Json::array();
  for (const auto& x : r.witnesses) {
    w.push_back({{"measurement", x.measurement.key()}, {"conjunction", x.conjunction.key()}, {"state", x.state}});
  }
  return {{"noncontextual", r.noncontextual}, {"witnesses", w}};
}

Json to_json(const MeasurementReport& r) {
  Json w = Json::array();
  for (const auto& x : r.witnesses) w.push_back({{"first", x.first.key()}, {"second", x.second.key()}, {"state", x.state}});
  return {{"noncontextual", r.noncontextual}, {"equivalent_pairs", r.equivalent_pairs}, {"witnesses", w}};
}

Json to_json(const Hypergraph& g) {
  return {{"name", g.name()},
          {"vertices", g.vertices()},
          {"hyperedges", g.hyperedges()},
          {"style", g.style() == EdgeStyle::Compatibility ? "compatibility" : "shared-marginal"}};
}

Json to_json(const CiSet& cis) {
  Json out = Json::array();
  for (const auto& s : cis) out.push_back({{"lhs", s.lhs}, {"rhs", s.rhs}, {"given", s.given}, {"text", s.str()}});
  return out;
}

Json to_json(const Dag& dag) {
  Json edges = Json::array();
  for (const auto& [a, b] : dag.edges()) edges.push_back({a, b});
  return {{"nodes", dag.nodes()}, {"edges", edges}};
}

Json to_json(const FaithfulnessReport& r) {
  Json rates = Json::array();
  for (const auto& f : r.rates) rates.push_back({{"statement", f.statement.str()}, {"failures", f.failures}, {"rate", f.rate}});
  return {{"verdict", to_string(r.verdict)},
          {"seed", r.seed},
          {"trials", r.trials},
          {"tolerance", r.tolerance},
          {"threshold", kFineTuningThreshold},
          {"failure_rates", rates}};
}

Json to_json(const RealizationReport& r) {
  Json cells = Json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"cell", c.label}, {"born", c.born}, {"expected", c.expected}, {"deviation", c.deviation}});
  }
  return {{"pass", r.pass},
          {"tolerance", r.tolerance},
          {"max_deviation", r.max_deviation},
          {"max_completeness_error", r.max_completeness_error},
          {"cells", cells}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace opthy
