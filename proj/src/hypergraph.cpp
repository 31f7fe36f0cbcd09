#include "opthy/hypergraph.hpp"

#include "opthy/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace opthy {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::size_t intersection_size(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t n = 0;
  for (const auto& x : a) n += static_cast<std::size_t>(std::count(b.begin(), b.end(), x));
  return n;
}

}  // namespace

Hypergraph::Hypergraph(std::vector<std::string> vertices, std::vector<std::vector<std::string>> hyperedges,
                       EdgeStyle style, std::string name)
    : name_(std::move(name)), vertices_(std::move(vertices)), style_(style) {
  std::unordered_map<std::string, std::size_t> order;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!order.emplace(vertices_[i], i).second) throw ValidationError("duplicate vertex '" + vertices_[i] + "'");
  }
  std::set<std::vector<std::string>> seen;
  for (auto& e : hyperedges) {
    for (const auto& v : e) {
      if (!order.count(v)) throw ValidationError("hyperedge references unknown vertex '" + v + "'");
    }
    std::sort(e.begin(), e.end(), [&](const std::string& a, const std::string& b) { return order[a] < order[b]; });
    e.erase(std::unique(e.begin(), e.end()), e.end());
    if (e.empty()) throw ValidationError("empty hyperedge");
    if (!seen.insert(e).second) throw ValidationError("duplicate hyperedge");
    hyperedges_.push_back(std::move(e));
  }
}

Hypergraph from_theory(const OperationalTheory& theory) {
  std::vector<std::string> vertices;
  for (const auto& b : theory.basics()) vertices.push_back(b.label);
  std::vector<std::vector<std::string>> edges;
  for (const auto& ctx : contexts(theory)) edges.emplace_back(ctx.begin(), ctx.end());
  return Hypergraph(std::move(vertices), std::move(edges), EdgeStyle::Compatibility, theory.name());
}

bool is_linear(const Hypergraph& g) {
  const auto& e = g.hyperedges();
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (intersection_size(e[i], e[j]) > 1) return false;
    }
  }
  return true;
}

std::string hyperedge_label(const std::vector<std::string>& members, std::size_t ordinal,
                            const std::set<std::string>& taken) {
  std::string candidate;
  bool parsed = !members.empty();
  std::set<std::string> prefixes;
  std::string digits;
  for (const auto& m : members) {
    auto split = m.find_first_of("0123456789");
    if (split == 0 || split == std::string::npos ||
        !std::all_of(m.begin() + static_cast<std::ptrdiff_t>(split), m.end(),
                     [](unsigned char c) { return std::isdigit(c); })) {
      parsed = false;
      break;
    }
    prefixes.insert(m.substr(0, split));
    digits += m.substr(split);
  }
  if (parsed) candidate = (prefixes.size() == 1 ? *prefixes.begin() : std::string("C")) + digits;
  if (candidate.empty() || taken.count(candidate)) candidate = "E" + std::to_string(ordinal + 1);
  while (taken.count(candidate)) candidate += '_';
  return candidate;
}

Hypergraph line_graph(const Hypergraph& g) {
  std::vector<std::string> vertices;
  std::set<std::string> taken;
  for (std::size_t i = 0; i < g.hyperedges().size(); ++i) {
    auto label = hyperedge_label(g.hyperedges()[i], i, taken);
    taken.insert(label);
    vertices.push_back(std::move(label));
  }
  std::vector<std::vector<std::string>> edges;
  const auto& e = g.hyperedges();
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (intersection_size(e[i], e[j]) > 0) edges.push_back({vertices[i], vertices[j]});
    }
  }
  return Hypergraph(std::move(vertices), std::move(edges), EdgeStyle::SharedMarginal, "L(" + g.name() + ")");
}

Hypergraph ghz_graph() {
  return Hypergraph({"X1", "Y1", "X2", "Y2", "X3", "Y3", "XXX", "XYY", "YXY", "YYX"},
                    {{"XXX", "XYY", "YXY", "YYX"},
                     {"X1", "X2", "X3", "XXX"},
                     {"X1", "Y2", "Y3", "XYY"},
                     {"Y1", "X2", "Y3", "YXY"},
                     {"Y1", "Y2", "X3", "YYX"}},
                    EdgeStyle::Compatibility, "ghz");
}

Hypergraph peres_mermin_graph() {
  return Hypergraph({"X1", "X2", "X1X2", "Y2", "Y1", "Y1Y2", "X1Y2", "Y1X2", "Z1Z2"},
                    {{"X1", "X2", "X1X2"},
                     {"Y2", "Y1", "Y1Y2"},
                     {"X1Y2", "Y1X2", "Z1Z2"},
                     {"X1", "Y2", "X1Y2"},
                     {"X2", "Y1", "Y1X2"},
                     {"X1X2", "Y1Y2", "Z1Z2"}},
                    EdgeStyle::Compatibility, "peres-mermin");
}

Hypergraph bell_graph() {
  return Hypergraph({"A0", "A1", "B0", "B1"}, {{"A0", "B0"}, {"A0", "B1"}, {"A1", "B0"}, {"A1", "B1"}},
                    EdgeStyle::Compatibility, "bell");
}

std::string to_dot(const Hypergraph& g) {
  std::ostringstream os;
  const std::string edge_attr = g.style() == EdgeStyle::SharedMarginal ? " [style=dashed]" : "";
  os << "graph " << quote(g.name()) << " {\n";
  os << "  node [shape=circle];\n";
  for (const auto& v : g.vertices()) os << "  " << quote(v) << ";\n";
  std::size_t aux = 0;
  for (const auto& e : g.hyperedges()) {
    if (e.size() == 1) continue;
    if (e.size() == 2) {
      os << "  " << quote(e[0]) << " -- " << quote(e[1]) << edge_attr << ";\n";
      continue;
    }
    const std::string hub = "__h" + std::to_string(aux++);
    os << "  " << quote(hub) << " [shape=square, label=\"\", width=0.15];\n";
    for (const auto& v : e) os << "  " << quote(hub) << " -- " << quote(v) << edge_attr << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace opthy
