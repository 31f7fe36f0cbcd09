#include "opthy/causal/dag.hpp"

#include "opthy/errors.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace opthy {

bool is_acyclic(std::size_t n, std::uint64_t edge_mask) {
  std::uint32_t remaining = (n >= 32 ? 0u : (1u << n)) - 1u;
  // Peel off nodes with no incoming edge from the remaining set.
  while (remaining) {
    bool progress = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!(remaining >> v & 1u)) continue;
      bool has_parent = false;
      for (std::size_t u = 0; u < n && !has_parent; ++u) {
        has_parent = (remaining >> u & 1u) && (edge_mask >> (u * Dag::kMaxNodes + v) & 1u);
      }
      if (!has_parent) {
        remaining &= ~(1u << v);
        progress = true;
      }
    }
    if (!progress) return false;
  }
  return true;
}

Dag::Dag(std::vector<std::string> nodes, std::uint64_t edge_mask) : nodes_(std::move(nodes)), mask_(edge_mask) {
  if (nodes_.size() > kMaxNodes) throw ValidationError("a DAG may have at most 8 nodes");
  std::set<std::string> unique(nodes_.begin(), nodes_.end());
  if (unique.size() != nodes_.size()) throw ValidationError("duplicate DAG node");
  for (std::size_t i = 0; i < kMaxNodes * kMaxNodes; ++i) {
    if (!(mask_ >> i & 1u)) continue;
    const std::size_t from = i / kMaxNodes, to = i % kMaxNodes;
    if (from >= nodes_.size() || to >= nodes_.size()) throw ValidationError("edge mask names a missing node");
    if (from == to) throw ValidationError("self loop on " + nodes_[from]);
  }
  if (!is_acyclic(nodes_.size(), mask_)) throw ValidationError("graph has a directed cycle");
}

namespace {

std::uint64_t mask_from(const std::vector<std::string>& nodes, const std::vector<std::pair<std::string, std::string>>& edges) {
  std::uint64_t m = 0;
  const auto pos = [&](const std::string& name) {
    auto it = std::find(nodes.begin(), nodes.end(), name);
    if (it == nodes.end()) throw ValidationError("edge endpoint '" + name + "' is not a node");
    return static_cast<std::size_t>(it - nodes.begin());
  };
  for (const auto& [a, b] : edges) m |= std::uint64_t{1} << (pos(a) * Dag::kMaxNodes + pos(b));
  return m;
}

}  // namespace

Dag::Dag(std::vector<std::string> nodes, const std::vector<std::pair<std::string, std::string>>& edges)
    : Dag(nodes, mask_from(nodes, edges)) {}

std::size_t Dag::edge_count() const { return static_cast<std::size_t>(std::popcount(mask_)); }

std::vector<std::pair<std::string, std::string>> Dag::edges() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
      if (has_edge(i, j)) out.emplace_back(nodes_[i], nodes_[j]);
    }
  }
  return out;
}

std::uint32_t Dag::parents(std::size_t v) const {
  std::uint32_t out = 0;
  for (std::size_t u = 0; u < nodes_.size(); ++u) {
    if (has_edge(u, v)) out |= 1u << u;
  }
  return out;
}

std::uint32_t Dag::children(std::size_t v) const {
  std::uint32_t out = 0;
  for (std::size_t w = 0; w < nodes_.size(); ++w) {
    if (has_edge(v, w)) out |= 1u << w;
  }
  return out;
}

std::size_t Dag::index_of(const std::string& name) const {
  auto it = std::find(nodes_.begin(), nodes_.end(), name);
  if (it == nodes_.end()) throw LookupError("unknown node '" + name + "'");
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::string Dag::to_dot(const std::string& name) const {
  std::string out = "digraph \"" + name + "\" {\n";
  for (const auto& n : nodes_) out += "  \"" + n + "\";\n";
  for (const auto& [a, b] : edges()) out += "  \"" + a + "\" -> \"" + b + "\";\n";
  return out + "}\n";
}

std::uint32_t d_connected(const Dag& dag, std::size_t x, std::uint32_t zs) {
  const std::size_t n = dag.size();
  std::vector<std::uint32_t> par(n), chi(n);
  for (std::size_t v = 0; v < n; ++v) {
    par[v] = dag.parents(v);
    chi[v] = dag.children(v);
  }
  // Ancestors of the conditioning set, the set itself included.
  std::uint32_t anc = zs;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t v = 0; v < n; ++v) {
      if ((anc >> v & 1u) && (par[v] & ~anc)) {
        anc |= par[v];
        grew = true;
      }
    }
  }
  // Reachability over (node, arrived-from-child) / (node, arrived-from-parent).
  std::uint32_t seen_up = 0, seen_down = 0, reached = 0;
  std::vector<std::pair<std::size_t, bool>> stack{{x, true}};
  while (!stack.empty()) {
    auto [v, up] = stack.back();
    stack.pop_back();
    std::uint32_t& seen = up ? seen_up : seen_down;
    if (seen >> v & 1u) continue;
    seen |= 1u << v;
    const bool observed = zs >> v & 1u;
    if (!observed) reached |= 1u << v;
    if (up && !observed) {
      for (std::size_t p = 0; p < n; ++p) {
        if (par[v] >> p & 1u) stack.push_back({p, true});
      }
      for (std::size_t c = 0; c < n; ++c) {
        if (chi[v] >> c & 1u) stack.push_back({c, false});
      }
    } else if (!up) {
      if (!observed) {
        for (std::size_t c = 0; c < n; ++c) {
          if (chi[v] >> c & 1u) stack.push_back({c, false});
        }
      }
      if (anc >> v & 1u) {
        for (std::size_t p = 0; p < n; ++p) {
          if (par[v] >> p & 1u) stack.push_back({p, true});
        }
      }
    }
  }
  return reached & ~(1u << x);
}

bool d_separated(const Dag& dag, const std::string& x, const std::vector<std::string>& ys,
                 const std::vector<std::string>& zs) {
  std::uint32_t y = 0, z = 0;
  for (const auto& s : ys) y |= 1u << dag.index_of(s);
  for (const auto& s : zs) z |= 1u << dag.index_of(s);
  const auto xi = dag.index_of(x);
  if ((y | z) >> xi & 1u) throw ValidationError("'" + x + "' appears on both sides");
  if (y & z) throw ValidationError("a variable is both tested and conditioned on");
  return (d_connected(dag, xi, z) & y) == 0;
}

std::vector<bool> markov_bits(const Dag& dag, const StatementUniverse& universe) {
  const auto& space = universe.space();
  if (space.size() != dag.size()) throw ValidationError("DAG and space have different variables");
  for (std::size_t i = 0; i < dag.size(); ++i) {
    if (space.at(i).name != dag.nodes()[i]) throw ValidationError("DAG node order differs from the space");
  }
  const std::size_t n = dag.size();
  // d_connected(x, given) memoized per (x, given).
  std::vector<std::vector<std::int64_t>> memo(n, std::vector<std::int64_t>(std::size_t{1} << n, -1));
  std::vector<bool> out(universe.size());
  for (std::size_t i = 0; i < universe.size(); ++i) {
    const auto& e = universe.entry(i);
    auto& slot = memo[e.lhs][e.given];
    if (slot < 0) slot = d_connected(dag, e.lhs, e.given);
    out[i] = (static_cast<std::uint32_t>(slot) & e.rhs) == 0;
  }
  return out;
}

CiSet markov_implied(const Dag& dag, const VariableSpace& space) {
  const StatementUniverse u(space);
  return u.statements(markov_bits(dag, u));
}

CiSet markov_implied(const Dag& dag) {
  std::vector<Variable> vars;
  for (const auto& n : dag.nodes()) vars.push_back({n, {"0"}});
  return markov_implied(dag, VariableSpace(std::move(vars)));
}

}  // namespace opthy
