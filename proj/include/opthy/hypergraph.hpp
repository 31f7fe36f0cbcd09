#pragma once

#include "opthy/theory.hpp"

#include <set>
#include <string>
#include <vector>

namespace opthy {

/// Compatibility (solid) edges join simultaneously measurable basics;
/// shared-marginal (dashed) edges join basics of a trivial theory whose
/// marginals are operationally equivalent.
enum class EdgeStyle { Compatibility, SharedMarginal };

class Hypergraph {
 public:
  /// Hyperedge members are stored in vertex order; throws ValidationError on
  /// unknown vertices, duplicate vertices or duplicate hyperedges.
  Hypergraph(std::vector<std::string> vertices, std::vector<std::vector<std::string>> hyperedges, EdgeStyle style,
             std::string name = "G");

  const std::string& name() const { return name_; }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<std::vector<std::string>>& hyperedges() const { return hyperedges_; }
  EdgeStyle style() const { return style_; }

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::string name_;
  std::vector<std::string> vertices_;
  std::vector<std::vector<std::string>> hyperedges_;
  EdgeStyle style_;
};

/// Vertices are the basics in declaration order; hyperedges are the contexts.
Hypergraph from_theory(const OperationalTheory& theory);

/// Every pair of hyperedges shares at most one vertex.
bool is_linear(const Hypergraph& g);

/// One vertex per hyperedge of `g` (labelled by hyperedge_label), one
/// shared-marginal edge per pair of intersecting hyperedges.
Hypergraph line_graph(const Hypergraph& g);

/// Mermin's pentagram: 10 observables, 5 commuting sets of 4.
Hypergraph ghz_graph();
/// The 3x3 Peres-Mermin square, rows then columns:
///   X1    X2    X1X2
///   Y2    Y1    Y1Y2
///   X1Y2  Y1X2  Z1Z2
Hypergraph peres_mermin_graph();
/// The Bell-scenario square A0-B0-A1-B1.
Hypergraph bell_graph();

/// DOT text. Two-vertex edges are drawn directly; larger hyperedges get a
/// square auxiliary node joined to each member. Shared-marginal edges are
/// dashed. Output is deterministic for a given graph.
std::string to_dot(const Hypergraph& g);

/// Label for a new vertex standing for the hyperedge `members`:
///  - all members look like <prefix><digits> with one common prefix:
///    prefix + concatenated digits  ({M1,M2,M3} -> "M123");
///  - all members look like <prefix><digits> with different prefixes:
///    "C" + concatenated digits      ({A0,B1} -> "C01");
///  - otherwise, or when the result is already in `taken`: "E" + ordinal
///    (1-based), with '_' appended until unused.
std::string hyperedge_label(const std::vector<std::string>& members, std::size_t ordinal,
                            const std::set<std::string>& taken);

}  // namespace opthy
