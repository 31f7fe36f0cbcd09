#pragma once

#include "opthy/causal/ci.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace opthy {

/// Directed acyclic graph over at most 8 named nodes. Edge i->j is bit
/// i*8+j of the edge mask.
class Dag {
 public:
  static constexpr std::size_t kMaxNodes = 8;

  Dag() = default;

  /// Throws ValidationError on unknown endpoints, self loops or a cycle.
  Dag(std::vector<std::string> nodes, const std::vector<std::pair<std::string, std::string>>& edges);
  /// Unchecked-order constructor from a mask; still rejects cycles.
  Dag(std::vector<std::string> nodes, std::uint64_t edge_mask);

  const std::vector<std::string>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  std::uint64_t edge_mask() const { return mask_; }
  std::size_t edge_count() const;
  bool has_edge(std::size_t from, std::size_t to) const { return mask_ >> (from * kMaxNodes + to) & 1u; }
  /// Edges as name pairs, ordered by (from, to) node position.
  std::vector<std::pair<std::string, std::string>> edges() const;

  std::uint32_t parents(std::size_t v) const;
  std::uint32_t children(std::size_t v) const;
  std::size_t index_of(const std::string& name) const;

  std::string to_dot(const std::string& name = "G") const;

  friend bool operator==(const Dag& a, const Dag& b) { return a.nodes_ == b.nodes_ && a.mask_ == b.mask_; }

 private:
  std::vector<std::string> nodes_;
  std::uint64_t mask_ = 0;
};

bool is_acyclic(std::size_t n, std::uint64_t edge_mask);

/// Nodes d-connected to x given zs (x itself excluded), as a bitmask.
std::uint32_t d_connected(const Dag& dag, std::size_t x, std::uint32_t zs);

/// x _||_ ys | zs by d-separation.
bool d_separated(const Dag& dag, const std::string& x, const std::vector<std::string>& ys,
                 const std::vector<std::string>& zs);

/// Every canonical statement over the DAG's nodes that d-separation certifies.
/// Node names must match the space's variables.
CiSet markov_implied(const Dag& dag, const VariableSpace& space);
/// Same over a space made of the DAG's nodes with placeholder values.
CiSet markov_implied(const Dag& dag);

/// Bit i set when universe statement i is d-separated in the graph.
std::vector<bool> markov_bits(const Dag& dag, const StatementUniverse& universe);

}  // namespace opthy
