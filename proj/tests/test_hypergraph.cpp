#include "opthy/errors.hpp"
#include "opthy/hypergraph.hpp"
#include "opthy/theories.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace opthy;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Hypergraph, GhzLineGraph) {
  const auto g = ghz_graph();
  EXPECT_EQ(g.vertices().size(), 10u);
  EXPECT_EQ(g.hyperedges().size(), 5u);
  EXPECT_TRUE(is_linear(g));
  const auto l = line_graph(g);
  EXPECT_EQ(l.vertices().size(), 5u);
  EXPECT_EQ(l.hyperedges().size(), 10u);
  EXPECT_EQ(l.style(), EdgeStyle::SharedMarginal);
  const auto dot = to_dot(l);
  EXPECT_EQ(count(dot, "style=dashed"), 10u);
}

TEST(Hypergraph, PeresMerminLineGraph) {
  const auto g = peres_mermin_graph();
  EXPECT_EQ(g.vertices().size(), 9u);
  EXPECT_TRUE(is_linear(g));
  const auto l = line_graph(g);
  EXPECT_EQ(l.vertices().size(), 6u);
  EXPECT_EQ(l.hyperedges().size(), 9u);
}

TEST(Hypergraph, BellAndMini) {
  const auto b = from_theory(classical_theory());
  EXPECT_EQ(b.hyperedges().size(), 4u);
  EXPECT_TRUE(is_linear(b));
  const auto m = from_theory(mini_theory());
  EXPECT_EQ(m.vertices().size(), 5u);
  EXPECT_EQ(m.hyperedges().size(), 2u);
  EXPECT_TRUE(is_linear(m));
  const Hypergraph nonlinear({"a", "b", "c"}, {{"a", "b", "c"}, {"a", "b"}}, EdgeStyle::Compatibility);
  EXPECT_FALSE(is_linear(nonlinear));
}

TEST(Hypergraph, Validation) {
  EXPECT_THROW(Hypergraph({"a"}, {{"a", "z"}}, EdgeStyle::Compatibility), ValidationError);
  EXPECT_THROW(Hypergraph({"a", "a"}, {}, EdgeStyle::Compatibility), ValidationError);
  EXPECT_THROW(Hypergraph({"a", "b"}, {{"a", "b"}, {"b", "a"}}, EdgeStyle::Compatibility), ValidationError);
}

TEST(Hypergraph, Labels) {
  EXPECT_EQ(hyperedge_label({"M1", "M2", "M3"}, 0, {}), "M123");
  EXPECT_EQ(hyperedge_label({"A0", "B1"}, 0, {}), "C01");
  EXPECT_EQ(hyperedge_label({"foo", "bar"}, 2, {}), "E3");
  EXPECT_EQ(hyperedge_label({"foo", "bar"}, 2, {"E3"}), "E3_");
  EXPECT_EQ(hyperedge_label({"M1", "M2"}, 0, {"M12"}), "E1");
}

TEST(Hypergraph, DotShapes) {
  const auto dot = to_dot(from_theory(mini_theory()));
  EXPECT_NE(dot.find("shape=circle"), std::string::npos);
  EXPECT_EQ(count(dot, "shape=square"), 1u);  // only {M1,M2,M3} needs a hub
  EXPECT_EQ(dot, to_dot(from_theory(mini_theory())));
}

TEST(HypergraphProperty, LineGraphCounts) {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 100; ++round) {
    std::uniform_int_distribution<int> nv(2, 8);
    const int n = nv(rng);
    std::vector<std::string> vertices;
    for (int i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
    std::set<std::vector<std::string>> edges;
    std::uniform_int_distribution<int> ne(0, 6), bit(0, 1);
    const int target = ne(rng);
    for (int e = 0; e < target; ++e) {
      std::vector<std::string> members;
      for (int i = 0; i < n; ++i) {
        if (bit(rng)) members.push_back(vertices[static_cast<std::size_t>(i)]);
      }
      if (members.size() >= 2) edges.insert(members);
    }
    const std::vector<std::vector<std::string>> list(edges.begin(), edges.end());
    const Hypergraph g(vertices, list, EdgeStyle::Compatibility);
    const auto l = line_graph(g);
    EXPECT_EQ(l.vertices().size(), list.size());
    // Oracle: pairs of hyperedges with a common vertex.
    std::size_t intersecting = 0;
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        const auto& a = list[i];
        const auto& b = list[j];
        if (std::any_of(a.begin(), a.end(), [&](const std::string& v) { return std::count(b.begin(), b.end(), v); })) {
          ++intersecting;
        }
      }
    }
    EXPECT_EQ(l.hyperedges().size(), intersecting);
  }
}
