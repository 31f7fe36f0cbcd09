#include "opthy/theories.hpp"

#include <array>
#include <functional>

namespace opthy {

namespace {

using JointRule = std::function<Rational(int x, int y, int a, int b)>;

Rational classical_rule(int x, int y, int, int) { return (x ^ y) == 0 ? rat(1, 2) : Rational(0); }

Rational epr_rule(int x, int y, int a, int b) {
  const bool same = (x ^ y) == 0;
  if ((a & b) == 0) return same ? rat(3, 8) : rat(1, 8);
  return same ? rat(1, 2) : Rational(0);
}

Rational pr_rule(int x, int y, int a, int b) { return (x ^ y) == (a & b) ? rat(1, 2) : Rational(0); }

std::string bit(int v) { return std::to_string(v); }

OperationalTheory bell_theory(const std::string& name, const std::string& prep, const JointRule& rule) {
  std::vector<BasicSpec> basics{
      {"A0", {"X0", "X1"}}, {"A1", {"X0", "X1"}}, {"B0", {"Y0", "Y1"}}, {"B1", {"Y0", "Y1"}}};
  std::vector<std::vector<std::string>> conjunctions;
  std::vector<TableEntry> tables;
  for (const auto& b : basics) {
    tables.push_back({MeasurementId::basic(b.label), prep, Distribution::uniform(b.outcomes)});
  }
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      conjunctions.push_back({"A" + bit(a), "B" + bit(b)});
      std::vector<Distribution::Entry> entries;
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) entries.emplace_back("X" + bit(x) + ",Y" + bit(y), rule(x, y, a, b));
      }
      tables.push_back({MeasurementId::conjunction(conjunctions.back()), prep, Distribution(std::move(entries))});
    }
  }
  return OperationalTheory(name, std::move(basics), std::move(conjunctions), {prep}, std::move(tables));
}

OperationalTheory bell_trivial(const std::string& name, const std::string& prep, const JointRule& rule) {
  const std::vector<std::string> z{"Z00", "Z01", "Z10", "Z11"};
  std::vector<BasicSpec> basics;
  std::vector<TableEntry> tables;
  std::vector<MeasurementId> views;
  for (int c1 = 0; c1 < 2; ++c1) {
    for (int c2 = 0; c2 < 2; ++c2) {
      const std::string label = "C" + bit(c1) + bit(c2);
      basics.push_back({label, z});
      std::vector<Distribution::Entry> entries;
      for (int z1 = 0; z1 < 2; ++z1) {
        for (int z2 = 0; z2 < 2; ++z2) entries.emplace_back("Z" + bit(z1) + bit(z2), rule(z1, z2, c1, c2));
      }
      tables.push_back({MeasurementId::basic(label), prep, Distribution(std::move(entries))});
      const auto base = MeasurementId::basic(label);
      views.push_back(MeasurementId::coarse_graining(base, {{"X0", {"Z00", "Z01"}}, {"X1", {"Z10", "Z11"}}}, "1"));
      views.push_back(MeasurementId::coarse_graining(base, {{"Y0", {"Z00", "Z10"}}, {"Y1", {"Z01", "Z11"}}}, "2"));
    }
  }
  return OperationalTheory(name, std::move(basics), {}, {prep}, std::move(tables), std::move(views));
}

// Global joint over (M1..M5) for the mini theory; marginals give every table.
Rational mini_weight(const std::string& prep, const std::array<int, 5>& m) {
  const auto pick = [](int v, Rational p1) { return v ? p1 : Rational(1) - p1; };
  if (prep == "P1") {
    const Rational m2_given_m1 = m[0] ? rat(3, 4) : rat(1, 4);
    const Rational m3_given = (m[0] ^ m[1]) ? rat(2, 3) : rat(1, 3);
    const Rational m4_given_m1 = m[0] ? rat(1, 5) : rat(3, 5);
    return pick(m[0], rat(1, 2)) * pick(m[1], m2_given_m1) * pick(m[2], m3_given) * pick(m[3], m4_given_m1) *
           pick(m[4], rat(1, 4));
  }
  // P2: M1 biased, M2 = M1, M3 independent, M4 = not M1, M5 uniform.
  const Rational m2 = m[1] == m[0] ? Rational(1) : Rational(0);
  const Rational m4 = m[3] != m[0] ? Rational(1) : Rational(0);
  return pick(m[0], rat(2, 3)) * m2 * pick(m[2], rat(1, 6)) * m4 * pick(m[4], rat(1, 2));
}

}  // namespace

OperationalTheory classical_theory() { return bell_theory("classical", "P_CL", classical_rule); }
OperationalTheory epr_theory() { return bell_theory("epr", "P_EPR", epr_rule); }
OperationalTheory pr_theory() { return bell_theory("pr", "P_PR", pr_rule); }

OperationalTheory classical_trivial() { return bell_trivial("classical-trivial", "P_CL", classical_rule); }
OperationalTheory epr_trivial() { return bell_trivial("epr-trivial", "P_EPR", epr_rule); }
OperationalTheory pr_trivial() { return bell_trivial("pr-trivial", "P_PR", pr_rule); }

OperationalTheory mini_theory() {
  const std::vector<std::string> labels{"M1", "M2", "M3", "M4", "M5"};
  std::vector<BasicSpec> basics;
  for (const auto& l : labels) basics.push_back({l, {"0", "1"}});
  // Downward closure of {M1,M2,M3} also brings in M1&M3 and M2&M3.
  std::vector<std::vector<std::string>> conjunctions{
      {"M1", "M2"}, {"M1", "M3"}, {"M2", "M3"}, {"M1", "M2", "M3"}, {"M1", "M4"}};
  const std::vector<std::string> preps{"P1", "P2"};

  std::vector<TableEntry> tables;
  for (const auto& prep : preps) {
    std::vector<std::pair<std::vector<std::size_t>, std::string>> members;
    for (std::size_t i = 0; i < labels.size(); ++i) members.push_back({{i}, labels[i]});
    for (const auto& c : conjunctions) {
      std::vector<std::size_t> idx;
      for (const auto& l : c) idx.push_back(static_cast<std::size_t>(l[1] - '1'));
      members.push_back({idx, conjunction_key(c)});
    }
    for (const auto& [idx, key] : members) {
      std::map<std::string, Rational> mass;
      for (int bits = 0; bits < 32; ++bits) {
        std::array<int, 5> m{};
        for (int k = 0; k < 5; ++k) m[k] = (bits >> (4 - k)) & 1;
        std::vector<std::string> parts;
        for (auto i : idx) parts.push_back(bit(m[i]));
        mass[join_outcome(parts)] += mini_weight(prep, m);
      }
      std::vector<Distribution::Entry> entries(mass.begin(), mass.end());
      tables.push_back({MeasurementId::parse(key), prep, Distribution(std::move(entries))});
    }
  }
  return OperationalTheory("mini", std::move(basics), std::move(conjunctions), preps, std::move(tables));
}

}  // namespace opthy
