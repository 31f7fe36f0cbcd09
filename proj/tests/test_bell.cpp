#include "opthy/bell.hpp"
#include "opthy/errors.hpp"
#include "opthy/theories.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace opthy;

TEST(Bell, Correlators) {
  EXPECT_EQ(correlator(classical_theory(), 0, 0, "P_CL"), Rational(1));
  EXPECT_EQ(correlator(pr_theory(), 1, 1, "P_PR"), Rational(-1));
  // 2*(3/8) - 2*(1/8)
  EXPECT_EQ(correlator(epr_theory(), 0, 1, "P_EPR"), rat(1, 2));
  EXPECT_EQ(correlator(epr_theory(), 1, 1, "P_EPR"), Rational(1));
  EXPECT_THROW(correlator(epr_theory(), 2, 0, "P_EPR"), PreconditionError);
}

TEST(Bell, ChshOfBuilders) {
  const auto cl = chsh(classical_theory());
  EXPECT_EQ(cl.value, Rational(2));
  EXPECT_EQ(cl.klass, ChshClass::Classical);
  const auto pr = chsh(pr_theory());
  EXPECT_EQ(pr.value, Rational(4));
  EXPECT_EQ(pr.klass, ChshClass::SuperQuantum);
  // Oracle from the EPR table itself: 1/2 + 1/2 + 1/2 - 1.
  const auto epr = chsh(epr_theory());
  EXPECT_EQ(epr.value, rat(1, 2));
  EXPECT_EQ(epr.value, epr.correlators[0] + epr.correlators[1] + epr.correlators[2] - epr.correlators[3]);
}

TEST(Bell, Classification) {
  EXPECT_EQ(classify_chsh(Rational(2)), ChshClass::Classical);
  EXPECT_EQ(classify_chsh(Rational(-2)), ChshClass::Classical);
  EXPECT_EQ(classify_chsh(rat(5, 2)), ChshClass::Quantum);
  EXPECT_EQ(classify_chsh(rat(2828, 1000)), ChshClass::Quantum);
  EXPECT_EQ(classify_chsh(rat(2829, 1000)), ChshClass::SuperQuantum);
  EXPECT_EQ(classify_chsh(Rational(4)), ChshClass::SuperQuantum);
}

TEST(Bell, TrivialTheoriesHaveNoChsh) {
  EXPECT_THROW(chsh(epr_trivial()), PreconditionError);
  EXPECT_THROW(chsh(classical_trivial()), PreconditionError);
  EXPECT_THROW(chsh(mini_theory()), PreconditionError);
}

TEST(BellProperty, ValueBoundedByFour) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::int64_t> w(0, 20);
  for (int round = 0; round < 100; ++round) {
    // Non-disturbing boxes: product of a shared coin with random joints
    // whose marginals are forced uniform by symmetric weights.
    std::vector<BasicSpec> basics{{"A0", {"X0", "X1"}}, {"A1", {"X0", "X1"}}, {"B0", {"Y0", "Y1"}}, {"B1", {"Y0", "Y1"}}};
    std::vector<std::vector<std::string>> conj;
    std::vector<TableEntry> tables;
    for (const auto& b : basics) tables.push_back({MeasurementId::basic(b.label), "P", Distribution::uniform(b.outcomes)});
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        conj.push_back({"A" + std::to_string(a), "B" + std::to_string(b)});
        const auto same = w(rng), diff = w(rng) + 1;
        const auto total = 2 * (same + diff);
        tables.push_back({MeasurementId::conjunction(conj.back()), "P",
                          dist({{"X0,Y0", rat(same, total)},
                                {"X0,Y1", rat(diff, total)},
                                {"X1,Y0", rat(diff, total)},
                                {"X1,Y1", rat(same, total)}})});
      }
    }
    const OperationalTheory t("box", basics, conj, {"P"}, tables);
    ASSERT_TRUE(is_non_disturbing(t).non_disturbing);
    const auto r = chsh(t);
    EXPECT_LE(abs(r.value), Rational(4));
    for (const auto& c : r.correlators) EXPECT_LE(abs(c), Rational(1));
  }
}
