#include "opthy/errors.hpp"
#include "opthy/theories.hpp"
#include "opthy/theory.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace opthy;

namespace {

// Independent transcription of the two-party tables.
Rational epr_cell(int x, int y, int a, int b) {
  if (a * b == 0) return (x ^ y) ? rat(1, 8) : rat(3, 8);
  return (x ^ y) ? Rational(0) : rat(1, 2);
}

OperationalTheory two_basic(const Distribution& joint, const Distribution& m1) {
  return OperationalTheory("t", {{"M1", {"0", "1"}}, {"M2", {"0", "1"}}}, {{"M1", "M2"}}, {"P"},
                           {{MeasurementId::basic("M1"), "P", m1},
                            {MeasurementId::basic("M2"), "P", dist({{"0", rat(1, 2)}, {"1", rat(1, 2)}})},
                            {MeasurementId::parse("M1&M2"), "P", joint}});
}

}  // namespace

TEST(Theory, EprTableMatchesOracle) {
  const auto t = epr_theory();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const auto m = MeasurementId::conjunction({"A" + std::to_string(a), "B" + std::to_string(b)});
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          const auto o = "X" + std::to_string(x) + ",Y" + std::to_string(y);
          EXPECT_EQ(probability(t, o, m, "P_EPR"), epr_cell(x, y, a, b)) << m.key() << " " << o;
        }
      }
    }
  }
}

TEST(Theory, ConjunctionOutcomeOrder) {
  const auto t = classical_theory();
  const std::vector<std::string> want{"X0,Y0", "X0,Y1", "X1,Y0", "X1,Y1"};
  EXPECT_EQ(t.outcomes(MeasurementId::parse("A1&B0")), want);
  EXPECT_EQ(MeasurementId::parse("B0&A1"), MeasurementId::parse("A1&B0"));
}

TEST(Theory, AllBuildersNonDisturbing) {
  for (const auto& t : {classical_theory(), epr_theory(), pr_theory(), classical_trivial(), epr_trivial(),
                        pr_trivial(), mini_theory()}) {
    const auto r = is_non_disturbing(t);
    EXPECT_TRUE(r.non_disturbing) << t.name();
    EXPECT_TRUE(r.violations.empty());
  }
}

TEST(Theory, DetectsDisturbance) {
  const auto joint = dist({{"0,0", rat(1, 2)}, {"1,1", rat(1, 2)}});
  const auto t = two_basic(joint, dist({{"0", rat(1, 4)}, {"1", rat(3, 4)}}));
  const auto r = is_non_disturbing(t);
  ASSERT_FALSE(r.non_disturbing);
  EXPECT_EQ(r.violations.front().measurement.key(), "M1");
  EXPECT_EQ(r.violations.front().conjunction.key(), "M1&M2");
}

TEST(Theory, ValidationErrors) {
  const std::vector<BasicSpec> basics{{"M1", {"0", "1"}}, {"M2", {"0", "1"}}, {"M3", {"0", "1"}}};
  // Downward closure: M1&M2&M3 without its pairs.
  EXPECT_THROW(OperationalTheory("t", basics, {{"M1", "M2", "M3"}}, {"P"}, {}), ValidationError);
  // Missing table.
  EXPECT_THROW(OperationalTheory("t", basics, {}, {"P"}, {}), ValidationError);
  // Duplicate basic label.
  EXPECT_THROW(OperationalTheory("t", {{"M1", {"0"}}, {"M1", {"0"}}}, {}, {"P"}, {}), ValidationError);
  // Unknown outcome in a table.
  EXPECT_THROW(OperationalTheory("t", {{"M1", {"0", "1"}}}, {}, {"P"},
                                 {{MeasurementId::basic("M1"), "P", dist({{"2", Rational(1)}})}}),
               ValidationError);
}

TEST(Theory, MissingOutcomesCountAsZero) {
  const OperationalTheory t("t", {{"M1", {"0", "1"}}}, {}, {"P"},
                            {{MeasurementId::basic("M1"), "P", dist({{"1", Rational(1)}})}});
  EXPECT_EQ(probability(t, "0", MeasurementId::basic("M1"), "P"), Rational(0));
  EXPECT_THROW(probability(t, "0", MeasurementId::basic("M9"), "P"), LookupError);
  EXPECT_THROW(probability(t, "0", MeasurementId::basic("M1"), "Q"), LookupError);
}

TEST(Theory, ContextsOfMini) {
  const auto t = mini_theory();
  const auto c = contexts(t);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], (Context{"M1", "M2", "M3"}));
  EXPECT_EQ(c[1], (Context{"M1", "M4"}));
  const auto with_lone = contexts(t, LoneBasics::AsSingletons);
  ASSERT_EQ(with_lone.size(), 3u);
  EXPECT_EQ(with_lone[2], (Context{"M5"}));
  EXPECT_TRUE(contexts(epr_trivial()).empty());
  EXPECT_EQ(contexts(epr_trivial(), LoneBasics::AsSingletons).size(), 4u);
}

TEST(Theory, ComponentMarginal) {
  const auto t = epr_theory();
  const auto m = component_marginal(t, MeasurementId::parse("A0&B1"), {"B1"});
  EXPECT_EQ(m.key(), "A0&B1^(2)");
  EXPECT_EQ(marginal_target(m), MeasurementId::basic("B1"));
  const auto d = t.distribution(m, "P_EPR");
  EXPECT_EQ(d.mass("Y0"), rat(1, 2));
  EXPECT_EQ(t.resolve("A0&B1^(2)"), m);
  EXPECT_EQ(derived_views(t).size(), 8u);
}

TEST(Theory, CoarseGrainingSumsBlocks) {
  const auto t = epr_trivial();
  const auto v = t.resolve("C11^(2)");
  const auto d = t.distribution(v, "P_EPR");
  const auto& base = t.table(MeasurementId::basic("C11"), "P_EPR");
  // Block oracle: Y0 = Z00 + Z10.
  EXPECT_EQ(d.mass("Y0"), base.mass("Z00") + base.mass("Z10"));
  EXPECT_EQ(d.mass("Y1"), base.mass("Z01") + base.mass("Z11"));
}

TEST(Theory, OperationalEquivalenceExamples) {
  const auto t = epr_trivial();
  EXPECT_TRUE(are_operationally_equivalent(t, t.resolve("C01^(2)"), t.resolve("C11^(2)")));
  EXPECT_FALSE(are_operationally_equivalent(t, MeasurementId::basic("C00"), MeasurementId::basic("C11")));
  EXPECT_THROW(are_operationally_equivalent(t, MeasurementId::basic("C00"), t.resolve("C00^(1)")),
               PreconditionError);
  // Explicit correspondence swapping the outcomes.
  const OutcomeCorrespondence swap{{"Y0", "Y1"}, {"Y1", "Y0"}};
  EXPECT_TRUE(are_operationally_equivalent(t, t.resolve("C01^(2)"), t.resolve("C11^(2)"), swap));
}

TEST(TheoryProperty, EquivalenceIsAnEquivalenceRelation) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 20; ++round) {
    // Random trivial theory over six binary basics, masses from a small grid
    // so that coincidences (equivalences) are frequent.
    std::uniform_int_distribution<int> w(0, 2);
    std::vector<BasicSpec> basics;
    std::vector<TableEntry> tables;
    for (int i = 0; i < 6; ++i) {
      const auto label = "M" + std::to_string(i);
      basics.push_back({label, {"0", "1"}});
      for (const auto* p : {"P", "Q"}) {
        const auto a = w(rng);
        tables.push_back({MeasurementId::basic(label), p, dist({{"0", rat(a, 2)}, {"1", rat(2 - a, 2)}})});
      }
    }
    const OperationalTheory t("r", basics, {}, {"P", "Q"}, tables);
    const auto eq = [&](int i, int j) {
      return are_operationally_equivalent(t, MeasurementId::basic("M" + std::to_string(i)),
                                          MeasurementId::basic("M" + std::to_string(j)));
    };
    for (int i = 0; i < 6; ++i) {
      EXPECT_TRUE(eq(i, i));
      for (int j = 0; j < 6; ++j) {
        EXPECT_EQ(eq(i, j), eq(j, i));
        for (int k = 0; k < 6; ++k) {
          if (eq(i, j) && eq(j, k)) EXPECT_TRUE(eq(i, k));
        }
      }
    }
  }
}

TEST(Theory, MiniTablesAreMarginalsOfEachOther) {
  const auto t = mini_theory();
  for (const auto& p : t.preparations()) {
    const auto& joint = t.table(MeasurementId::parse("M1&M2&M3"), p);
    const auto& pair = t.table(MeasurementId::parse("M1&M3"), p);
    for (const auto* a : {"0", "1"}) {
      for (const auto* c : {"0", "1"}) {
        const Rational sum = joint.mass(join_outcome({a, "0", c})) + joint.mass(join_outcome({a, "1", c}));
        EXPECT_EQ(pair.mass(join_outcome({a, c})), sum);
      }
    }
  }
}
