#include "opthy/errors.hpp"
#include "opthy/models.hpp"
#include "opthy/theories.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace opthy;

namespace {

std::vector<OntologicalModel> all_models() {
  return {classical_model(), epr_model(), pr_model(), classical_trivial_model(), epr_trivial_model(),
          pr_trivial_model()};
}

bool has_witness(const MeasurementReport& r, const std::string& a, const std::string& b) {
  return std::any_of(r.witnesses.begin(), r.witnesses.end(), [&](const MeasurementWitness& w) {
    return (w.first.key() == a && w.second.key() == b) || (w.first.key() == b && w.second.key() == a);
  });
}

// Brute-force transcription of the composite EPR response, checked cell by cell.
int epr_joint(int x, int y, int a, int b, int l1, int l2) {
  if (x != l1) return 0;
  if ((l1 ^ l2) == 1) return ((y ^ (a & b)) == l2) ? 1 : 0;
  return y == l2 ? 1 : 0;
}

}  // namespace

TEST(Ontology, RecoveryIsExact) {
  const std::vector<OperationalTheory> theories{classical_theory(), epr_theory(),   pr_theory(),
                                                classical_trivial(), epr_trivial(), pr_trivial()};
  const auto models = all_models();
  for (std::size_t i = 0; i < models.size(); ++i) {
    EXPECT_EQ(recover_operational(models[i]), theories[i]) << models[i].name();
    EXPECT_TRUE(recovers_theory(models[i]));
  }
}

TEST(Ontology, AllModelsDeterministic) {
  for (const auto& m : all_models()) {
    EXPECT_TRUE(is_outcome_deterministic(m)) << m.name();
    for (const auto& meas : m.theory().members()) {
      for (const auto& s : m.ontic_states()) EXPECT_TRUE(m.response(meas, s).is_point_mass());
    }
  }
}

TEST(Ontology, EprCompositeResponseOracle) {
  const auto m = epr_model();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const auto conj = MeasurementId::conjunction({"A" + std::to_string(a), "B" + std::to_string(b)});
      for (int l1 = 0; l1 < 2; ++l1) {
        for (int l2 = 0; l2 < 2; ++l2) {
          const auto r = m.response(conj, "L" + std::to_string(l1) + std::to_string(l2));
          for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
              const auto o = "X" + std::to_string(x) + ",Y" + std::to_string(y);
              EXPECT_EQ(r.mass(o), Rational(epr_joint(x, y, a, b, l1, l2)));
            }
          }
        }
      }
    }
  }
  EXPECT_EQ(m.prior("P_EPR").mass("L01"), rat(1, 8));
  EXPECT_EQ(m.prior("P_EPR").mass("L11"), rat(3, 8));
}

TEST(Ontology, ContextualityMatrix) {
  const auto cl = classical_model();
  EXPECT_TRUE(is_simultaneously_noncontextual(cl).noncontextual);
  EXPECT_TRUE(is_measurement_noncontextual(cl).noncontextual);

  for (const auto& m : {epr_model(), pr_model()}) {
    const auto s = is_simultaneously_noncontextual(m);
    ASSERT_FALSE(s.noncontextual) << m.name();
    const bool b1 = std::any_of(s.witnesses.begin(), s.witnesses.end(), [](const SimultaneousWitness& w) {
      return w.measurement.key() == "B1" && w.conjunction.key() == "A1&B1";
    });
    EXPECT_TRUE(b1);
    EXPECT_FALSE(is_measurement_noncontextual(m).noncontextual);
  }

  for (const auto& m : {classical_trivial_model(), epr_trivial_model(), pr_trivial_model()}) {
    const auto s = is_simultaneously_noncontextual(m);
    EXPECT_TRUE(s.noncontextual);
    EXPECT_TRUE(s.witnesses.empty());
  }
  EXPECT_TRUE(is_measurement_noncontextual(classical_trivial_model()).noncontextual);
  for (const auto& m : {epr_trivial_model(), pr_trivial_model()}) {
    const auto r = is_measurement_noncontextual(m);
    EXPECT_FALSE(r.noncontextual);
    EXPECT_TRUE(has_witness(r, "C01^(2)", "C11^(2)")) << m.name();
  }
}

TEST(Ontology, MeasurementNcImpliesSimultaneousNc) {
  for (const auto& m : all_models()) {
    if (!is_simultaneously_noncontextual(m).noncontextual) {
      EXPECT_FALSE(is_measurement_noncontextual(m).noncontextual) << m.name();
    }
  }
}

TEST(Ontology, NonDeterministicModel) {
  auto t = std::make_shared<const OperationalTheory>(
      OperationalTheory("coin", {{"M", {"h", "t"}}}, {}, {"P"},
                        {{MeasurementId::basic("M"), "P", dist({{"h", rat(1, 2)}, {"t", rat(1, 2)}})}}));
  const OntologicalModel m("coin", t, {"l"}, {{"P", dist({{"l", Rational(1)}})}},
                           {{MeasurementId::basic("M"), "l", dist({{"h", rat(1, 2)}, {"t", rat(1, 2)}})}});
  EXPECT_FALSE(is_outcome_deterministic(m));
  EXPECT_TRUE(recovers_theory(m));
}

TEST(Ontology, Validation) {
  auto t = std::make_shared<const OperationalTheory>(
      OperationalTheory("coin", {{"M", {"h", "t"}}}, {}, {"P"},
                        {{MeasurementId::basic("M"), "P", dist({{"h", Rational(1)}})}}));
  const auto resp = dist({{"h", Rational(1)}});
  EXPECT_THROW(OntologicalModel("m", t, {"l"}, {}, {{MeasurementId::basic("M"), "l", resp}}), ValidationError);
  EXPECT_THROW(OntologicalModel("m", t, {"l"}, {{"P", dist({{"l", Rational(1)}})}}, {}), ValidationError);
  EXPECT_THROW(OntologicalModel("m", t, {"l"}, {{"P", dist({{"z", Rational(1)}})}},
                                {{MeasurementId::basic("M"), "l", resp}}),
               ValidationError);
  EXPECT_THROW(OntologicalModel("m", t, {"l", "l"}, {{"P", dist({{"l", Rational(1)}})}},
                                {{MeasurementId::basic("M"), "l", resp}}),
               ValidationError);
  const OntologicalModel ok("m", t, {"l"}, {{"P", dist({{"l", Rational(1)}})}}, {{MeasurementId::basic("M"), "l", resp}});
  EXPECT_THROW(ok.prior("Q"), LookupError);
  EXPECT_THROW(ok.response(MeasurementId::basic("M"), "nope"), LookupError);
}

TEST(Ontology, ViewResponsesAreBlockSums) {
  const auto m = pr_trivial_model();
  const auto v = m.theory().resolve("C11^(2)");
  for (const auto& s : m.ontic_states()) {
    const auto base = m.response(MeasurementId::basic("C11"), s);
    const auto r = m.response(v, s);
    EXPECT_EQ(r.mass("Y0"), base.mass("Z00") + base.mass("Z10"));
  }
}

TEST(Ontology, RebindOntoEqualTheory) {
  const auto m = epr_trivial_model();
  const auto again = m.rebind(std::make_shared<const OperationalTheory>(epr_trivial()));
  EXPECT_TRUE(recovers_theory(again));
}
