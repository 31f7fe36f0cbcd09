#pragma once

#include "opthy/theory.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace opthy {

struct ResponseEntry {
  MeasurementId measurement;
  std::string state;
  Distribution dist;
};

/// Ontological model of an operational theory: a prior over ontic states
/// for each preparation and a response distribution for each member
/// measurement at each ontic state.
///
/// Priors take no measurement argument and responses take no preparation
/// argument, so no-conspiracy and lambda-sufficiency hold by construction.
/// Responses of coarse-grainings (including conjunction marginals) are
/// derived by summing the base response over each block.
class OntologicalModel {
 public:
  /// Throws ValidationError when a prior is missing for some preparation,
  /// a response is missing for some (member, state), or any support is wrong.
  /// Labels omitted from a prior or response carry mass zero.
  OntologicalModel(std::string name, std::shared_ptr<const OperationalTheory> theory,
                   std::vector<std::string> ontic_states, std::map<std::string, Distribution> priors,
                   std::vector<ResponseEntry> responses);

  const std::string& name() const { return name_; }
  const OperationalTheory& theory() const { return *theory_; }
  std::shared_ptr<const OperationalTheory> theory_ptr() const { return theory_; }
  const std::vector<std::string>& ontic_states() const { return states_; }

  const Distribution& prior(const std::string& preparation) const;
  /// p(.|M, state) for a member, a coarse-graining of a member, or a declared view.
  Distribution response(const MeasurementId& m, const std::string& state) const;

  /// Same priors and responses attached to another theory with the same
  /// members and preparations (e.g. a theory loaded from disk).
  OntologicalModel rebind(std::shared_ptr<const OperationalTheory> theory) const;

 private:
  std::string name_;
  std::shared_ptr<const OperationalTheory> theory_;
  std::vector<std::string> states_;
  std::map<std::string, Distribution> priors_;
  std::map<std::pair<std::string, std::string>, Distribution> responses_;
};

/// p(X|M,P) = sum over states of p(X|M,state) p(state|P), for every member.
OperationalTheory recover_operational(const OntologicalModel& model);

/// Recovered tables equal the model's theory exactly.
bool recovers_theory(const OntologicalModel& model);

/// Every response mass is 0 or 1.
bool is_outcome_deterministic(const OntologicalModel& model);

struct SimultaneousWitness {
  MeasurementId measurement;  // standalone sub-measurement
  MeasurementId conjunction;
  std::string state;
};

struct SimultaneousReport {
  bool noncontextual = true;
  std::vector<SimultaneousWitness> witnesses;
};

/// p(X|Mi,state) equals the Mi-marginal of p(.|Mi&Mj,state) for every
/// member conjunction, every sub-measurement and every state.
SimultaneousReport is_simultaneously_noncontextual(const OntologicalModel& model);

struct MeasurementWitness {
  MeasurementId first;
  MeasurementId second;
  std::string state;
};

struct MeasurementReport {
  bool noncontextual = true;
  std::size_t equivalent_pairs = 0;
  std::vector<MeasurementWitness> witnesses;
};

/// For every pair among members, declared views and conjunction marginals
/// that have the same outcome count and are operationally equivalent
/// (outcomes paired by position), the responses agree at every state.
MeasurementReport is_measurement_noncontextual(const OntologicalModel& model);

/// Members, declared views and derived conjunction marginals, deduplicated.
std::vector<MeasurementId> equivalence_candidates(const OperationalTheory& theory);

}  // namespace opthy
