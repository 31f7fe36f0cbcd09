#pragma once

#include "opthy/ontology.hpp"

namespace opthy {

// Deterministic ontological models of the six Bell-scenario theories.
// classical and pr use ontic states L0, L1 with a uniform prior; epr uses
// L00, L01, L10, L11 (bits of lambda1, lambda2) with prior 1/8 when the bits
// differ and 3/8 when they agree. Basic responses copy a lambda bit into the
// outcome; joint responses:
//   classical: X = Y = lambda
//   pr:        X = lambda, Y xor A*B = lambda
//   epr:       X = lambda1, Y = lambda2 xor (A*B if the bits differ)
// The trivial versions use the same rules on (C1, C2, Z1, Z2).
OntologicalModel classical_model();
OntologicalModel epr_model();
OntologicalModel pr_model();
OntologicalModel classical_trivial_model();
OntologicalModel epr_trivial_model();
OntologicalModel pr_trivial_model();

}  // namespace opthy
