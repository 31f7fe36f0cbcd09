#pragma once

#include "opthy/theory.hpp"

namespace opthy {

// Bell-scenario theories: basics A0, A1 (outcomes X0, X1) and B0, B1
// (outcomes Y0, Y1), every A co-measurable with every B, one preparation each
// (P_CL, P_EPR, P_PR). Marginals are uniform; the joints are
//   classical: 1/2 if X xor Y = 0
//   epr:       3/8 | 1/8 (X xor Y = 0 | 1) when A*B = 0, 1/2 | 0 when A*B = 1
//   pr:        1/2 if X xor Y = A*B
OperationalTheory classical_theory();
OperationalTheory epr_theory();
OperationalTheory pr_theory();

// Trivial counterparts: basics C00, C01, C10, C11 with outcomes
// Z00, Z01, Z10, Z11, no conjunctions, the same joint formulas with
// (C1, C2, Z1, Z2) in place of (A, B, X, Y). Each theory declares the views
// Cij^(1) (first index, blocks X0/X1) and Cij^(2) (second index, blocks Y0/Y1).
OperationalTheory classical_trivial();
OperationalTheory epr_trivial();
OperationalTheory pr_trivial();

/// Five binary basics M1..M5 with contexts {M1,M2,M3} and {M1,M4} and a lone
/// M5. Tables are marginals of a global joint per preparation (P1, P2), so
/// the theory is non-disturbing.
OperationalTheory mini_theory();

}  // namespace opthy
