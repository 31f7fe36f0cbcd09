#pragma once

#include "opthy/theory.hpp"

#include <array>
#include <string>

namespace opthy {

enum class ChshClass { Classical, Quantum, SuperQuantum };

std::string to_string(ChshClass c);

struct ChshReport {
  std::array<Rational, 4> correlators;  // <A0,B0>, <A0,B1>, <A1,B0>, <A1,B1>
  Rational value;
  ChshClass klass = ChshClass::Classical;
};

/// <Aa,Bb>_P = p(X xor Y = 0) - p(X xor Y = 1), outcome bits taken from the
/// position of each outcome in its basic's outcome list.
/// Throws PreconditionError when Aa&Bb is not a member or is not 2x2.
Rational correlator(const OperationalTheory& theory, int a, int b, const std::string& preparation);

/// c00 + c01 + c10 - c11; |v| <= 2 is Classical, v^2 <= 8 Quantum.
ChshReport chsh(const OperationalTheory& theory, const std::string& preparation);

/// Uses the only preparation; throws PreconditionError when there are several.
ChshReport chsh(const OperationalTheory& theory);

ChshClass classify_chsh(const Rational& value);

}  // namespace opthy
