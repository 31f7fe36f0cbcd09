#include "opthy/bell.hpp"

#include "opthy/errors.hpp"

namespace opthy {

std::string to_string(ChshClass c) {
  switch (c) {
    case ChshClass::Classical: return "Classical";
    case ChshClass::Quantum: return "Quantum";
    case ChshClass::SuperQuantum: return "SuperQuantum";
  }
  return "?";
}

Rational correlator(const OperationalTheory& theory, int a, int b, const std::string& preparation) {
  const std::string la = "A" + std::to_string(a);
  const std::string lb = "B" + std::to_string(b);
  if (theory.is_trivial()) {
    throw PreconditionError("'" + theory.name() + "' has no conjunctions, correlators are undefined");
  }
  const auto conj = MeasurementId::conjunction({la, lb});
  if (!theory.is_member(conj)) throw PreconditionError(conj.key() + " is not a member of '" + theory.name() + "'");
  const auto& members = conj.basics();
  const auto& o0 = theory.basic(members[0]).outcomes;
  const auto& o1 = theory.basic(members[1]).outcomes;
  if (o0.size() != 2 || o1.size() != 2) throw PreconditionError(conj.key() + " is not binary x binary");

  const auto& table = theory.table(conj, preparation);
  Rational even, odd;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const auto& m = table.mass(join_outcome({o0[i], o1[j]}));
      ((i ^ j) == 0 ? even : odd) += m;
    }
  }
  return even - odd;
}

ChshClass classify_chsh(const Rational& value) {
  const auto v = abs(value);
  if (v <= Rational(2)) return ChshClass::Classical;
  if (v * v <= Rational(8)) return ChshClass::Quantum;
  return ChshClass::SuperQuantum;
}

ChshReport chsh(const OperationalTheory& theory, const std::string& preparation) {
  ChshReport r;
  r.correlators = {correlator(theory, 0, 0, preparation), correlator(theory, 0, 1, preparation),
                   correlator(theory, 1, 0, preparation), correlator(theory, 1, 1, preparation)};
  r.value = r.correlators[0] + r.correlators[1] + r.correlators[2] - r.correlators[3];
  r.klass = classify_chsh(r.value);
  return r;
}

ChshReport chsh(const OperationalTheory& theory) {
  if (theory.preparations().size() != 1) {
    throw PreconditionError("'" + theory.name() + "' has several preparations, name one");
  }
  return chsh(theory, theory.preparations().front());
}

}  // namespace opthy
