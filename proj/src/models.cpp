#include "opthy/models.hpp"

#include "opthy/theories.hpp"

#include <functional>

namespace opthy {

namespace {

int delta(int a, int b) { return a == b ? 1 : 0; }

struct Scheme {
  std::vector<std::string> states;
  std::function<Rational(const std::vector<int>&)> prior;
  // indicator of the joint outcome (x, y) for settings (a, b) at ontic bits l
  std::function<int(int x, int y, int a, int b, const std::vector<int>& l)> joint;
  // outcome bit of the first / second party at l
  std::function<int(const std::vector<int>& l)> first;
  std::function<int(const std::vector<int>& l)> second;
};

std::vector<int> bits_of(const std::string& state) {
  std::vector<int> out;
  for (std::size_t i = 1; i < state.size(); ++i) out.push_back(state[i] - '0');
  return out;
}

Scheme classical_scheme() {
  return {{"L0", "L1"},
          [](const std::vector<int>&) { return rat(1, 2); },
          [](int x, int y, int, int, const std::vector<int>& l) { return delta(x, l[0]) * delta(y, l[0]); },
          [](const std::vector<int>& l) { return l[0]; },
          [](const std::vector<int>& l) { return l[0]; }};
}

Scheme pr_scheme() {
  return {{"L0", "L1"},
          [](const std::vector<int>&) { return rat(1, 2); },
          [](int x, int y, int a, int b, const std::vector<int>& l) {
            return delta(x, l[0]) * delta(y ^ (a & b), l[0]);
          },
          [](const std::vector<int>& l) { return l[0]; },
          [](const std::vector<int>& l) { return l[0]; }};
}

Scheme epr_scheme() {
  return {{"L00", "L01", "L10", "L11"},
          [](const std::vector<int>& l) { return (l[0] ^ l[1]) ? rat(1, 8) : rat(3, 8); },
          [](int x, int y, int a, int b, const std::vector<int>& l) {
            const int differ = l[0] ^ l[1];
            return delta(x, l[0]) * (delta(y ^ (a & b), l[1]) * differ + delta(y, l[1]) * (1 - differ));
          },
          [](const std::vector<int>& l) { return l[0]; },
          [](const std::vector<int>& l) { return l[1]; }};
}

std::string bit(int v) { return std::to_string(v); }

std::map<std::string, Distribution> priors_for(const OperationalTheory& t, const Scheme& s) {
  std::vector<Distribution::Entry> entries;
  for (const auto& st : s.states) entries.emplace_back(st, s.prior(bits_of(st)));
  std::map<std::string, Distribution> out;
  for (const auto& p : t.preparations()) out.emplace(p, Distribution(entries));
  return out;
}

Distribution binary_point(const std::string& prefix, int v) {
  return dist({{prefix + "0", Rational(v == 0 ? 1 : 0)}, {prefix + "1", Rational(v == 1 ? 1 : 0)}});
}

OntologicalModel bell_model(const std::string& name, OperationalTheory theory, const Scheme& s) {
  auto t = std::make_shared<const OperationalTheory>(std::move(theory));
  std::vector<ResponseEntry> responses;
  for (const auto& st : s.states) {
    const auto l = bits_of(st);
    for (int a = 0; a < 2; ++a) {
      responses.push_back({MeasurementId::basic("A" + bit(a)), st, binary_point("X", s.first(l))});
      responses.push_back({MeasurementId::basic("B" + bit(a)), st, binary_point("Y", s.second(l))});
      for (int b = 0; b < 2; ++b) {
        std::vector<Distribution::Entry> entries;
        for (int x = 0; x < 2; ++x) {
          for (int y = 0; y < 2; ++y) entries.emplace_back("X" + bit(x) + ",Y" + bit(y), Rational(s.joint(x, y, a, b, l)));
        }
        responses.push_back({MeasurementId::conjunction({"A" + bit(a), "B" + bit(b)}), st, Distribution(std::move(entries))});
      }
    }
  }
  auto priors = priors_for(*t, s);
  return OntologicalModel(name, t, s.states, std::move(priors), std::move(responses));
}

OntologicalModel trivial_model(const std::string& name, OperationalTheory theory, const Scheme& s) {
  auto t = std::make_shared<const OperationalTheory>(std::move(theory));
  std::vector<ResponseEntry> responses;
  for (const auto& st : s.states) {
    const auto l = bits_of(st);
    for (int c1 = 0; c1 < 2; ++c1) {
      for (int c2 = 0; c2 < 2; ++c2) {
        std::vector<Distribution::Entry> entries;
        for (int z1 = 0; z1 < 2; ++z1) {
          for (int z2 = 0; z2 < 2; ++z2) entries.emplace_back("Z" + bit(z1) + bit(z2), Rational(s.joint(z1, z2, c1, c2, l)));
        }
        responses.push_back({MeasurementId::basic("C" + bit(c1) + bit(c2)), st, Distribution(std::move(entries))});
      }
    }
  }
  auto priors = priors_for(*t, s);
  return OntologicalModel(name, t, s.states, std::move(priors), std::move(responses));
}

}  // namespace

OntologicalModel classical_model() { return bell_model("classical", classical_theory(), classical_scheme()); }
OntologicalModel epr_model() { return bell_model("epr", epr_theory(), epr_scheme()); }
OntologicalModel pr_model() { return bell_model("pr", pr_theory(), pr_scheme()); }
OntologicalModel classical_trivial_model() {
  return trivial_model("classical-trivial", classical_trivial(), classical_scheme());
}
OntologicalModel epr_trivial_model() { return trivial_model("epr-trivial", epr_trivial(), epr_scheme()); }
OntologicalModel pr_trivial_model() { return trivial_model("pr-trivial", pr_trivial(), pr_scheme()); }

}  // namespace opthy
