#include "opthy/quantum.hpp"

#include "opthy/errors.hpp"
#include "opthy/theories.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace opthy {

Ket::Ket(std::vector<Amplitude> amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.size() != 2 && amp_.size() != 4) throw ValidationError("kets have dimension 2 or 4");
}

double Ket::norm2() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return s;
}

bool Ket::is_normalized(double tol) const { return std::abs(norm2() - 1.0) <= tol; }

Amplitude Ket::inner(const Ket& other) const {
  if (other.dim() != dim()) throw ValidationError("inner product of kets with different dimensions");
  Amplitude s{};
  for (std::size_t i = 0; i < dim(); ++i) s += std::conj(amp_[i]) * other.amp_[i];
  return s;
}

Ket Ket::tensor(const Ket& other) const {
  if (dim() != 2 || other.dim() != 2) throw ValidationError("tensor product is defined for qubits only");
  return Ket({amp_[0] * other.amp_[0], amp_[0] * other.amp_[1], amp_[1] * other.amp_[0], amp_[1] * other.amp_[1]});
}

Projector::Projector(Ket v) : v_(std::move(v)) {
  if (v_.dim() != 2) throw ValidationError("projectors act on a qubit");
  if (!v_.is_normalized()) throw ValidationError("projector from a non-normalized ket");
}

Ket bloch_ket(double theta, double phi) {
  return Ket({std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)});
}

Ket flip(const Ket& v) {
  if (v.dim() != 2) throw ValidationError("flip acts on a qubit");
  return Ket({std::conj(v.amplitudes()[1]), -std::conj(v.amplitudes()[0])});
}

Ket singlet() {
  const double h = 1.0 / std::numbers::sqrt2;
  return Ket({0.0, h, -h, 0.0});
}

MeasurementVectors build_measurement_vectors(std::optional<double> b1_rotation) {
  const double theta = std::numbers::pi / 3;
  const double phi = std::acos(1.0 / 3.0);
  const auto basis = [](const Ket& k) { return std::array<Ket, 2>{k, flip(k)}; };
  MeasurementVectors v{{basis(bloch_ket(0.0, 0.0)), basis(bloch_ket(theta, phi))},
                       {basis(bloch_ket(theta, 0.0)), basis(bloch_ket(theta, phi + b1_rotation.value_or(0.0)))}};
  return v;
}

double born(const Ket& state, const std::optional<Projector>& left, const std::optional<Projector>& right) {
  if (state.dim() != 4) throw ValidationError("born expects a two-qubit state");
  if (!state.is_normalized()) throw ValidationError("born expects a normalized state");
  // Apply each side's operator to |psi>, then take <psi|.|psi>.
  std::vector<Amplitude> out = state.amplitudes();
  if (left) {
    const auto& u = left->ket().amplitudes();
    for (std::size_t j = 0; j < 2; ++j) {
      const Amplitude c = std::conj(u[0]) * out[0 * 2 + j] + std::conj(u[1]) * out[1 * 2 + j];
      out[0 * 2 + j] = u[0] * c;
      out[1 * 2 + j] = u[1] * c;
    }
  }
  if (right) {
    const auto& w = right->ket().amplitudes();
    for (std::size_t i = 0; i < 2; ++i) {
      const Amplitude c = std::conj(w[0]) * out[i * 2 + 0] + std::conj(w[1]) * out[i * 2 + 1];
      out[i * 2 + 0] = w[0] * c;
      out[i * 2 + 1] = w[1] * c;
    }
  }
  Amplitude s{};
  for (std::size_t k = 0; k < 4; ++k) s += std::conj(state.amplitudes()[k]) * out[k];
  return s.real();
}

RealizationReport verify_epr_realization(std::optional<double> b1_rotation) {
  const auto v = build_measurement_vectors(b1_rotation);
  const auto psi = singlet();
  const auto bell = epr_theory();
  const auto trivial = epr_trivial();
  const auto& prep = bell.preparations().front();
  RealizationReport r;

  const auto record = [&](std::string label, double value, double expected) {
    const double dev = std::abs(value - expected);
    r.max_deviation = std::max(r.max_deviation, dev);
    r.cells.push_back({std::move(label), value, expected, dev});
  };
  const auto alice = [&](int a, int x) { return Projector(v.a[a][x]); };
  const auto bob = [&](int b, int y) { return Projector(flip(v.b[b][y])); };
  const std::string d[2] = {"0", "1"};

  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const auto conj = MeasurementId::conjunction({"A" + d[a], "B" + d[b]});
      double total = 0.0;
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          const double p = born(psi, alice(a, x), bob(b, y));
          total += p;
          const auto outcome = "X" + d[x] + ",Y" + d[y];
          record(conj.key() + " " + outcome, p, bell.table(conj, prep).mass(outcome).to_double());
        }
      }
      r.max_completeness_error = std::max(r.max_completeness_error, std::abs(total - 1.0));
    }
  }
  for (int s = 0; s < 2; ++s) {
    double ta = 0.0, tb = 0.0;
    for (int o = 0; o < 2; ++o) {
      const double pa = born(psi, alice(s, o), std::nullopt);
      const double pb = born(psi, std::nullopt, bob(s, o));
      ta += pa;
      tb += pb;
      record("A" + d[s] + " X" + d[o], pa, bell.table(MeasurementId::basic("A" + d[s]), prep).mass("X" + d[o]).to_double());
      record("B" + d[s] + " Y" + d[o], pb, bell.table(MeasurementId::basic("B" + d[s]), prep).mass("Y" + d[o]).to_double());
    }
    r.max_completeness_error = std::max({r.max_completeness_error, std::abs(ta - 1.0), std::abs(tb - 1.0)});
  }
  // Global measurements: product bases |X^A> (x) partner(|Y^B>).
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const auto c = MeasurementId::basic("C" + d[a] + d[b]);
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          const auto family = v.a[a][x].tensor(flip(v.b[b][y]));
          const double p = std::norm(family.inner(psi));
          const auto z = "Z" + d[x] + d[y];
          record(c.key() + " " + z, p, trivial.table(c, prep).mass(z).to_double());
        }
      }
    }
  }
  r.pass = r.max_deviation <= r.tolerance && r.max_completeness_error <= 1e-12;
  return r;
}

}  // namespace opthy
