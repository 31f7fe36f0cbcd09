#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace opthy {

using Amplitude = std::complex<double>;

/// State vector of dimension 2 or 4. Normalization is checked where it
/// matters (projectors, born), not on construction.
class Ket {
 public:
  explicit Ket(std::vector<Amplitude> amplitudes);

  const std::vector<Amplitude>& amplitudes() const { return amp_; }
  std::size_t dim() const { return amp_.size(); }
  double norm2() const;
  bool is_normalized(double tol = 1e-12) const;

  /// <this|other>
  Amplitude inner(const Ket& other) const;
  Ket tensor(const Ket& other) const;

 private:
  std::vector<Amplitude> amp_;
};

/// Rank-1 projector |v><v| on a qubit.
class Projector {
 public:
  /// Throws ValidationError unless v is a normalized qubit ket.
  explicit Projector(Ket v);
  const Ket& ket() const { return v_; }

 private:
  Ket v_;
};

/// Qubit ket with Bloch angles (theta, phi).
Ket bloch_ket(double theta, double phi);
/// Antiunitary partner (v0, v1) -> (conj v1, -conj v0), orthogonal to v.
Ket flip(const Ket& v);

/// (|01> - |10>) / sqrt 2
Ket singlet();

struct MeasurementVectors {
  // [setting][outcome]
  std::array<std::array<Ket, 2>, 2> a;
  std::array<std::array<Ket, 2>, 2> b;
};

/// a0 along z, b0 at 60 degrees in the xz-plane, a1 = b1 at 60 degrees from z
/// with azimuth phi, cos phi = 1/3. Outcome 1 is the orthogonal partner.
/// Overlaps |<X^A|Y^B>|^2 are 3/4 | 1/4 (same | different outcome) when
/// A*B = 0 and 1 | 0 when A*B = 1.
MeasurementVectors build_measurement_vectors(std::optional<double> b1_rotation = std::nullopt);

/// <psi| (L (x) R) |psi> for a two-qubit state; a missing side is the
/// identity. Throws ValidationError for a non-normalized state or a state
/// that is not two-qubit.
double born(const Ket& state, const std::optional<Projector>& left, const std::optional<Projector>& right);

struct BornCell {
  std::string label;  // "A0&B1 X0,Y1", "A1 X0", "B0 Y1", "C01 Z10"
  double born = 0.0;
  double expected = 0.0;
  double deviation = 0.0;
};

struct RealizationReport {
  bool pass = false;
  double tolerance = 1e-9;
  double max_deviation = 0.0;
  double max_completeness_error = 0.0;
  std::vector<BornCell> cells;  // 16 joint, 8 marginal, then 16 product-basis cells
};

/// Born values of the singlet with Alice projecting on |X^A> and Bob on the
/// partner of |Y^B>, compared with the exact EPR tables (two-party and
/// trivial). Passes when every deviation is within 1e-9 and every outcome
/// family sums to 1 within 1e-12. `b1_rotation` turns b1 about z by the
/// given angle to break the construction.
RealizationReport verify_epr_realization(std::optional<double> b1_rotation = std::nullopt);

}  // namespace opthy
