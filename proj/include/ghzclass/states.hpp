// Canonical five-parameter three-qubit states, their state-vector and
// density-matrix forms, partial traces, and structural subclass tags.
//
//   |psi> = l0|000> + l1 e^{i theta}|100> + l2|101> + l3|110> + l4|111>
//
// Basis index is 4a + 2b + c for |abc>, qubit A leftmost.

#pragma once

#include <array>
#include <bit>
#include <initializer_list>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghzclass/linalg.hpp"

namespace ghzclass {

inline constexpr double kStrictNormTolerance = 1e-9;
inline constexpr double kRelaxedNormTolerance = 1e-4;
inline constexpr double kSubclassZeroThreshold = 1e-12;
inline constexpr double kVectorNormTolerance = 1e-9;

struct NormPolicy {
  double tolerance = kStrictNormTolerance;
  bool renormalize = false;

  static NormPolicy strict() { return {}; }
  /// For parameters quoted to ~6 significant digits.
  static NormPolicy relaxed() { return {kRelaxedNormTolerance, true}; }
};

class CanonicalState {
 public:
  using Lambdas = std::array<double, 5>;

  /// Validates ranges and normalization. Throws InputError.
  CanonicalState(const Lambdas& lambda, double theta, NormPolicy policy = NormPolicy::strict())
      : lambda_(lambda), theta_(theta) {
    for (std::size_t i = 0; i < 5; ++i) {
      const double l = lambda_[i];
      if (!std::isfinite(l) || l < 0.0 || l > 1.0) {
        throw InputError("lambda" + std::to_string(i) + " = " + std::to_string(l) + " is outside [0,1]");
      }
    }
    if (!std::isfinite(theta) || theta < 0.0 || theta > std::numbers::pi) {
      throw InputError("theta = " + std::to_string(theta) + " is outside [0,pi]");
    }
    const double n2 = norm_squared();
    if (!(std::abs(n2 - 1.0) <= policy.tolerance)) {
      throw InputError("normalization violated: sum of lambda^2 = " + std::to_string(n2));
    }
    if (policy.renormalize) {
      const double n = std::sqrt(n2);
      for (auto& l : lambda_) l /= n;
    }
  }

  const Lambdas& lambda() const { return lambda_; }
  double operator[](std::size_t i) const { return lambda_[i]; }
  double theta() const { return theta_; }

  double norm_squared() const {
    double s = 0.0;
    for (double l : lambda_) s += l * l;
    return s;
  }

  friend bool operator==(const CanonicalState&, const CanonicalState&) = default;

 private:
  Lambdas lambda_{};
  double theta_ = 0.0;
};

inline CanonicalState make_canonical(const CanonicalState::Lambdas& lambda, double theta,
                                     NormPolicy policy = NormPolicy::strict()) {
  return CanonicalState(lambda, theta, policy);
}

/// Eight amplitudes in 4a+2b+c order, unit norm.
class StateVector {
 public:
  using Amplitudes = std::array<cplx, 8>;

  explicit StateVector(const Amplitudes& amps, double tol = kVectorNormTolerance) : amps_(amps) {
    double n2 = 0.0;
    for (const auto& a : amps_) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw InputError("non-finite amplitude");
      n2 += std::norm(a);
    }
    if (!(std::abs(n2 - 1.0) <= tol)) {
      throw InputError("state vector is not normalized: norm^2 = " + std::to_string(n2));
    }
  }

  /// Rescales arbitrary non-zero amplitudes to unit norm.
  static StateVector normalized(Amplitudes amps) {
    double n2 = 0.0;
    for (const auto& a : amps) n2 += std::norm(a);
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw InputError("cannot normalize a zero or non-finite vector");
    const double n = std::sqrt(n2);
    for (auto& a : amps) a /= n;
    return StateVector(amps);
  }

  const Amplitudes& amplitudes() const { return amps_; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

 private:
  Amplitudes amps_{};
};

inline StateVector to_vector(const CanonicalState& s) {
  StateVector::Amplitudes a{};
  a[0] = s[0];
  a[4] = std::polar(s[1], s.theta());
  a[5] = s[2];
  a[6] = s[3];
  a[7] = s[4];
  // Canonical states are validated against at most the relaxed tolerance.
  return StateVector(a, kRelaxedNormTolerance);
}

class DensityMatrix {
 public:
  explicit DensityMatrix(const HermMat8& rho) : rho_(rho) {}

  const HermMat8& rho() const { return rho_; }
  const CMat8& matrix() const { return rho_.matrix(); }

  double purity() const { return std::real(trace_of_product(matrix(), matrix())); }

 private:
  HermMat8 rho_;
};

/// rho = v v^dagger
inline DensityMatrix density(const StateVector& v) {
  CMat8 m{};
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) m(i, j) = v[i] * std::conj(v[j]);
  return DensityMatrix(HermMat8(m));
}

inline DensityMatrix density(const CanonicalState& s) { return density(to_vector(s)); }

// ---------------------------------------------------------------------------
// Partial traces

enum class Qubit : unsigned char { A = 0, B = 1, C = 2 };

/// Bit set over {A, B, C}; bit 2 = A, bit 1 = B, bit 0 = C.
struct Subsystems {
  unsigned mask = 0;

  static Subsystems of(std::initializer_list<Qubit> qs) {
    Subsystems s;
    for (Qubit q : qs) s.mask |= 4u >> static_cast<unsigned>(q);
    return s;
  }
  /// Parses "A", "AB", "BC", ... (any order). Throws InputError.
  static Subsystems parse(std::string_view text) {
    Subsystems s;
    for (char ch : text) {
      unsigned bit = 0;
      switch (ch) {
        case 'A': case 'a': bit = 4; break;
        case 'B': case 'b': bit = 2; break;
        case 'C': case 'c': bit = 1; break;
        default: throw InputError(std::string("unknown subsystem '") + ch + "'");
      }
      if (s.mask & bit) throw InputError("subsystem listed twice");
      s.mask |= bit;
    }
    return s;
  }
  bool contains(Qubit q) const { return mask & (4u >> static_cast<unsigned>(q)); }
  int count() const { return std::popcount(mask); }
};

/// Reduced density matrix of dimension 2 or 4 in row-major order.
struct ReducedDensity {
  std::size_t dim = 0;
  std::vector<cplx> entries;

  const cplx& operator()(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }
  cplx trace() const {
    cplx t{};
    for (std::size_t i = 0; i < dim; ++i) t += (*this)(i, i);
    return t;
  }
};

/// Keeps one or two of the three qubits. The full set and the empty set are
/// rejected.
inline ReducedDensity partial_trace(const DensityMatrix& rho, Subsystems keep) {
  const int kept = keep.count();
  if (keep.mask > 7u || kept < 1 || kept > 2) throw InputError("partial_trace keeps one or two qubits");

  const std::array<unsigned, 3> bit{4u, 2u, 1u};
  std::vector<unsigned> kept_bits, traced_bits;
  for (unsigned b : bit) (keep.mask & b ? kept_bits : traced_bits).push_back(b);

  const std::size_t dim = std::size_t{1} << kept;
  ReducedDensity out{dim, std::vector<cplx>(dim * dim)};
  auto compose = [](const std::vector<unsigned>& bits, std::size_t local) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < bits.size(); ++k)
      if (local & (std::size_t{1} << (bits.size() - 1 - k))) idx |= bits[k];
    return idx;
  };
  const std::size_t env = std::size_t{1} << traced_bits.size();
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      cplx acc{};
      for (std::size_t e = 0; e < env; ++e) {
        const std::size_t t = compose(traced_bits, e);
        acc += rho.matrix()(compose(kept_bits, r) | t, compose(kept_bits, c) | t);
      }
      out.entries[r * dim + c] = acc;
    }
  return out;
}

template <std::size_t N>
CMat<N> to_fixed(const ReducedDensity& r) {
  if (r.dim != N) throw InputError("reduced density has unexpected dimension");
  CMat<N> m{};
  for (std::size_t i = 0; i < N * N; ++i) m.data[i] = r.entries[i];
  return m;
}

inline CMat4 reduced_pair(const DensityMatrix& rho, Qubit first, Qubit second) {
  return to_fixed<4>(partial_trace(rho, Subsystems::of({first, second})));
}

inline CMat2 reduced_single(const DensityMatrix& rho, Qubit q) {
  return to_fixed<2>(partial_trace(rho, Subsystems::of({q})));
}

// ---------------------------------------------------------------------------
// Structural subclass

enum class Subclass : unsigned char { S1 = 1, S2 = 2, S3 = 3, S4 = 4 };

/// Which of l1, l2, l3 are non-zero.
struct SubclassTag {
  bool l1 = false;
  bool l2 = false;
  bool l3 = false;

  Subclass subclass() const { return static_cast<Subclass>(1 + int(l1) + int(l2) + int(l3)); }

  /// "S1", "S2(l1)", "S3(l2l3)", "S4".
  std::string label() const {
    const Subclass s = subclass();
    if (s == Subclass::S1) return "S1";
    if (s == Subclass::S4) return "S4";
    std::string out = "S" + std::to_string(static_cast<int>(s)) + "(";
    if (l1) out += "l1";
    if (l2) out += "l2";
    if (l3) out += "l3";
    return out + ")";
  }

  friend bool operator==(const SubclassTag&, const SubclassTag&) = default;
};

/// Requires l0 l4 > 0; states outside the GHZ class are rejected.
inline SubclassTag structural_subclass(const CanonicalState& s) {
  if (!(s[0] * s[4] > 0.0)) throw InputError("structural_subclass: l0*l4 = 0, state is outside the GHZ class");
  return {s[1] > kSubclassZeroThreshold, s[2] > kSubclassZeroThreshold, s[3] > kSubclassZeroThreshold};
}

}  // namespace ghzclass
