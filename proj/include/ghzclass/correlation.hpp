// Correlation tensor t_ijk = Tr(rho sigma_i (x) sigma_j (x) sigma_k), its
// three 3x3 blocks, their Gram matrices and eigenvalue extremes, and the
// Weyl-type bounds on the Gram trace.
//
// Block layout: block f (f = x, y, z) has entry (r, c) = t_{f, axis c, axis r},
// i.e. the first row of T_x is (t_xxx, t_xyx, t_xzx).

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include "ghzclass/linalg.hpp"
#include "ghzclass/states.hpp"

namespace ghzclass {

enum class Axis : unsigned char { X = 0, Y = 1, Z = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::X, Axis::Y, Axis::Z};

inline Pauli to_pauli(Axis a) { return static_cast<Pauli>(static_cast<int>(a) + 1); }

inline constexpr double kImaginaryResidueTolerance = 1e-12;

/// Real part of Tr(rho * op); throws NumericalError if the imaginary part
/// exceeds the residue tolerance.
inline double real_expectation(const DensityMatrix& rho, const CMat8& op) {
  const cplx t = trace_of_product(rho.matrix(), op);
  if (std::abs(t.imag()) > kImaginaryResidueTolerance * std::max(1.0, frobenius_norm(op))) {
    throw NumericalError("expectation value has a non-negligible imaginary part");
  }
  return t.real();
}

inline double corr_coeff(const DensityMatrix& rho, Axis i, Axis j, Axis k) {
  return real_expectation(rho, PauliTriple{to_pauli(i), to_pauli(j), to_pauli(k)}.matrix());
}

struct CorrelationTensor {
  Mat3 tx{};
  Mat3 ty{};
  Mat3 tz{};

  const Mat3& block(Axis f) const {
    switch (f) {
      case Axis::X: return tx;
      case Axis::Y: return ty;
      default: return tz;
    }
  }
  /// t_{f j k}
  double coeff(Axis f, Axis j, Axis k) const {
    return block(f)(static_cast<std::size_t>(k), static_cast<std::size_t>(j));
  }
};

inline double max_abs_diff(const CorrelationTensor& a, const CorrelationTensor& b) {
  return std::max({max_abs_diff(a.tx, b.tx), max_abs_diff(a.ty, b.ty), max_abs_diff(a.tz, b.tz)});
}

/// Numeric tensor by direct 8x8 traces.
inline CorrelationTensor corr_tensor(const DensityMatrix& rho) {
  CorrelationTensor t;
  Mat3* blocks[3] = {&t.tx, &t.ty, &t.tz};
  for (Axis f : kAxes)
    for (Axis j : kAxes)
      for (Axis k : kAxes)
        (*blocks[static_cast<int>(f)])(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) =
            corr_coeff(rho, f, j, k);
  return t;
}

/// Closed-form tensor of a canonical state, any theta.
inline CorrelationTensor corr_tensor_analytic(const CanonicalState& s) {
  const double l0 = s[0], l1 = s[1], l2 = s[2], l3 = s[3], l4 = s[4];
  const double c = std::cos(s.theta()), sn = std::sin(s.theta());
  CorrelationTensor t;
  t.tx = Mat3{{2 * l0 * l4, 0, 2 * l0 * l2,  //
               0, -2 * l0 * l4, 0,           //
               2 * l0 * l3, 0, 2 * l0 * l1 * c}};
  t.ty = Mat3{{0, -2 * l0 * l4, 0,             //
               -2 * l0 * l4, 0, -2 * l0 * l2,  //
               0, -2 * l0 * l3, 2 * l0 * l1 * sn}};
  const double zxx = -2 * (l2 * l3 + l1 * l4 * c);
  const double zyx = 2 * l1 * l4 * sn;
  const double zzx = 2 * (l3 * l4 - l1 * l2 * c);
  const double zxy = 2 * l1 * l4 * sn;
  const double zyy = 2 * (l1 * l4 * c - l2 * l3);
  const double zzy = 2 * l1 * l2 * sn;
  const double zxz = 2 * (l2 * l4 - l1 * l3 * c);
  const double zyz = 2 * l1 * l3 * sn;
  const double zzz = l0 * l0 - l1 * l1 + l2 * l2 + l3 * l3 - l4 * l4;
  t.tz = Mat3{{zxx, zyx, zzx, zxy, zyy, zzy, zxz, zyz, zzz}};
  return t;
}

/// gx = Tx^T Tx, gy = Ty^T Ty.
struct GramPair {
  Mat3 gx{};
  Mat3 gy{};
};

inline GramPair gram(const CorrelationTensor& t) { return {transpose(t.tx) * t.tx, transpose(t.ty) * t.ty}; }

inline GramPair gram(const DensityMatrix& rho) { return gram(corr_tensor(rho)); }

/// Entry-wise closed forms a_x..d_x and a_y..e_y.
inline GramPair gram_analytic(const CanonicalState& s) {
  const double l0 = s[0], l1 = s[1], l2 = s[2], l3 = s[3], l4 = s[4];
  const double c = std::cos(s.theta()), sn = std::sin(s.theta());
  const double f = 4 * l0 * l0;
  const double ax = f * (l4 * l4 + l3 * l3);
  const double bx = f * (l2 * l4 + l1 * l3 * c);
  const double cx = f * l4 * l4;
  const double dx = f * (l2 * l2 + l1 * l1 * c * c);
  const double ay = f * l4 * l4;
  const double by = f * l2 * l4;
  const double cy = f * (l4 * l4 + l3 * l3);
  const double dy = -f * l1 * l3 * sn;
  const double ey = f * (l2 * l2 + l1 * l1 * sn * sn);
  return {Mat3{{ax, 0, bx, 0, cx, 0, bx, 0, dx}}, Mat3{{ay, 0, by, 0, cy, dy, by, dy, ey}}};
}

/// Tr(gx) + Tr(gy) = 16 l0^2 l4^2 + 8 l0^2 l3^2 + 8 l0^2 l2^2 + 4 l0^2 l1^2 (theta-free).
inline double trace_sum(const CanonicalState& s) {
  const double q0 = s[0] * s[0];
  return 16 * q0 * s[4] * s[4] + 8 * q0 * s[3] * s[3] + 8 * q0 * s[2] * s[2] + 4 * q0 * s[1] * s[1];
}

inline double trace_sum(const GramPair& g) { return trace(g.gx) + trace(g.gy); }

// ---------------------------------------------------------------------------
// Eigenvalue extremes

inline constexpr double kTieTolerance = 1e-12;

/// mu_max(gx) candidates on a subclass support (theta = 0): u = 4 l0^2 l4^2
/// and a support-specific v. Returns nullopt for S1, for states outside the
/// GHZ class, and for theta != 0.
inline std::optional<double> subclass_eigen_candidate(const CanonicalState& s) {
  if (s.theta() != 0.0 || !(s[0] * s[4] > 0.0)) return std::nullopt;
  const SubclassTag tag = structural_subclass(s);
  const double l0 = s[0], l1 = s[1], l2 = s[2], l3 = s[3], l4 = s[4];
  const double q0 = l0 * l0;
  const double k = 1.0 - q0;
  switch (tag.subclass()) {
    case Subclass::S1:
      return std::nullopt;
    case Subclass::S2:
      if (tag.l1) return 4 * q0 * l1 * l1;
      return 4 * q0 * ((tag.l2 ? l2 * l2 : l3 * l3) + l4 * l4);
    case Subclass::S3: {
      if (!tag.l1) return 2 * q0 * (k + std::sqrt(std::max(0.0, k * k - 4 * l2 * l2 * l3 * l3)));
      const double li = tag.l2 ? l2 : l3;
      const double w = l1 * l1 + li * li + l4 * l4;
      return 2 * q0 * (w + std::sqrt(std::max(0.0, w * w - 4 * l1 * l1 * l4 * l4)));
    }
    case Subclass::S4: {
      const double m = l2 * l3 - l1 * l4;
      return 2 * q0 * (k + std::sqrt(std::max(0.0, k * k - 4 * m * m)));
    }
  }
  return std::nullopt;
}

struct EigExtremes {
  double mu_max_x = 0.0;  ///< numeric largest eigenvalue of gx
  double mu_min_y = 0.0;  ///< numeric smallest eigenvalue of gy
  double analytic_u = 0.0;
  std::optional<double> analytic_v;
  bool tie = false;

  /// max{u, v}, or u alone when no v applies.
  double analytic_mu_max() const { return analytic_v ? std::max(analytic_u, *analytic_v) : analytic_u; }
};

inline EigExtremes eig_extremes(const CanonicalState& s) {
  const GramPair g = gram(density(s));
  EigExtremes e;
  e.mu_max_x = eig_sym(g.gx).max();
  e.mu_min_y = eig_sym(g.gy).min();
  e.analytic_u = 4 * s[0] * s[0] * s[4] * s[4];
  e.analytic_v = subclass_eigen_candidate(s);
  e.tie = e.analytic_v && std::abs(*e.analytic_v - e.analytic_u) <= kTieTolerance;
  return e;
}

// ---------------------------------------------------------------------------
// Trace bounds

struct TraceBounds {
  double lower = 0.0;      ///< L = mu_max(gx) + mu_min(gy)
  double upper = 0.0;      ///< U = (4 l0 l4 + 2 sqrt2 l0 l3 + 2 sqrt2 l0 l2 + 2 l0 l1)^2
  double trace_sum = 0.0;  ///< numeric Tr(gx) + Tr(gy)

  double sqrt_upper() const { return std::sqrt(upper); }
  /// sqrt(L) <= sqrt(U): the square-root form, always applicable.
  bool sqrt_form_holds(double tol = 1e-12) const { return std::sqrt(std::max(0.0, lower)) <= sqrt_upper() + tol; }
  /// The linear form L <= sqrt(U) is only derived under 0 <= L <= 1.
  bool linear_form_applicable() const { return lower >= 0.0 && lower <= 1.0; }
  bool linear_form_holds(double tol = 1e-12) const { return lower <= sqrt_upper() + tol; }
};

inline double weyl_upper_bound(const CanonicalState& s) {
  const double r2 = std::numbers::sqrt2;
  const double root = 4 * s[0] * s[4] + 2 * r2 * s[0] * s[3] + 2 * r2 * s[0] * s[2] + 2 * s[0] * s[1];
  return root * root;
}

inline TraceBounds trace_bounds(const CanonicalState& s) {
  const GramPair g = gram(density(s));
  TraceBounds b;
  b.lower = eig_sym(g.gx).max() + eig_sym(g.gy).min();
  b.upper = weyl_upper_bound(s);
  b.trace_sum = trace_sum(g);
  return b;
}

}  // namespace ghzclass
