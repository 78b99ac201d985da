// Three-tangle, pairwise concurrences (closed forms and the Wootters
// formula), local-unitary invariants, and the Sudbery invariant list.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "ghzclass/linalg.hpp"
#include "ghzclass/states.hpp"

namespace ghzclass {

/// tau = 4 l0^2 l4^2
inline double tangle(const CanonicalState& s) { return 4 * s[0] * s[0] * s[4] * s[4]; }

/// C^2_{A(BC)} = 4 det(rho_A), valid for pure three-qubit states.
inline double concurrence_a_bc_squared(const DensityMatrix& rho) {
  const CMat2 a = reduced_single(rho, Qubit::A);
  return 4.0 * std::real(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0));
}

inline constexpr double kNegativeEigenTolerance = 1e-10;

// Eigenvalues of rho below this fraction of the trace are treated as exact
// zeros when building the pure-state decomposition.
inline constexpr double kRankCutoff = 1e-13;

/// Wootters concurrence of a two-qubit density matrix.
///
/// With rho = sum_i |psi_i><psi_i| (psi_i = sqrt(p_i) v_i from the
/// eigen-decomposition), the square roots of the eigenvalues of
/// rho (sigma_y sigma_y) rho* (sigma_y sigma_y) are the singular values of
/// tau_ij = psi_i^T (sigma_y sigma_y) psi_j. Those are read off as the
/// positive eigenvalues of [[0, tau], [tau^dagger, 0]], which keeps
/// C = max(0, s1 - s2 - s3 - s4) accurate to machine precision near zero.
inline double wootters_concurrence(const CMat4& rho) {
  const auto spec = eig_herm(rho);
  if (spec.min() < -kNegativeEigenTolerance) {
    throw InputError("wootters_concurrence: density matrix has a negative eigenvalue");
  }
  const double tr = std::max(spec.sum(), 1e-300);

  const CMat4 yy = to_complex(kron(pauli_matrix(Pauli::Y), pauli_matrix(Pauli::Y)));
  std::array<std::array<cplx, 4>, 4> psi{};
  for (std::size_t i = 0; i < 4; ++i) {
    const double p = spec.values[i];
    const double w = p > kRankCutoff * tr ? std::sqrt(p) : 0.0;
    for (std::size_t r = 0; r < 4; ++r) psi[i][r] = w * spec.vectors(r, i);
  }

  CMat8 block{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      cplx t{};
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) t += psi[i][r] * yy(r, c) * psi[j][c];
      block(i, 4 + j) = t;
      block(4 + j, i) = std::conj(t);
    }
  const auto sv = eig_herm(block, JacobiOptions{1e-15, 100});
  // Descending singular values are the four largest eigenvalues.
  const double s1 = sv.values[7], s2 = sv.values[6], s3 = sv.values[5], s4 = sv.values[4];
  return std::max(0.0, s1 - s2 - s3 - s4);
}

struct PairConcurrences {
  double ab = 0.0;
  double ac = 0.0;
  double bc = 0.0;
};

inline PairConcurrences pair_concurrences(const DensityMatrix& rho) {
  return {wootters_concurrence(reduced_pair(rho, Qubit::A, Qubit::B)),
          wootters_concurrence(reduced_pair(rho, Qubit::A, Qubit::C)),
          wootters_concurrence(reduced_pair(rho, Qubit::B, Qubit::C))};
}

/// tau = C^2_{A(BC)} - C^2_AB - C^2_AC from rho alone.
inline double tangle_numeric(const DensityMatrix& rho) {
  const PairConcurrences c = pair_concurrences(rho);
  return concurrence_a_bc_squared(rho) - c.ab * c.ab - c.ac * c.ac;
}

/// The four local-unitary invariants, in the order
/// (l0 l4, l0 l2, l0 l3, |l2 l3 - e^{i theta} l1 l4|) = (sqrt(tau)/2, C_AC/2, C_AB/2, C_BC/2).
struct LuInvariants {
  double half_sqrt_tangle = 0.0;
  double half_c_ac = 0.0;
  double half_c_ab = 0.0;
  double half_c_bc = 0.0;

  std::array<double, 4> as_array() const { return {half_sqrt_tangle, half_c_ac, half_c_ab, half_c_bc}; }
};

inline LuInvariants lu_invariants(const CanonicalState& s) {
  const cplx phase = std::polar(1.0, s.theta());
  return {s[0] * s[4], s[0] * s[2], s[0] * s[3], std::abs(s[2] * s[3] - phase * s[1] * s[4])};
}

/// Same quantities measured on rho through det(rho_A) and Wootters concurrences.
inline LuInvariants lu_invariants_numeric(const DensityMatrix& rho) {
  const PairConcurrences c = pair_concurrences(rho);
  const double tau = concurrence_a_bc_squared(rho) - c.ab * c.ab - c.ac * c.ac;
  return {0.5 * std::sqrt(std::max(0.0, tau)), 0.5 * c.ac, 0.5 * c.ab, 0.5 * c.bc};
}

// ---------------------------------------------------------------------------
// Sudbery invariants

/// I1..I5 in two versions: the lambda expressions in their usual closed form
/// (I2 = 2(l1 l2 + l3 l4)^2, I3 = 2(l1 l3 + l2 l4)^2, I4 = 2 l0^2 l1^2,
/// I5 = 4 l0^4 l4^4) and the quantities they are labeled with, computed from
/// rho (<psi|psi>, Tr rho_C^2, Tr rho_B^2, Tr rho_A^2, tau^2/4). Only I1 and
/// I5 are identities; I2..I4 generally disagree and the gap is reported.
struct SudberyInvariants {
  std::array<double, 5> from_lambda{};
  std::array<double, 5> numeric{};

  double discrepancy(std::size_t i) const { return from_lambda[i] - numeric[i]; }
};

inline double purity(const CMat2& m) { return std::real(trace_of_product(m, m)); }

inline SudberyInvariants sudbery(const CanonicalState& s) {
  const double l0 = s[0], l1 = s[1], l2 = s[2], l3 = s[3], l4 = s[4];
  SudberyInvariants out;
  out.from_lambda = {s.norm_squared(), 2 * std::pow(l1 * l2 + l3 * l4, 2), 2 * std::pow(l1 * l3 + l2 * l4, 2),
                     2 * l0 * l0 * l1 * l1, 4 * std::pow(l0, 4) * std::pow(l4, 4)};

  const StateVector v = to_vector(s);
  double norm2 = 0.0;
  for (const auto& a : v.amplitudes()) norm2 += std::norm(a);
  const DensityMatrix rho = density(v);
  const double tau = tangle_numeric(rho);
  out.numeric = {norm2, purity(reduced_single(rho, Qubit::C)), purity(reduced_single(rho, Qubit::B)),
                 purity(reduced_single(rho, Qubit::A)), tau * tau / 4.0};
  return out;
}

struct InvariantSet {
  double tangle = 0.0;
  PairConcurrences concurrences;  ///< Wootters, from rho
  LuInvariants lu;                ///< closed form
  SudberyInvariants sudbery;
};

inline InvariantSet invariant_set(const CanonicalState& s) {
  return {tangle(s), pair_concurrences(density(s)), lu_invariants(s), sudbery(s)};
}

}  // namespace ghzclass
