// Maximal teleportation fidelities after a single-qubit measurement on
// A, B or C of a canonical (theta = 0) state.
//
//   F_A = 2(1 + sqrt(y))/3,  y = l0^2 l4^2 + l1^2 l4^2 + l2^2 l3^2 - 4 l1 l2 l3 l4
//   F_B = 2(1 + l0 sqrt(l2^2 + l4^2))/3
//   F_C = 2(1 + l0 sqrt(l3^2 + l4^2))/3
//
// These are the general forms; the per-subclass expressions are special
// cases of them.

#pragma once

#include <cmath>
#include <optional>

#include "ghzclass/states.hpp"

namespace ghzclass {

inline constexpr double kFidelityDomainTolerance = 1e-12;
inline constexpr double kFidelityCompareTolerance = 1e-12;

struct FidelityTriple {
  std::optional<double> f_a;  ///< nullopt when y < -1e-12
  double f_b = 0.0;
  double f_c = 0.0;
  double y = 0.0;             ///< raw discriminant, never clamped here
  bool y_negative = false;    ///< domain flag: y < -1e-12
};

inline double fidelity_discriminant(const CanonicalState& s) {
  const double l0 = s[0], l1 = s[1], l2 = s[2], l3 = s[3], l4 = s[4];
  return l0 * l0 * l4 * l4 + l1 * l1 * l4 * l4 + l2 * l2 * l3 * l3 - 4 * l1 * l2 * l3 * l4;
}

inline FidelityTriple max_fidelities(const CanonicalState& s) {
  if (s.theta() != 0.0) throw InputError("max_fidelities requires theta = 0");
  FidelityTriple f;
  f.y = fidelity_discriminant(s);
  f.y_negative = f.y < -kFidelityDomainTolerance;
  if (!f.y_negative) f.f_a = 2.0 * (1.0 + std::sqrt(std::max(0.0, f.y))) / 3.0;
  f.f_b = 2.0 * (1.0 + s[0] * std::hypot(s[2], s[4])) / 3.0;
  f.f_c = 2.0 * (1.0 + s[0] * std::hypot(s[3], s[4])) / 3.0;
  return f;
}

enum class Ordering { Less, Equal, Greater, Incomparable };

inline std::optional<double> fidelity_on(const FidelityTriple& f, Qubit q) {
  switch (q) {
    case Qubit::A: return f.f_a;
    case Qubit::B: return f.f_b;
    case Qubit::C: return f.f_c;
  }
  return std::nullopt;
}

/// Sign of F(first) - F(second) on the measured qubit. States whose F_A is
/// undefined (y < 0) are Incomparable on qubit A.
inline Ordering compare_fidelities(const CanonicalState& first, const CanonicalState& second, Qubit q) {
  const auto a = fidelity_on(max_fidelities(first), q);
  const auto b = fidelity_on(max_fidelities(second), q);
  if (!a || !b) return Ordering::Incomparable;
  const double d = *a - *b;
  if (std::abs(d) <= kFidelityCompareTolerance) return Ordering::Equal;
  return d > 0 ? Ordering::Greater : Ordering::Less;
}

inline const char* ordering_name(Ordering o) {
  switch (o) {
    case Ordering::Less: return "less";
    case Ordering::Equal: return "equal";
    case Ordering::Greater: return "greater";
    case Ordering::Incomparable: return "incomparable";
  }
  return "";
}

}  // namespace ghzclass
