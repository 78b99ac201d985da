// Observables O1..O6, the classification witnesses H1..H8 built from them,
// their evaluation and Pauli decomposition, and the subclass classifier.
//
// A witness is O1 - c I (plus O4/2 for H8), where the scalar c is computed
// from expectation values measured on the state under test. Its value on
// that state is Tr(H rho) = <O1> - c (+ <O4>/2).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ghzclass/correlation.hpp"
#include "ghzclass/linalg.hpp"
#include "ghzclass/states.hpp"

namespace ghzclass {

// ---------------------------------------------------------------------------
// Pauli decomposition

struct PauliDecomposition {
  std::array<double, 64> coeffs{};  ///< indexed by PauliTriple::index()
  double max_imaginary = 0.0;       ///< largest |Im Tr(O P)/8| seen

  CMat8 reconstruct() const {
    CMat8 m{};
    const auto& basis = pauli_basis();
    for (std::size_t i = 0; i < 64; ++i)
      if (coeffs[i] != 0.0) m += basis[i].matrix() * cplx(coeffs[i]);
    return m;
  }
};

/// c_P = Tr(O P) / 8 over the 64 Pauli triples.
inline PauliDecomposition pauli_decompose(const HermMat8& o) {
  PauliDecomposition d;
  const auto& basis = pauli_basis();
  for (std::size_t i = 0; i < 64; ++i) {
    const cplx c = trace_of_product(o.matrix(), basis[i].matrix()) / 8.0;
    d.coeffs[i] = c.real();
    d.max_imaginary = std::max(d.max_imaginary, std::abs(c.imag()));
  }
  return d;
}

struct Observable {
  std::string label;
  HermMat8 matrix;
  std::array<double, 64> pauli_coeffs{};

  static Observable from_matrix(std::string label, const HermMat8& m) {
    return {std::move(label), m, pauli_decompose(m).coeffs};
  }
  static Observable from_pauli(std::string label, const std::array<double, 64>& coeffs) {
    PauliDecomposition d{coeffs, 0.0};
    return {std::move(label), HermMat8(d.reconstruct()), coeffs};
  }
};

inline double expectation(const Observable& o, const DensityMatrix& rho) {
  return real_expectation(rho, o.matrix.matrix());
}

// ---------------------------------------------------------------------------
// O1..O6

namespace detail {

inline std::array<double, 64> single_term(Pauli a, Pauli b, Pauli c, double w) {
  std::array<double, 64> out{};
  out[PauliTriple{a, b, c}.index()] = w;
  return out;
}

}  // namespace detail

/// O1 = 2 XXX, O2 = 2 XZX, O3 = 2 XXZ, O4 = 2 XII, O5 = |000><000|, O6 = 2 IYY.
///
/// O5 is the projector (I+Z)(I+Z)(I+Z)/8, so <O5> = l0^2 on canonical states.
inline Observable build_O(int n) {
  using P = Pauli;
  switch (n) {
    case 1: return Observable::from_pauli("O1", detail::single_term(P::X, P::X, P::X, 2.0));
    case 2: return Observable::from_pauli("O2", detail::single_term(P::X, P::Z, P::X, 2.0));
    case 3: return Observable::from_pauli("O3", detail::single_term(P::X, P::X, P::Z, 2.0));
    case 4: return Observable::from_pauli("O4", detail::single_term(P::X, P::I, P::I, 2.0));
    case 5: {
      std::array<double, 64> c{};
      for (P a : {P::I, P::Z})
        for (P b : {P::I, P::Z})
          for (P d : {P::I, P::Z}) c[PauliTriple{a, b, d}.index()] = 0.125;
      return Observable::from_pauli("O5", c);
    }
    case 6: return Observable::from_pauli("O6", detail::single_term(P::I, P::Y, P::Y, 2.0));
    default: throw InputError("observable index must be in 1..6, got " + std::to_string(n));
  }
}

inline const std::array<Observable, 6>& observables() {
  static const std::array<Observable, 6> ops = {build_O(1), build_O(2), build_O(3),
                                                build_O(4), build_O(5), build_O(6)};
  return ops;
}

/// <O1>..<O6> measured on one state.
struct Expectations {
  std::array<double, 6> o{};

  double operator[](int n) const { return o.at(static_cast<std::size_t>(n - 1)); }
};

inline Expectations measure(const DensityMatrix& rho) {
  Expectations e;
  for (std::size_t i = 0; i < 6; ++i) e.o[i] = expectation(observables()[i], rho);
  return e;
}

// ---------------------------------------------------------------------------
// Witness coefficients

enum class WitnessFamily { H1 = 1, H2, H3, H4, H5, H6, H7, H8 };

inline constexpr std::array<WitnessFamily, 8> kWitnessFamilies{
    WitnessFamily::H1, WitnessFamily::H2, WitnessFamily::H3, WitnessFamily::H4,
    WitnessFamily::H5, WitnessFamily::H6, WitnessFamily::H7, WitnessFamily::H8};

inline std::string family_name(WitnessFamily f) { return "H" + std::to_string(static_cast<int>(f)); }

inline WitnessFamily parse_family(std::string_view text) {
  if (text.size() == 2 && (text[0] == 'H' || text[0] == 'h') && text[1] >= '1' && text[1] <= '8') {
    return static_cast<WitnessFamily>(text[1] - '0');
  }
  throw InputError("witness family must be H1..H8, got '" + std::string(text) + "'");
}

/// The subclass form a witness certifies when it fires.
inline SubclassTag certified_form(WitnessFamily f) {
  switch (f) {
    case WitnessFamily::H1: return {true, false, false};
    case WitnessFamily::H2: return {false, true, false};
    case WitnessFamily::H3: return {false, false, true};
    case WitnessFamily::H4: return {false, true, true};
    case WitnessFamily::H5: return {true, true, false};
    case WitnessFamily::H6: return {true, false, true};
    case WitnessFamily::H7: return {true, true, true};
    case WitnessFamily::H8: return {true, true, false};
  }
  return {};
}

enum class Branch { CaseI, CaseII, Tie };

inline std::string branch_name(Branch b) {
  switch (b) {
    case Branch::CaseI: return "Case-I";
    case Branch::CaseII: return "Case-II";
    case Branch::Tie: return "tie";
  }
  return "";
}

/// Every P-type coefficient computable from one set of expectations.
///   P1 = P4 = 2<O5>(1 - <O5> + sqrt((1 - <O5>)^2 - <O6>^2/4))
///   P_i    = q_i + sqrt(q_i^2 - <O1>^2 <O4>^2 / 16),  q_i = (<O1>^2 + <O_i>^2 + <O4>^2)/8,  i = 2, 3
/// P1/P4 are nullopt when their radicand is negative (possible for
/// non-canonical inputs).
struct PCoefficients {
  std::optional<double> p1;
  double p2 = 0.0;
  double p3 = 0.0;
  std::optional<double> p4;
  double q2 = 0.0;
  double q3 = 0.0;
};

inline constexpr double kRadicandTolerance = 1e-12;

inline std::optional<double> sqrt_nonnegative(double x) {
  if (x < -kRadicandTolerance) return std::nullopt;
  return std::sqrt(std::max(0.0, x));
}

inline PCoefficients p_coefficients(const Expectations& e) {
  PCoefficients p;
  const double o5 = e[5], o6 = e[6];
  if (auto r = sqrt_nonnegative((1 - o5) * (1 - o5) - o6 * o6 / 4)) {
    p.p1 = 2 * o5 * (1 - o5 + *r);
    p.p4 = p.p1;
  }
  const double o1sq = e[1] * e[1], o4sq = e[4] * e[4];
  p.q2 = (o1sq + e[2] * e[2] + o4sq) / 8;
  p.q3 = (o1sq + e[3] * e[3] + o4sq) / 8;
  // q_i^2 >= <O1>^2 <O4>^2 / 16 always holds, clamp rounding only.
  p.p2 = p.q2 + std::sqrt(std::max(0.0, p.q2 * p.q2 - o1sq * o4sq / 16));
  p.p3 = p.q3 + std::sqrt(std::max(0.0, p.q3 * p.q3 - o1sq * o4sq / 16));
  return p;
}

struct WitnessCoefficients {
  WitnessFamily family = WitnessFamily::H1;
  /// Multiple of the identity subtracted from O1; nullopt when undefined.
  std::optional<double> offset;
  std::optional<double> q;  ///< for H5, H6, H8
  double u = 0.0;           ///< <O1>^2/4, i.e. 4 l0^2 l4^2 on canonical states
  Branch branch = Branch::CaseI;
};

inline Branch select_branch(double u, double v) {
  if (std::abs(v - u) <= kTieTolerance) return Branch::Tie;
  return v > u ? Branch::CaseII : Branch::CaseI;
}

/// Coefficients of a witness from measured expectations.
inline WitnessCoefficients witness_coefficients(WitnessFamily f, const Expectations& e) {
  const PCoefficients p = p_coefficients(e);
  WitnessCoefficients w;
  w.family = f;
  w.u = e[1] * e[1] / 4;
  switch (f) {
    case WitnessFamily::H1: w.offset = e[4] * e[4] / 4; break;
    case WitnessFamily::H2: w.offset = (e[2] * e[2] + e[1] * e[1]) / 4; break;
    case WitnessFamily::H3: w.offset = (e[3] * e[3] + e[1] * e[1]) / 4; break;
    case WitnessFamily::H4: w.offset = p.p1; break;
    case WitnessFamily::H5: w.offset = p.p2; w.q = p.q2; break;
    case WitnessFamily::H6: w.offset = p.p3; w.q = p.q3; break;
    case WitnessFamily::H7: w.offset = p.p4; break;
    case WitnessFamily::H8: w.offset = p.p2; w.q = p.q2; break;
  }
  if (w.offset) w.branch = select_branch(w.u, *w.offset);
  return w;
}

inline void require_theta_zero(const CanonicalState& s, const char* what) {
  if (s.theta() != 0.0) throw InputError(std::string(what) + " requires theta = 0");
}

/// Identity offset written in the state parameters (theta = 0).
inline double lambda_offset(WitnessFamily f, const CanonicalState& s) {
  require_theta_zero(s, "lambda-form witness coefficients");
  const double l0 = s[0], l1 = s[1], l2 = s[2], l3 = s[3], l4 = s[4];
  const double q0 = l0 * l0, k = 1 - q0;
  auto p_i = [&](double li) {
    const double w = l1 * l1 + li * li + l4 * l4;
    return 2 * q0 * (w + std::sqrt(std::max(0.0, w * w - 4 * l1 * l1 * l4 * l4)));
  };
  switch (f) {
    case WitnessFamily::H1: return 4 * q0 * l1 * l1;
    case WitnessFamily::H2: return 4 * q0 * (l2 * l2 + l4 * l4);
    case WitnessFamily::H3: return 4 * q0 * (l3 * l3 + l4 * l4);
    case WitnessFamily::H4: return 2 * q0 * (k + std::sqrt(std::max(0.0, k * k - 4 * l2 * l2 * l3 * l3)));
    case WitnessFamily::H5: return p_i(l2);
    case WitnessFamily::H6: return p_i(l3);
    case WitnessFamily::H7: {
      const double m = l2 * l3 - l1 * l4;
      return 2 * q0 * (k + std::sqrt(std::max(0.0, k * k - 4 * m * m)));
    }
    case WitnessFamily::H8: return p_i(l2);
  }
  return 0.0;
}

/// The H4 lambda form omits l1 and is only valid where l1 = 0.
inline bool lambda_offset_applicable(WitnessFamily f, const CanonicalState& s) {
  if (s.theta() != 0.0) return false;
  return f != WitnessFamily::H4 || s[1] <= kSubclassZeroThreshold;
}

// ---------------------------------------------------------------------------
// Witness operators

struct Witness {
  WitnessFamily family = WitnessFamily::H1;
  WitnessCoefficients coefficients;
  /// nullopt when the coefficient is undefined for the measured state.
  std::optional<Observable> op;
};

inline Witness assemble_witness(WitnessFamily f, const WitnessCoefficients& w) {
  Witness out{f, w, std::nullopt};
  if (!w.offset) return out;
  std::array<double, 64> c{};
  c[PauliTriple{Pauli::X, Pauli::X, Pauli::X}.index()] = 2.0;
  c[PauliTriple{}.index()] = -*w.offset;
  if (f == WitnessFamily::H8) c[PauliTriple{Pauli::X, Pauli::I, Pauli::I}.index()] = 1.0;
  out.op = Observable::from_pauli(family_name(f), c);
  return out;
}

/// Builds a witness from the expectations measured on the state under test.
inline Witness build_H(WitnessFamily f, const Expectations& e) { return assemble_witness(f, witness_coefficients(f, e)); }

/// Builds a witness from canonical parameters (theta = 0).
inline Witness build_H(WitnessFamily f, const CanonicalState& s) {
  WitnessCoefficients w;
  w.family = f;
  w.offset = lambda_offset(f, s);
  w.u = 4 * s[0] * s[0] * s[4] * s[4];
  if (f == WitnessFamily::H5 || f == WitnessFamily::H8) w.q = 2 * s[0] * s[0] * (s[1] * s[1] + s[2] * s[2] + s[4] * s[4]);
  if (f == WitnessFamily::H6) w.q = 2 * s[0] * s[0] * (s[1] * s[1] + s[3] * s[3] + s[4] * s[4]);
  w.branch = select_branch(w.u, *w.offset);
  return assemble_witness(f, w);
}

// ---------------------------------------------------------------------------
// Closed-form traces

/// Closed form of Tr(H rho) on the witness's own support
/// (theta = 0); nullopt outside it.
///   H1 on (l0,l1,l4):     4 l0 (l4 - l0 l1^2)
///   H2/H3 on (l0,li,l4):  4 l0 l4 (1 - l0 l4) - 4 l0^2 li^2
///   H4 on (l0,l2,l3,l4):  4 l0 l4 - 2 l0^2 (1 - l0^2 + sqrt(T1))
///   H5/H6 on (l0,l1,li,l4): 4 l0 l4 - 2 l0^2 (l1^2 + li^2 + l4^2 + sqrt(Ti))
///   H7 on all:            4 l0 l4 - 2 l0^2 (l1^2 + l2^2 + l3^2 + l4^2 + sqrt(T4))
///   H8 on (l0,l1,l2,l4):  the H5 form plus 2 l0 l1
inline std::optional<double> closed_form_trace(WitnessFamily f, const CanonicalState& s) {
  if (s.theta() != 0.0) return std::nullopt;
  const double l0 = s[0], l1 = s[1], l2 = s[2], l3 = s[3], l4 = s[4];
  auto zero = [](double x) { return x <= kSubclassZeroThreshold; };
  const double q0 = l0 * l0;
  auto t_i = [&](double li) {
    return std::pow(l1, 4) + 2 * l1 * l1 * (li * li - l4 * l4) + std::pow(li * li + l4 * l4, 2);
  };
  auto h_i = [&](double li) {
    return 4 * l0 * l4 - 2 * q0 * (l1 * l1 + li * li + l4 * l4 + std::sqrt(std::max(0.0, t_i(li))));
  };
  switch (f) {
    case WitnessFamily::H1:
      if (!zero(l2) || !zero(l3)) return std::nullopt;
      return 4 * l0 * (l4 - l0 * l1 * l1);
    case WitnessFamily::H2:
    case WitnessFamily::H3: {
      const double li = f == WitnessFamily::H2 ? l2 : l3;
      const double other = f == WitnessFamily::H2 ? l3 : l2;
      if (!zero(l1) || !zero(other)) return std::nullopt;
      return 4 * l0 * l4 * (1 - l0 * l4) - 4 * q0 * li * li;
    }
    case WitnessFamily::H4: {
      if (!zero(l1)) return std::nullopt;
      const double t1 = std::pow(l2, 4) - 2 * l2 * l2 * l3 * l3 + 2 * l2 * l2 * l4 * l4 + std::pow(l3 * l3 + l4 * l4, 2);
      return 4 * l0 * l4 - 2 * q0 * (1 - q0 + std::sqrt(std::max(0.0, t1)));
    }
    case WitnessFamily::H5:
      if (!zero(l3)) return std::nullopt;
      return h_i(l2);
    case WitnessFamily::H6:
      if (!zero(l2)) return std::nullopt;
      return h_i(l3);
    case WitnessFamily::H7: {
      const double t4 = std::pow(l1, 4) + std::pow(l2, 4) + std::pow(l3, 4) + std::pow(l4, 4) +
                        8 * l1 * l2 * l3 * l4 - 2 * l2 * l2 * l3 * l3 + 2 * l2 * l2 * l4 * l4 +
                        2 * l1 * l1 * l2 * l2 + 2 * l1 * l1 * l3 * l3 - 2 * l1 * l1 * l4 * l4 +
                        2 * l3 * l3 * l4 * l4;
      return 4 * l0 * l4 - 2 * q0 * (l1 * l1 + l2 * l2 + l3 * l3 + l4 * l4 + std::sqrt(std::max(0.0, t4)));
    }
    case WitnessFamily::H8:
      if (!zero(l3)) return std::nullopt;
      return h_i(l2) + 2 * l0 * l1;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Evaluation and classification

inline constexpr double kDetectEpsilon = 1e-9;

enum class Verdict { Negative, Nonnegative, Inconclusive, Undefined };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Negative: return "negative";
    case Verdict::Nonnegative: return "nonnegative";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Undefined: return "undefined";
  }
  return "";
}

inline Verdict verdict_for(double value, double eps = kDetectEpsilon) {
  if (!std::isfinite(value)) return Verdict::Undefined;
  if (value < -eps) return Verdict::Negative;
  if (value < 0.0) return Verdict::Inconclusive;
  return Verdict::Nonnegative;
}

struct WitnessEvaluation {
  WitnessFamily family = WitnessFamily::H1;
  WitnessCoefficients coefficients;
  double value = std::numeric_limits<double>::quiet_NaN();  ///< brute-force Tr(H rho)
  std::optional<double> closed_form;                          ///< canonical input on support only
  Verdict verdict = Verdict::Undefined;
};

inline WitnessEvaluation evaluate_witness(WitnessFamily f, const DensityMatrix& rho, const Expectations& e) {
  const Witness w = build_H(f, e);
  WitnessEvaluation out;
  out.family = f;
  out.coefficients = w.coefficients;
  if (w.op) out.value = expectation(*w.op, rho);
  out.verdict = verdict_for(out.value);
  return out;
}

/// Tr(H rho) for a witness built from the state's own expectations.
inline WitnessEvaluation witness_value(WitnessFamily f, const StateVector& v) {
  const DensityMatrix rho = density(v);
  return evaluate_witness(f, rho, measure(rho));
}

inline WitnessEvaluation witness_value(WitnessFamily f, const CanonicalState& s) {
  WitnessEvaluation out = witness_value(f, to_vector(s));
  out.closed_form = closed_form_trace(f, s);
  return out;
}

struct ClassificationReport {
  std::vector<WitnessEvaluation> witnesses;
  std::optional<SubclassTag> structural_tag;
  std::vector<SubclassTag> detected_forms;  ///< every form whose witness fired, no duplicates
  std::vector<SubclassTag> minimal_forms;   ///< detected forms with no detected proper sub-form
};

namespace detail {

inline bool is_proper_subform(const SubclassTag& a, const SubclassTag& b) {
  const bool subset = (!a.l1 || b.l1) && (!a.l2 || b.l2) && (!a.l3 || b.l3);
  return subset && !(a == b);
}

inline ClassificationReport classify_rho(const DensityMatrix& rho) {
  const Expectations e = measure(rho);
  ClassificationReport r;
  for (WitnessFamily f : kWitnessFamilies) {
    r.witnesses.push_back(evaluate_witness(f, rho, e));
    if (r.witnesses.back().verdict != Verdict::Negative) continue;
    const SubclassTag form = certified_form(f);
    if (std::find(r.detected_forms.begin(), r.detected_forms.end(), form) == r.detected_forms.end()) {
      r.detected_forms.push_back(form);
    }
  }
  for (const auto& form : r.detected_forms) {
    const bool minimal = std::none_of(r.detected_forms.begin(), r.detected_forms.end(),
                                      [&](const SubclassTag& other) { return is_proper_subform(other, form); });
    if (minimal) r.minimal_forms.push_back(form);
  }
  return r;
}

}  // namespace detail

/// Runs all eight witnesses, each built from the state's own expectations.
/// Reports every witness that fires; never collapses to a single label.
inline ClassificationReport classify(const StateVector& v) { return detail::classify_rho(density(v)); }

inline ClassificationReport classify(const CanonicalState& s) {
  ClassificationReport r = detail::classify_rho(density(s));
  if (s[0] * s[4] > 0.0) r.structural_tag = structural_subclass(s);
  for (auto& w : r.witnesses) w.closed_form = closed_form_trace(w.family, s);
  return r;
}

// ---------------------------------------------------------------------------
// Maximal slice family

/// (|000> + c|110> + d|111>)/sqrt2 with c = sqrt(1 - d^2), d in [0, 1].
inline CanonicalState maximal_slice_state(double d) {
  if (!(d >= 0.0 && d <= 1.0)) throw InputError("maximal slice parameter d must lie in [0,1]");
  const double r = 1.0 / std::sqrt(2.0);
  return CanonicalState({r, 0.0, 0.0, r * std::sqrt(1.0 - d * d), r * d}, 0.0);
}

/// W_MS = O1 - I, the H3 witness of any maximal slice state.
inline Observable build_W_MS() {
  std::array<double, 64> c{};
  c[PauliTriple{Pauli::X, Pauli::X, Pauli::X}.index()] = 2.0;
  c[PauliTriple{}.index()] = -1.0;
  return Observable::from_pauli("W_MS", c);
}

}  // namespace ghzclass
