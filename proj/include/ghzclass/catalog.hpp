// Reference cases: known numeric values next to the value this library
// computes and an independent brute-force oracle.
//
// MATCH                  reference and oracle agree within tolerance
// DISCREPANCY-EXPECTED   a known-bad reference value; computed and oracle
//                        agree, the reference does not
// FAIL                   anything else

#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ghzclass/fidelity.hpp"
#include "ghzclass/scan.hpp"
#include "ghzclass/witnesses.hpp"

namespace ghzclass {

enum class CaseStatus { Match, DiscrepancyExpected, Fail };

inline std::string status_name(CaseStatus s) {
  switch (s) {
    case CaseStatus::Match: return "MATCH";
    case CaseStatus::DiscrepancyExpected: return "DISCREPANCY-EXPECTED";
    case CaseStatus::Fail: return "FAIL";
  }
  return "";
}

struct ReferenceCase {
  std::string name;
  double expected = 0.0;
  double computed = 0.0;  ///< library path (closed form, scan, ...)
  double oracle = 0.0;    ///< independent brute-force path
  double tolerance = 0.0;            ///< expected vs oracle
  double internal_tolerance = 1e-10; ///< computed vs oracle
  bool known_discrepancy = false;
  CaseStatus status = CaseStatus::Fail;
};

inline CaseStatus judge(const ReferenceCase& c) {
  const bool internal = std::abs(c.computed - c.oracle) <= c.internal_tolerance;
  const bool expected = std::abs(c.expected - c.oracle) <= c.tolerance;
  if (!internal) return CaseStatus::Fail;
  if (expected) return CaseStatus::Match;
  return c.known_discrepancy ? CaseStatus::DiscrepancyExpected : CaseStatus::Fail;
}

namespace detail {

inline std::string fmt_short(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

inline void add_case(std::vector<ReferenceCase>& out, ReferenceCase c) {
  c.status = judge(c);
  out.push_back(std::move(c));
}

/// Closed form vs Tr(H rho) with H assembled as an explicit 8x8 matrix.
inline void add_witness_case(std::vector<ReferenceCase>& out, WitnessFamily f, const CanonicalState::Lambdas& l,
                             double expected, double tol, bool discrepancy = false) {
  const CanonicalState s(l, 0.0, NormPolicy::relaxed());
  const auto ev = witness_value(f, s);
  const auto closed = closed_form_trace(f, s);
  std::string name = family_name(f) + " at (";
  for (std::size_t i = 0; i < 5; ++i) name += (i ? ", " : "") + fmt_short(l[i]);
  name += ")";
  add_case(out, {name, expected, closed.value_or(std::nan("")), ev.value, tol, 1e-10, discrepancy});
}

}  // namespace detail

/// Every reference example, recomputed.
inline std::vector<ReferenceCase> reference_cases() {
  using W = WitnessFamily;
  std::vector<ReferenceCase> out;
  detail::add_witness_case(out, W::H1, {0.4, 0.911043, 0, 0, 0.1}, -0.3712, 1e-4);
  detail::add_witness_case(out, W::H2, {0.4, 0, 0.894427, 0, 0.2}, -0.2176, 1e-4);
  detail::add_witness_case(out, W::H3, {0.4, 0, 0, 0.894427, 0.2}, -0.2176, 1e-4);
  detail::add_witness_case(out, W::H4, {0.35, 0, 0.3, 0.864581, 0.2}, -0.108386, 1e-5);
  detail::add_witness_case(out, W::H5, {0.5, 0.83666, 0.2, 0, 0.1}, -0.540548, 1e-5);
  detail::add_witness_case(out, W::H6, {0.5, 0.83666, 0, 0.2, 0.1}, -0.540548, 1e-5);
  detail::add_witness_case(out, W::H7, {0.6, 0.785812, 0.1, 0.05, 0.1}, -0.303798, 1e-5, true);
  detail::add_witness_case(out, W::H8, {0.01, 0.948631, 0.3, 0, 0.1}, -0.129027, 1e-5, true);

  // Maximal slice: Tr(W_MS rho) = 2d - 1.
  {
    const double d = 0.3;
    const CanonicalState s = maximal_slice_state(d);
    const DensityMatrix rho = density(s);
    detail::add_case(out, {"W_MS at d = 0.3", 2 * d - 1, witness_value(WitnessFamily::H3, s).value,
                           expectation(build_W_MS(), rho), 1e-12, 1e-12});
  }

  // <O4> and <O2> on the reference parameter sets.
  {
    const CanonicalState s({0.4, 0.911043, 0, 0, 0.1}, 0.0, NormPolicy::relaxed());
    detail::add_case(out, {"<O4> at (0.4, 0.911043, 0, 0, 0.1)", 1.45767, 4 * s[0] * s[1],
                           expectation(build_O(4), density(s)), 1e-5});
  }
  {
    const CanonicalState s({0.35, 0, 0.3, 0.864581, 0.2}, 0.0, NormPolicy::relaxed());
    detail::add_case(out, {"<O2> at (0.35, 0, 0.3, 0.864581, 0.2)", 0.42, 4 * s[0] * s[2],
                           expectation(build_O(2), density(s)), 1e-5});
  }

  // S1 fidelity at l0 = 0.6, l4 = 0.8.
  {
    const CanonicalState s({0.6, 0, 0, 0, 0.8}, 0.0);
    detail::add_case(out, {"F_A on S1 (0.6, 0.8)", 0.986667, max_fidelities(s).f_a.value_or(std::nan("")),
                           reference::fidelity_s1(s)[0], 1e-6, 1e-12});
  }

  // Table 1: scan at step 1e-3, checked against the same scan at half step.
  for (const auto& r : kTable1Reference) {
    const Table1Row row = scan_table1(r.a, r.c, 1e-3);
    const Table1Row fine = scan_table1(r.a, r.c, 5e-4);
    const std::string tag = "Table 1 (" + detail::fmt_short(r.a) + ", " + detail::fmt_short(r.c) + ")";
    const double nan = std::nan("");
    const double lo = row.p_range ? row.p_range->first : nan, hi = row.p_range ? row.p_range->second : nan;
    const double flo = fine.p_range ? fine.p_range->first : nan, fhi = fine.p_range ? fine.p_range->second : nan;
    detail::add_case(out, {tag + " lower", r.lo, lo, flo, kTable1Tolerance, 1.001e-3});
    detail::add_case(out, {tag + " upper", r.hi, hi, fhi, kTable1Tolerance, 1.001e-3});
  }
  return out;
}

}  // namespace ghzclass
