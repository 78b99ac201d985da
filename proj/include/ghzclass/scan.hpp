// Parameter sweeps and the seeded random-state property harness.
//
// Every sample i draws from its own generator keyed by (seed, i), and
// results are stored by index, so output does not depend on thread count
// or scheduling.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "ghzclass/correlation.hpp"
#include "ghzclass/fidelity.hpp"
#include "ghzclass/invariants.hpp"
#include "ghzclass/states.hpp"
#include "ghzclass/witnesses.hpp"

namespace ghzclass {

// ---------------------------------------------------------------------------
// Deterministic per-sample randomness

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based generator for one sample: the stream is a pure function of
/// (seed, index).
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t index)
      : key_(splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL))) {}

  std::uint64_t next() { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform in (0, 1).
  double uniform_open() {
    double u;
    do u = uniform();
    while (u == 0.0);
    return u;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() {
    const double u1 = uniform_open(), u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Calls fn(i) for i in [0, n) on up to `threads` workers (0 = hardware).
inline void parallel_for_index(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) fn(i);
    });
  }
}

/// Random canonical state with lambda uniform on the positive part of the
/// unit sphere, restricted to the active parameters. l0 and l4 are always
/// active. theta is uniform in [0, pi] when `random_theta` is set.
inline CanonicalState random_canonical(SampleRng& rng, SubclassTag active = {true, true, true},
                                       bool random_theta = true) {
  const std::array<bool, 5> on{true, active.l1, active.l2, active.l3, true};
  CanonicalState::Lambdas l{};
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      l[i] = on[i] ? std::abs(rng.normal()) : 0.0;
      n2 += l[i] * l[i];
    }
  } while (n2 < 1e-6 || std::any_of(l.begin(), l.end(), [&](double x) { return x != 0.0 && x < 1e-6; }));
  const double n = std::sqrt(n2);
  for (auto& x : l) x /= n;
  const double theta = random_theta ? rng.uniform(0.0, std::numbers::pi) : 0.0;
  return CanonicalState(l, theta, NormPolicy{1e-12, true});
}

// ---------------------------------------------------------------------------
// Table 1: witness ranges along sqrt(p)|G> - sqrt(1-p)|K>

/// |G> = a|000> + b|111>, |K> = c|110> + d|101>, b = sqrt(1-a^2), d = sqrt(1-c^2).
inline StateVector example2_state(double a, double c, double p) {
  const double b = std::sqrt(1 - a * a), d = std::sqrt(1 - c * c);
  const double sp = std::sqrt(p), sq = std::sqrt(1 - p);
  StateVector::Amplitudes amp{};
  amp[0] = sp * a;
  amp[7] = sp * b;
  amp[6] = -sq * c;
  amp[5] = -sq * d;
  return StateVector(amp);
}

struct Table1Point {
  double p = 0.0;
  double h4 = 0.0, h5 = 0.0, h6 = 0.0;
  Verdict v4 = Verdict::Undefined, v5 = Verdict::Undefined, v6 = Verdict::Undefined;

  /// H4 fires while H5 and H6 do not.
  bool selects_form() const {
    return v4 == Verdict::Negative && v5 == Verdict::Nonnegative && v6 == Verdict::Nonnegative;
  }
};

struct Table1Row {
  double a = 0.0, c = 0.0, step = 0.0;
  std::optional<std::pair<double, double>> p_range;  ///< longest run of selecting grid points
  std::size_t runs = 0;                              ///< number of disjoint selecting runs
  std::vector<Table1Point> points;
};

inline Table1Point table1_point(double a, double c, double p) {
  const DensityMatrix rho = density(example2_state(a, c, p));
  const Expectations e = measure(rho);
  const auto w4 = evaluate_witness(WitnessFamily::H4, rho, e);
  const auto w5 = evaluate_witness(WitnessFamily::H5, rho, e);
  const auto w6 = evaluate_witness(WitnessFamily::H6, rho, e);
  return {p, w4.value, w5.value, w6.value, w4.verdict, w5.verdict, w6.verdict};
}

/// Evaluates the p grid {step, 2 step, ...} inside (0, 1).
inline Table1Row scan_table1(double a, double c, double step, unsigned threads = 1) {
  if (!(a > 0 && a < 1 && c > 0 && c < 1)) throw InputError("scan_table1: a and c must lie in (0,1)");
  if (!(step > 0 && step < 1)) throw InputError("scan_table1: step must lie in (0,1)");
  const auto n = static_cast<std::size_t>(std::ceil(1.0 / step - 1e-9)) - 1;
  Table1Row row{a, c, step, std::nullopt, 0, std::vector<Table1Point>(n)};
  parallel_for_index(n, threads, [&](std::size_t i) {
    row.points[i] = table1_point(a, c, static_cast<double>(i + 1) * step);
  });

  std::size_t best_lo = 0, best_len = 0;
  for (std::size_t i = 0; i < n;) {
    if (!row.points[i].selects_form()) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && row.points[j].selects_form()) ++j;
    ++row.runs;
    if (j - i > best_len) best_lo = i, best_len = j - i;
    i = j;
  }
  if (best_len > 0) row.p_range = std::make_pair(row.points[best_lo].p, row.points[best_lo + best_len - 1].p);
  return row;
}

struct Table1Reference {
  double a, c, lo, hi;
};

/// The eight (a, c) rows with their reference p ranges.
inline constexpr std::array<Table1Reference, 8> kTable1Reference{{{0.8, 0.3, 0.291, 0.3},
                                                                  {0.9, 0.4, 0.548, 0.57},
                                                                  {0.91, 0.8, 0.4, 0.51},
                                                                  {0.85, 0.35, 0.43, 0.45},
                                                                  {0.88, 0.8, 0.25, 0.385},
                                                                  {0.78, 0.3, 0.208, 0.22},
                                                                  {0.95, 0.4, 0.69, 0.7},
                                                                  {0.83, 0.45, 0.26, 0.31}}};

inline constexpr double kTable1Tolerance = 0.01;

// ---------------------------------------------------------------------------
// Fidelity reference expressions for the subclass special cases

namespace reference {

/// S1: F_A = F_B = F_C = 2(1 + l0 l4)/3.
inline std::array<double, 3> fidelity_s1(const CanonicalState& s) {
  const double f = 2 * (1 + s[0] * s[4]) / 3;
  return {f, f, f};
}

/// S2 (l1): F_A = 2(1 + l4 sqrt(l0^2 + l1^2))/3, F_B = F_C = 2(1 + l0 l4)/3.
inline std::array<double, 3> fidelity_s2_l1(const CanonicalState& s) {
  const double fbc = 2 * (1 + s[0] * s[4]) / 3;
  return {2 * (1 + s[4] * std::sqrt(s[0] * s[0] + s[1] * s[1])) / 3, fbc, fbc};
}

/// S3 (l1, l2): F_A as S2, F_B = 2(1 + l0 sqrt(l2^2 + l4^2))/3, F_C = 2(1 + l0 l4)/3.
inline std::array<double, 3> fidelity_s3_l1l2(const CanonicalState& s) {
  return {2 * (1 + s[4] * std::sqrt(s[0] * s[0] + s[1] * s[1])) / 3,
          2 * (1 + s[0] * std::sqrt(s[2] * s[2] + s[4] * s[4])) / 3, 2 * (1 + s[0] * s[4]) / 3};
}

}  // namespace reference

// ---------------------------------------------------------------------------
// Random-state property suite

struct ScanConfig {
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  unsigned threads = 1;
  double step = 1e-3;
};

struct SuiteResult {
  std::string name;
  std::size_t samples = 0;
  std::size_t failures = 0;
  double worst_residual = 0.0;
  double tolerance = 0.0;

  bool passed() const { return failures == 0; }
};

struct PropertyReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<SuiteResult> suites;

  bool all_passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
  }
};

namespace detail {

struct SuiteSpec {
  const char* name;
  double tolerance;
  // Residual of sample i (<= tolerance passes).
  std::function<double(SampleRng&)> residual;
};

inline SuiteResult run_suite(const SuiteSpec& spec, const ScanConfig& cfg, std::uint64_t stream) {
  std::vector<double> res(cfg.samples, 0.0);
  parallel_for_index(cfg.samples, cfg.threads, [&](std::size_t i) {
    SampleRng rng(cfg.seed ^ (stream * 0x9e3779b97f4a7c15ULL), i);
    res[i] = spec.residual(rng);
  });
  SuiteResult r{spec.name, cfg.samples, 0, 0.0, spec.tolerance};
  for (double x : res) {
    if (!(x <= spec.tolerance)) ++r.failures;
    r.worst_residual = std::isnan(x) ? x : std::max(r.worst_residual, x);
  }
  return r;
}

inline SubclassTag random_support(SampleRng& rng) {
  const auto m = static_cast<unsigned>(rng.next() % 8);
  return {(m & 1u) != 0, (m & 2u) != 0, (m & 4u) != 0};
}

inline double max_abs_diff3(const std::array<double, 3>& a, const std::optional<double>& fa, double fb, double fc) {
  if (!fa) return std::numeric_limits<double>::infinity();
  return std::max({std::abs(a[0] - *fa), std::abs(a[1] - fb), std::abs(a[2] - fc)});
}

}  // namespace detail

inline std::vector<detail::SuiteSpec> property_suites() {
  using detail::SuiteSpec;
  std::vector<SuiteSpec> s;
  s.push_back({"tensor_analytic_vs_oracle", 1e-12, [](SampleRng& rng) {
                 const auto st = random_canonical(rng);
                 return max_abs_diff(corr_tensor_analytic(st), corr_tensor(density(st)));
               }});
  s.push_back({"gram_analytic_vs_oracle", 1e-10, [](SampleRng& rng) {
                 const auto st = random_canonical(rng);
                 const GramPair a = gram_analytic(st), n = gram(density(st));
                 return std::max(max_abs_diff(a.gx, n.gx), max_abs_diff(a.gy, n.gy));
               }});
  s.push_back({"trace_sum_identity", 1e-12, [](SampleRng& rng) {
                 const auto st = random_canonical(rng);
                 return std::abs(trace_sum(st) - trace_sum(gram(density(st))));
               }});
  s.push_back({"weyl_sandwich", 1e-12, [](SampleRng& rng) {
                 const TraceBounds b = trace_bounds(random_canonical(rng));
                 return std::max({0.0, b.lower - b.trace_sum, b.trace_sum - b.upper});
               }});
  s.push_back({"concurrence_closed_forms", 1e-10, [](SampleRng& rng) {
                 const auto st = random_canonical(rng);
                 const PairConcurrences c = pair_concurrences(density(st));
                 const LuInvariants lu = lu_invariants(st);
                 return std::max({std::abs(c.ac - 2 * lu.half_c_ac), std::abs(c.ab - 2 * lu.half_c_ab),
                                  std::abs(c.bc - 2 * lu.half_c_bc)});
               }});
  s.push_back({"tangle_decomposition", 1e-10, [](SampleRng& rng) {
                 const auto st = random_canonical(rng);
                 return std::abs(tangle_numeric(density(st)) - tangle(st));
               }});
  s.push_back({"fidelity_reductions", 1e-12, [](SampleRng& rng) {
                 const auto which = rng.next() % 3;
                 const SubclassTag support = which == 0   ? SubclassTag{}
                                             : which == 1 ? SubclassTag{true, false, false}
                                                          : SubclassTag{true, true, false};
                 const auto st = random_canonical(rng, support, false);
                 const FidelityTriple f = max_fidelities(st);
                 const auto ref = which == 0   ? reference::fidelity_s1(st)
                                  : which == 1 ? reference::fidelity_s2_l1(st)
                                               : reference::fidelity_s3_l1l2(st);
                 return detail::max_abs_diff3(ref, f.f_a, f.f_b, f.f_c);
               }});
  s.push_back({"s1_witness_nonnegativity", 1e-12, [](SampleRng& rng) {
                 const auto st = random_canonical(rng, SubclassTag{}, false);
                 const auto rep = classify(st);
                 double worst = 0.0;
                 for (const auto& w : rep.witnesses) worst = std::max(worst, -w.value);
                 return worst;
               }});
  s.push_back({"witness_closed_form_vs_oracle", 1e-10, [](SampleRng& rng) {
                 const auto st = random_canonical(rng, detail::random_support(rng), false);
                 double worst = 0.0;
                 for (WitnessFamily f : kWitnessFamilies) {
                   const auto ev = witness_value(f, st);
                   if (ev.closed_form) worst = std::max(worst, std::abs(*ev.closed_form - ev.value));
                 }
                 return worst;
               }});
  s.push_back({"coefficient_lambda_vs_measured", 1e-10, [](SampleRng& rng) {
                 const auto st = random_canonical(rng, detail::random_support(rng), false);
                 const Expectations e = measure(density(st));
                 double worst = 0.0;
                 for (WitnessFamily f : kWitnessFamilies) {
                   if (!lambda_offset_applicable(f, st)) continue;
                   const auto measured = witness_coefficients(f, e).offset;
                   if (!measured) return std::numeric_limits<double>::infinity();
                   worst = std::max(worst, std::abs(*measured - lambda_offset(f, st)));
                 }
                 return worst;
               }});
  return s;
}

/// Runs every cross-module invariant sweep with cfg.samples samples each.
inline PropertyReport random_state_suite(const ScanConfig& cfg) {
  PropertyReport report{cfg.seed, cfg.samples, {}};
  if (cfg.samples == 0) return report;
  const auto specs = property_suites();
  for (std::size_t k = 0; k < specs.size(); ++k) report.suites.push_back(detail::run_suite(specs[k], cfg, k + 1));
  return report;
}

// ---------------------------------------------------------------------------
// S1 witness grid

struct GridCheck {
  std::size_t points = 0;
  double min_value = std::numeric_limits<double>::infinity();
  double argmin_l0 = 0.0;
};

/// Evaluates all eight witnesses on S1 states with l0 = i/(n+1), i = 1..n.
inline GridCheck s1_witness_grid(std::size_t n) {
  GridCheck g;
  for (std::size_t i = 1; i <= n; ++i) {
    const double l0 = static_cast<double>(i) / static_cast<double>(n + 1);
    const CanonicalState s({l0, 0, 0, 0, std::sqrt(1 - l0 * l0)}, 0.0);
    for (const auto& w : classify(s).witnesses) {
      if (w.value < g.min_value) g.min_value = w.value, g.argmin_l0 = l0;
    }
    ++g.points;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Fidelity comparisons across subclasses

/// Subclass representatives used in the fidelity comparisons: S1, S2 (l1),
/// S3 (l1, l2), S4.
inline constexpr std::array<SubclassTag, 4> kFidelityChain{
    SubclassTag{}, SubclassTag{true, false, false}, SubclassTag{true, true, false}, SubclassTag{true, true, true}};

struct FidelityWitness {
  std::size_t richer = 0;  ///< index into kFidelityChain
  std::size_t poorer = 0;
  std::optional<CanonicalState> richer_state;
  std::optional<CanonicalState> poorer_state;
  double richer_fa = 0.0, poorer_fa = 0.0;

  bool found() const { return richer_state.has_value(); }
};

/// For each of the six pairs (richer, poorer) of chain members, searches
/// for states with F_A(richer) > F_A(poorer).
inline std::vector<FidelityWitness> fidelity_existence_search(const ScanConfig& cfg) {
  const std::array<std::pair<std::size_t, std::size_t>, 6> pairs{{{2, 1}, {3, 2}, {3, 1}, {1, 0}, {2, 0}, {3, 0}}};
  std::vector<FidelityWitness> out;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    FidelityWitness w;
    w.richer = pairs[k].first;
    w.poorer = pairs[k].second;
    for (std::size_t i = 0; i < cfg.samples && !w.found(); ++i) {
      SampleRng rng(cfg.seed + 7919 * (k + 1), i);
      const auto hi = random_canonical(rng, kFidelityChain[w.richer], false);
      const auto lo = random_canonical(rng, kFidelityChain[w.poorer], false);
      const auto fh = max_fidelities(hi).f_a, fl = max_fidelities(lo).f_a;
      if (fh && fl && *fh > *fl + kFidelityCompareTolerance) {
        w.richer_state = hi, w.poorer_state = lo, w.richer_fa = *fh, w.poorer_fa = *fl;
      }
    }
    out.push_back(w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tangle ordering (empirical)

/// Empirical frequency of tau(S1) >= tau(S2) >= tau(S3) >= tau(S4) for
/// states sharing l0 with the remaining weight 1 - l0^2 split at random
/// among each subclass's active parameters. This is a measured frequency,
/// not a theorem.
struct TangleOrderingStudy {
  static constexpr const char* kLabel = "EMPIRICAL";
  std::size_t samples = 0;
  std::array<std::size_t, 3> link_holds{};  ///< tau(S_k) >= tau(S_{k+1}), k = 1..3
  std::size_t chain_holds = 0;
  struct Counterexample {
    std::size_t link = 0;  ///< 0: S1>=S2, 1: S2>=S3, 2: S3>=S4
    double l0 = 0.0;
    std::array<double, 4> l4{};  ///< l4 of the S1..S4 members
  };
  std::vector<Counterexample> counterexamples;  ///< first few, index order

  double fraction(std::size_t link) const {
    return samples ? static_cast<double>(link_holds[link]) / static_cast<double>(samples) : 0.0;
  }
};

inline constexpr std::size_t kMaxCounterexamples = 5;

namespace detail {

// Splits weight w over `active` parameters; returns the share landing on l4.
inline double l4_share(SampleRng& rng, int active, double w) {
  if (active == 1) return w;
  // Uniform point on the simplex via sorted uniforms.
  std::vector<double> cuts(static_cast<std::size_t>(active - 1));
  for (auto& c : cuts) c = rng.uniform();
  std::sort(cuts.begin(), cuts.end());
  return w * (1.0 - cuts.back());
}

inline void record_ordering(TangleOrderingStudy& st, double l0, const std::array<double, 4>& l4) {
  ++st.samples;
  bool chain = true;
  for (std::size_t k = 0; k < 3; ++k) {
    const bool holds = l4[k] >= l4[k + 1];  // tau = 4 l0^2 l4^2 at common l0
    chain = chain && holds;
    if (holds) ++st.link_holds[k];
    else if (st.counterexamples.size() < kMaxCounterexamples) st.counterexamples.push_back({k, l0, l4});
  }
  if (chain) ++st.chain_holds;
}

}  // namespace detail

inline TangleOrderingStudy tangle_ordering_study(const ScanConfig& cfg) {
  TangleOrderingStudy st;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    SampleRng rng(cfg.seed, i);
    const double l0 = rng.uniform_open();
    const double w = 1 - l0 * l0;
    std::array<double, 4> l4{};
    for (int k = 0; k < 4; ++k) l4[static_cast<std::size_t>(k)] = std::sqrt(detail::l4_share(rng, k + 1, w));
    detail::record_ordering(st, l0, l4);
  }
  return st;
}

/// Exhaustive grid: l0 and each member's l4^2 fraction of 1 - l0^2 on
/// {step, 2 step, ...} below 1 (S1 takes the full weight).
inline TangleOrderingStudy tangle_ordering_grid(double step = 0.05) {
  TangleOrderingStudy st;
  const auto n = static_cast<std::size_t>(std::ceil(1.0 / step - 1e-9)) - 1;
  for (std::size_t i0 = 1; i0 <= n; ++i0) {
    const double l0 = static_cast<double>(i0) * step;
    const double w = 1 - l0 * l0;
    for (std::size_t a = 1; a <= n; ++a)
      for (std::size_t b = 1; b <= n; ++b)
        for (std::size_t c = 1; c <= n; ++c) {
          const std::array<double, 4> l4{std::sqrt(w), std::sqrt(w * static_cast<double>(a) * step),
                                         std::sqrt(w * static_cast<double>(b) * step),
                                         std::sqrt(w * static_cast<double>(c) * step)};
          detail::record_ordering(st, l0, l4);
        }
  }
  return st;
}

}  // namespace ghzclass
