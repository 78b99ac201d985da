// ghzwit: command-line front end.
//
// Exit codes: 0 success, 1 invalid input or flags, 2 numerical failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ghzclass/catalog.hpp"
#include "ghzclass/correlation.hpp"
#include "ghzclass/fidelity.hpp"
#include "ghzclass/invariants.hpp"
#include "ghzclass/io.hpp"
#include "ghzclass/scan.hpp"
#include "ghzclass/witnesses.hpp"

namespace {

using namespace ghzclass;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;

void print_mat3(std::ostream& out, const std::string& name, const Mat3& m) {
  out << name << ":\n";
  for (std::size_t r = 0; r < 3; ++r) {
    out << "  ";
    for (std::size_t c = 0; c < 3; ++c) out << (c ? "  " : "") << fmt9(m(r, c));
    out << '\n';
  }
}

const CanonicalState& require_canonical(const LoadedState& s, const char* cmd) {
  if (!s.canonical) throw InputError(std::string(cmd) + " needs a canonical state file");
  return *s.canonical;
}

int cmd_classify(const std::string& path, bool as_json) {
  const LoadedState s = load_state(path);
  const ClassificationReport r = s.canonical ? classify(*s.canonical) : classify(s.vector);
  if (as_json) {
    std::cout << report_to_json(r).dump(2) << '\n';
    return kExitOk;
  }
  std::cout << "witness  value            verdict       branch\n";
  for (const auto& w : r.witnesses) {
    std::string v = fmt9(w.value);
    std::cout << family_name(w.family) << "       " << v << std::string(v.size() < 17 ? 17 - v.size() : 1, ' ')
              << verdict_name(w.verdict) << std::string(14 - verdict_name(w.verdict).size(), ' ')
              << branch_name(w.coefficients.branch) << '\n';
  }
  std::cout << "structural tag: " << (r.structural_tag ? r.structural_tag->label() : "n/a") << '\n';
  const auto list = [](const std::vector<SubclassTag>& forms) {
    std::string out;
    for (const auto& f : forms) out += (out.empty() ? "" : ", ") + f.label();
    return out.empty() ? std::string("none") : out;
  };
  std::cout << "detected forms: " << list(r.detected_forms) << '\n';
  std::cout << "minimal forms:  " << list(r.minimal_forms) << '\n';
  return kExitOk;
}

int cmd_witness(const std::string& family, const std::string& path, bool decompose) {
  const WitnessFamily f = parse_family(family);
  const LoadedState s = load_state(path);
  const DensityMatrix rho = density(s.vector);
  const Expectations e = measure(rho);
  const Witness w = build_H(f, e);
  WitnessEvaluation ev = evaluate_witness(f, rho, e);
  if (s.canonical) ev.closed_form = closed_form_trace(f, *s.canonical);

  std::cout << "family:      " << family_name(f) << '\n';
  for (int n = 1; n <= 6; ++n) std::cout << "<O" << n << ">:        " << fmt9(e[n]) << '\n';
  std::cout << "offset:      " << (w.coefficients.offset ? fmt9(*w.coefficients.offset) : "undefined") << '\n';
  if (w.coefficients.q) std::cout << "q:           " << fmt9(*w.coefficients.q) << '\n';
  std::cout << "branch:      " << branch_name(w.coefficients.branch) << '\n';
  std::cout << "value:       " << fmt9(ev.value) << '\n';
  std::cout << "closed form: " << (ev.closed_form ? fmt9(*ev.closed_form) : "n/a") << '\n';
  std::cout << "verdict:     " << verdict_name(ev.verdict) << '\n';
  if (decompose && w.op) {
    const PauliDecomposition d = pauli_decompose(w.op->matrix);
    const double residual = max_abs_diff(d.reconstruct(), w.op->matrix.matrix());
    std::cout << "pauli terms:\n";
    for (std::size_t i = 0; i < 64; ++i)
      if (std::abs(d.coeffs[i]) > 1e-15) std::cout << "  " << PauliTriple::from_index(i).label() << "  " << fmt9(d.coeffs[i]) << '\n';
    std::cout << "max imaginary part:      " << fmt9(d.max_imaginary) << '\n';
    std::cout << "reconstruction residual: " << fmt9(residual) << '\n';
  }
  return kExitOk;
}

int cmd_tensor(const std::string& path) {
  const LoadedState s = load_state(path);
  const CorrelationTensor t = corr_tensor(density(s.vector));
  print_mat3(std::cout, "T_x", t.tx);
  print_mat3(std::cout, "T_y", t.ty);
  print_mat3(std::cout, "T_z", t.tz);
  const GramPair g = gram(t);
  print_mat3(std::cout, "T_x^T T_x", g.gx);
  print_mat3(std::cout, "T_y^T T_y", g.gy);
  std::cout << "mu_max(T_x^T T_x): " << fmt9(eig_sym(g.gx).max()) << '\n';
  std::cout << "mu_min(T_y^T T_y): " << fmt9(eig_sym(g.gy).min()) << '\n';
  std::cout << "trace sum:         " << fmt9(trace_sum(g)) << '\n';
  if (s.canonical) {
    const CanonicalState& c = *s.canonical;
    std::cout << "analytic max diff: " << fmt9(max_abs_diff(corr_tensor_analytic(c), t)) << '\n';
    std::cout << "trace sum (closed form): " << fmt9(trace_sum(c)) << '\n';
    const TraceBounds b = trace_bounds(c);
    std::cout << "lower bound L:     " << fmt9(b.lower) << '\n';
    std::cout << "upper bound U:     " << fmt9(b.upper) << '\n';
    std::cout << "sqrt form holds:   " << (b.sqrt_form_holds() ? "yes" : "no") << '\n';
    std::cout << "linear form:       "
              << (b.linear_form_applicable() ? (b.linear_form_holds() ? "holds" : "violated") : "not applicable")
              << '\n';
  }
  return kExitOk;
}

int cmd_invariants(const std::string& path) {
  const LoadedState s = load_state(path);
  const DensityMatrix rho = density(s.vector);
  const PairConcurrences c = pair_concurrences(rho);
  std::cout << "C_AB:          " << fmt9(c.ab) << '\n';
  std::cout << "C_AC:          " << fmt9(c.ac) << '\n';
  std::cout << "C_BC:          " << fmt9(c.bc) << '\n';
  std::cout << "C^2_A(BC):     " << fmt9(concurrence_a_bc_squared(rho)) << '\n';
  std::cout << "tangle:        " << fmt9(tangle_numeric(rho)) << '\n';
  if (!s.canonical) return kExitOk;
  const CanonicalState& st = *s.canonical;
  const LuInvariants lu = lu_invariants(st);
  std::cout << "tangle (closed form): " << fmt9(tangle(st)) << '\n';
  std::cout << "LU invariants (closed form): " << fmt9(lu.half_sqrt_tangle) << ' ' << fmt9(lu.half_c_ac) << ' '
            << fmt9(lu.half_c_ab) << ' ' << fmt9(lu.half_c_bc) << '\n';
  const SudberyInvariants sb = sudbery(st);
  std::cout << "Sudbery  from-lambda      numeric          difference\n";
  for (std::size_t i = 0; i < 5; ++i) {
    std::cout << "I" << i + 1 << "       " << fmt9(sb.from_lambda[i]) << "  " << fmt9(sb.numeric[i]) << "  "
              << fmt9(sb.discrepancy(i)) << '\n';
  }
  return kExitOk;
}

Qubit parse_qubit(const std::string& q) {
  if (q == "A") return Qubit::A;
  if (q == "B") return Qubit::B;
  if (q == "C") return Qubit::C;
  throw InputError("qubit must be A, B or C");
}

void print_fidelities(const FidelityTriple& f) {
  std::cout << "F_A: " << (f.f_a ? fmt9(*f.f_a) : "undefined (y < 0)") << '\n';
  std::cout << "F_B: " << fmt9(f.f_b) << '\n';
  std::cout << "F_C: " << fmt9(f.f_c) << '\n';
  std::cout << "y:   " << fmt9(f.y) << (f.y_negative ? "  (negative: outside the formula's domain)" : "") << '\n';
}

int cmd_fidelity(const std::string& path, const std::string& compare, const std::string& qubit) {
  const CanonicalState s = require_canonical(load_state(path), "fidelity");
  print_fidelities(max_fidelities(s));
  if (compare.empty()) return kExitOk;
  const CanonicalState other = require_canonical(load_state(compare), "fidelity --compare");
  const Qubit q = parse_qubit(qubit.empty() ? "A" : qubit);
  std::cout << "second state:\n";
  print_fidelities(max_fidelities(other));
  std::cout << "F(first) vs F(second) on qubit " << (qubit.empty() ? "A" : qubit) << ": "
            << ordering_name(compare_fidelities(s, other, q)) << '\n';
  return kExitOk;
}

int cmd_scan_table1(double a, double c, double step, const std::string& csv) {
  const Table1Row row = scan_table1(a, c, step, 0);
  if (row.p_range) {
    std::cout << "(a, c) = (" << fmt9(a) << ", " << fmt9(c) << "): p range (" << fmt9(row.p_range->first) << ", "
              << fmt9(row.p_range->second) << "), " << row.runs << (row.runs == 1 ? " run" : " runs") << '\n';
  } else {
    std::cout << "(a, c) = (" << fmt9(a) << ", " << fmt9(c) << "): empty range\n";
  }
  if (!csv.empty()) {
    std::ofstream out(csv);
    if (!out) throw InputError("cannot write " + csv);
    write_table1_csv(out, row);
    std::ofstream summary(csv + ".summary.json");
    if (!summary) throw InputError("cannot write " + csv + ".summary.json");
    summary << table1_to_json(row).dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_scan_properties(std::size_t n, std::uint64_t seed) {
  ScanConfig cfg;
  cfg.samples = n;
  cfg.seed = seed;
  cfg.threads = 0;
  const PropertyReport r = random_state_suite(cfg);
  std::cout << property_report_to_json(r).dump(2) << '\n';
  return r.all_passed() ? kExitOk : kExitNumerical;
}

int cmd_examples() {
  const auto cases = reference_cases();
  bool failed = false;
  std::cout << "case | expected | computed | oracle | status\n";
  for (const auto& c : cases) {
    std::cout << c.name << " | " << fmt9(c.expected) << " | " << fmt9(c.computed) << " | " << fmt9(c.oracle)
              << " | " << status_name(c.status) << '\n';
    failed = failed || c.status == CaseStatus::Fail;
  }
  return failed ? kExitNumerical : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subclass classification witnesses for three-qubit GHZ-class states"};
  app.require_subcommand(1);

  std::string state, family, compare, qubit, csv;
  bool as_json = false, decompose = false;
  double a = 0.0, c = 0.0, step = 1e-3;
  std::size_t n = 0;
  std::uint64_t seed = 42;

  auto* classify_cmd = app.add_subcommand("classify", "Run all eight witnesses on a state");
  classify_cmd->add_option("--state", state, "State JSON file")->required();
  classify_cmd->add_flag("--json", as_json, "Emit the report as JSON");

  auto* witness_cmd = app.add_subcommand("witness", "Build and evaluate one witness");
  witness_cmd->add_option("--family", family, "H1..H8")->required();
  witness_cmd->add_option("--state", state, "State JSON file")->required();
  witness_cmd->add_flag("--decompose", decompose, "Print the Pauli decomposition");

  auto* tensor_cmd = app.add_subcommand("tensor", "Correlation tensor, Gram matrices and trace bounds");
  tensor_cmd->add_option("--state", state, "State JSON file")->required();

  auto* inv_cmd = app.add_subcommand("invariants", "Tangle, concurrences and local-unitary invariants");
  inv_cmd->add_option("--state", state, "State JSON file")->required();

  auto* fid_cmd = app.add_subcommand("fidelity", "Maximal teleportation fidelities");
  fid_cmd->add_option("--state", state, "Canonical state JSON file (theta = 0)")->required();
  auto* cmp_opt = fid_cmd->add_option("--compare", compare, "Second canonical state to compare against");
  fid_cmd->add_option("--qubit", qubit, "Measured qubit for the comparison")
      ->check(CLI::IsMember({"A", "B", "C"}))
      ->needs(cmp_opt);

  auto* scan_cmd = app.add_subcommand("scan", "Parameter scans");
  scan_cmd->require_subcommand(1);
  auto* t1_cmd = scan_cmd->add_subcommand("table1", "p range where H4 fires and H5, H6 do not");
  t1_cmd->add_option("--a", a, "a in (0,1)")->required();
  t1_cmd->add_option("--c", c, "c in (0,1)")->required();
  t1_cmd->add_option("--step", step, "Grid step for p");
  t1_cmd->add_option("--csv", csv, "Write one CSV row per grid point");
  auto* prop_cmd = scan_cmd->add_subcommand("properties", "Seeded random-state property suite");
  prop_cmd->add_option("--n", n, "Samples per suite")->required();
  prop_cmd->add_option("--seed", seed, "64-bit seed")->required();

  auto* ex_cmd = app.add_subcommand("examples", "Recompute every reference example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*classify_cmd) return cmd_classify(state, as_json);
    if (*witness_cmd) return cmd_witness(family, state, decompose);
    if (*tensor_cmd) return cmd_tensor(state);
    if (*inv_cmd) return cmd_invariants(state);
    if (*fid_cmd) return cmd_fidelity(state, compare, qubit);
    if (*t1_cmd) return cmd_scan_table1(a, c, step, csv);
    if (*prop_cmd) return cmd_scan_properties(n, seed);
    if (*ex_cmd) return cmd_examples();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitInput;
}
