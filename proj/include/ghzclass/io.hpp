// JSON and CSV serialization: state files, classification reports, scan
// summaries. Numbers are written with 9 significant digits.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "ghzclass/fidelity.hpp"
#include "ghzclass/invariants.hpp"
#include "ghzclass/scan.hpp"
#include "ghzclass/states.hpp"
#include "ghzclass/witnesses.hpp"

namespace ghzclass {

using nlohmann::json;

inline std::string fmt9(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

/// x rounded to 9 significant digits; NaN becomes JSON null.
inline json num9(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(fmt9(x).c_str(), nullptr);
}

inline json num9(const std::optional<double>& x) { return x ? num9(*x) : json(nullptr); }

// ---------------------------------------------------------------------------
// State files
//
//   {"type":"canonical","lambda":[l0,l1,l2,l3,l4],"theta":t}
//   {"type":"amplitudes","re":[8 reals],"im":[8 reals]}

struct LoadedState {
  std::optional<CanonicalState> canonical;
  StateVector vector;
};

namespace detail {

template <std::size_t N>
std::array<double, N> real_array(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != N) {
    throw InputError(std::string("state JSON: \"") + key + "\" must be an array of " + std::to_string(N) + " numbers");
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    if (!j[key][i].is_number()) throw InputError(std::string("state JSON: \"") + key + "\" holds a non-number");
    out[i] = j[key][i].get<double>();
  }
  return out;
}

}  // namespace detail

/// Canonical parameters are accepted within the relaxed norm tolerance and
/// renormalized; amplitude vectors likewise.
inline LoadedState parse_state(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw InputError("state JSON: missing string field \"type\"");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "canonical") {
    const auto lambda = detail::real_array<5>(j, "lambda");
    double theta = 0.0;
    if (j.contains("theta")) {
      if (!j["theta"].is_number()) throw InputError("state JSON: \"theta\" must be a number");
      theta = j["theta"].get<double>();
    }
    CanonicalState s(lambda, theta, NormPolicy::relaxed());
    return {s, to_vector(s)};
  }
  if (type == "amplitudes") {
    const auto re = detail::real_array<8>(j, "re");
    const auto im = detail::real_array<8>(j, "im");
    StateVector::Amplitudes a{};
    for (std::size_t i = 0; i < 8; ++i) a[i] = {re[i], im[i]};
    StateVector checked(a, kRelaxedNormTolerance);
    return {std::nullopt, StateVector::normalized(checked.amplitudes())};
  }
  throw InputError("state JSON: unknown type \"" + type + "\"");
}

inline LoadedState parse_state(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("state JSON: ") + e.what());
  }
  return parse_state(j);
}

inline LoadedState load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open state file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_state(ss.str());
}

inline json state_to_json(const CanonicalState& s) {
  json l = json::array();
  for (double x : s.lambda()) l.push_back(x);
  return {{"type", "canonical"}, {"lambda", l}, {"theta", s.theta()}};
}

// ---------------------------------------------------------------------------
// Reports

inline json forms_to_json(const std::vector<SubclassTag>& forms) {
  json out = json::array();
  for (const auto& f : forms) out.push_back(f.label());
  return out;
}

/// {"witnesses":[{"name","value","verdict","branch"}...], "structural_tag",
///  "detected_forms":[...], "minimal_forms":[...]}
inline json report_to_json(const ClassificationReport& r) {
  json ws = json::array();
  for (const auto& w : r.witnesses) {
    ws.push_back({{"name", family_name(w.family)},
                  {"value", num9(w.value)},
                  {"verdict", verdict_name(w.verdict)},
                  {"branch", branch_name(w.coefficients.branch)}});
  }
  return {{"witnesses", ws},
          {"structural_tag", r.structural_tag ? json(r.structural_tag->label()) : json(nullptr)},
          {"detected_forms", forms_to_json(r.detected_forms)},
          {"minimal_forms", forms_to_json(r.minimal_forms)}};
}

/// Schema check for report JSON; returns an empty string when valid.
inline std::string validate_report_json(const json& j) {
  if (!j.is_object()) return "report is not an object";
  for (const char* k : {"witnesses", "structural_tag", "detected_forms", "minimal_forms"})
    if (!j.contains(k)) return std::string("missing key ") + k;
  if (!j["witnesses"].is_array() || j["witnesses"].size() != 8) return "witnesses must hold 8 entries";
  for (const auto& w : j["witnesses"]) {
    if (!w.contains("name") || !w["name"].is_string()) return "witness name";
    if (!w.contains("value") || !(w["value"].is_number() || w["value"].is_null())) return "witness value";
    if (!w.contains("verdict") || !w["verdict"].is_string()) return "witness verdict";
    if (!w.contains("branch") || !w["branch"].is_string()) return "witness branch";
  }
  if (!(j["structural_tag"].is_string() || j["structural_tag"].is_null())) return "structural_tag";
  for (const char* k : {"detected_forms", "minimal_forms"}) {
    if (!j[k].is_array()) return k;
    for (const auto& f : j[k])
      if (!f.is_string()) return k;
  }
  return {};
}

inline json property_report_to_json(const PropertyReport& r) {
  json suites = json::array();
  for (const auto& s : r.suites) {
    suites.push_back({{"name", s.name},
                      {"samples", s.samples},
                      {"failures", s.failures},
                      {"worst_residual", num9(s.worst_residual)},
                      {"tolerance", s.tolerance},
                      {"passed", s.passed()}});
  }
  return {{"seed", r.seed}, {"samples", r.samples}, {"all_passed", r.all_passed()}, {"suites", suites}};
}

inline json table1_to_json(const Table1Row& row) {
  json j{{"a", row.a}, {"c", row.c}, {"step", row.step}, {"runs", row.runs}};
  if (row.p_range) {
    j["p_range"] = {num9(row.p_range->first), num9(row.p_range->second)};
    const auto at = [&](double p) {
      const Table1Point q = table1_point(row.a, row.c, p);
      return json{{"p", num9(p)},
                  {"H4", verdict_name(q.v4)},
                  {"H5", verdict_name(q.v5)},
                  {"H6", verdict_name(q.v6)}};
    };
    j["endpoints"] = {at(row.p_range->first), at(row.p_range->second)};
  } else {
    j["p_range"] = nullptr;
    j["endpoints"] = json::array();
  }
  return j;
}

inline json tangle_study_to_json(const TangleOrderingStudy& st) {
  json links = json::array();
  for (std::size_t k = 0; k < 3; ++k) links.push_back(num9(st.fraction(k)));
  json ce = json::array();
  for (const auto& c : st.counterexamples)
    ce.push_back({{"link", c.link}, {"l0", num9(c.l0)}, {"l4", {num9(c.l4[0]), num9(c.l4[1]), num9(c.l4[2]), num9(c.l4[3])}}});
  return {{"label", TangleOrderingStudy::kLabel},
          {"samples", st.samples},
          {"link_fractions", links},
          {"chain_fraction", num9(st.samples ? static_cast<double>(st.chain_holds) / static_cast<double>(st.samples) : 0.0)},
          {"counterexamples", ce}};
}

/// One row per grid point.
inline void write_table1_csv(std::ostream& out, const Table1Row& row) {
  out << "a,c,p,H4,H5,H6,H4_verdict,H5_verdict,H6_verdict,selected\n";
  for (const auto& q : row.points) {
    out << fmt9(row.a) << ',' << fmt9(row.c) << ',' << fmt9(q.p) << ',' << fmt9(q.h4) << ',' << fmt9(q.h5) << ','
        << fmt9(q.h6) << ',' << verdict_name(q.v4) << ',' << verdict_name(q.v5) << ',' << verdict_name(q.v6) << ','
        << (q.selects_form() ? 1 : 0) << '\n';
  }
}

}  // namespace ghzclass
