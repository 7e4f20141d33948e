#include "fockgauge/json_io.hpp"

#include <cmath>
#include <set>
#include <string_view>

#include "fockgauge/errors.hpp"

namespace fockgauge {

namespace {

constexpr double kConsistencyTolerance = 1e-9;

struct KindInfo {
  StateKind kind;
  const char* name;
  std::set<std::string> required;
  std::set<std::string> optional;
};

const std::vector<KindInfo>& kinds() {
  static const std::vector<KindInfo> table = {
      {StateKind::coherent, "coherent", {"alpha"}, {"eps_tail"}},
      {StateKind::fock, "fock", {"n"}, {}},
      {StateKind::squeezed_coherent, "squeezed_coherent", {"r"}, {"alpha", "phi_s", "eps_tail"}},
      {StateKind::crescent, "crescent", {"alpha", "M"}, {"method", "eps_tail"}},
      {StateKind::photon_added, "photon_added", {"alpha", "M"}, {"eps_tail"}},
      {StateKind::approx_strong_field, "approx_strong_field", {"alpha", "gamma"}, {"eps_tail"}},
      {StateKind::cat, "cat", {"alpha"}, {"beta", "eps_tail"}},
      {StateKind::random_pure, "random_pure", {"cutoff", "seed"}, {}},
      {StateKind::random_mixed, "random_mixed", {"cutoff", "rank", "seed"}, {}},
  };
  return table;
}

[[noreturn]] void fail(std::string_view field, std::string_view what) {
  throw SchemaError("field '" + std::string(field) + "': " + std::string(what));
}

const Json& require_object(const Json& doc, std::string_view what) {
  if (!doc.is_object()) fail(what, "expected a JSON object");
  return doc;
}

double get_number(const Json& doc, const std::string& field) {
  const Json& v = doc.at(field);
  if (!v.is_number()) fail(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(field, "expected a finite number");
  return d;
}

std::uint64_t get_unsigned(const Json& doc, const std::string& field) {
  const Json& v = doc.at(field);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  fail(field, "expected a non-negative integer");
}

Complex get_complex(const Json& doc, const std::string& field) {
  const Json& v = doc.at(field);
  if (!v.is_object()) fail(field, "expected an object {\"re\": x, \"im\": y}");
  for (const auto& [key, _] : v.items()) {
    if (key != "re" && key != "im") fail(field + "." + key, "unknown field");
  }
  if (!v.contains("re")) fail(field + ".re", "missing");
  if (!v.contains("im")) fail(field + ".im", "missing");
  return {get_number(v, "re"), get_number(v, "im")};
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json record_json(const InequalityRecord& r) {
  return Json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"slack", r.slack}, {"saturated", r.saturated}};
}

void check_consistent(const std::string& field, double given, double computed) {
  if (std::abs(given - computed) > kConsistencyTolerance * (1.0 + std::abs(computed))) {
    fail(field, "inconsistent with the raw moments (given " + std::to_string(given) +
                    ", implied " + std::to_string(computed) + ")");
  }
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

StateSpec parse_state_spec(const Json& doc) {
  require_object(doc, "spec");
  if (!doc.contains("kind")) fail("kind", "missing");
  if (!doc.at("kind").is_string()) fail("kind", "expected a string");
  const std::string kind = doc.at("kind").get<std::string>();
  const KindInfo* info = nullptr;
  for (const auto& k : kinds()) {
    if (kind == k.name) info = &k;
  }
  if (!info) fail("kind", "unknown state kind '" + kind + "'");
  for (const auto& [key, _] : doc.items()) {
    if (key == "kind") continue;
    if (!info->required.count(key) && !info->optional.count(key)) {
      fail(key, "not allowed for kind '" + kind + "'");
    }
  }
  for (const auto& key : info->required) {
    if (!doc.contains(key)) fail(key, "required for kind '" + kind + "'");
  }

  StateSpec spec;
  spec.kind = info->kind;
  if (doc.contains("alpha")) spec.alpha = get_complex(doc, "alpha");
  if (doc.contains("gamma")) spec.gamma = get_complex(doc, "gamma");
  if (doc.contains("n")) spec.n = get_unsigned(doc, "n");
  if (doc.contains("M")) {
    const auto m = get_unsigned(doc, "M");
    if (m > 16) fail("M", "must not exceed 16");
    spec.M = static_cast<int>(m);
  }
  if (doc.contains("r")) spec.r = get_number(doc, "r");
  if (doc.contains("phi_s")) spec.phi_s = get_number(doc, "phi_s");
  if (doc.contains("beta")) spec.beta = get_number(doc, "beta");
  if (doc.contains("seed")) spec.seed = get_unsigned(doc, "seed");
  if (doc.contains("rank")) spec.rank = get_unsigned(doc, "rank");
  if (doc.contains("cutoff")) spec.cutoff = get_unsigned(doc, "cutoff");
  if (doc.contains("eps_tail")) {
    spec.eps_tail = get_number(doc, "eps_tail");
    if (!(spec.eps_tail > 0.0 && spec.eps_tail <= 1e-6)) fail("eps_tail", "must lie in (0, 1e-6]");
  }
  if (doc.contains("method")) {
    const Json& m = doc.at("method");
    if (m == "operator") {
      spec.method = CrescentMethod::operator_form;
    } else if (m == "laguerre") {
      spec.method = CrescentMethod::laguerre;
    } else {
      fail("method", "expected \"operator\" or \"laguerre\"");
    }
  }
  if (spec.kind == StateKind::squeezed_coherent && std::abs(spec.r) > 3.0) {
    fail("r", "|r| must not exceed 3");
  }
  if (spec.kind == StateKind::random_pure || spec.kind == StateKind::random_mixed) {
    if (spec.cutoff > 256) fail("cutoff", "must not exceed 256");
  }
  if (spec.kind == StateKind::random_mixed && (spec.rank < 1 || spec.rank > spec.cutoff + 1)) {
    fail("rank", "must lie in [1, cutoff + 1]");
  }
  return spec;
}

Json to_json(const StateSpec& spec) {
  const KindInfo* info = nullptr;
  for (const auto& k : kinds()) {
    if (k.kind == spec.kind) info = &k;
  }
  Json doc{{"kind", info->name}};
  auto wants = [&](const char* f) { return info->required.count(f) || info->optional.count(f); };
  if (wants("alpha")) doc["alpha"] = complex_json(spec.alpha);
  if (wants("n")) doc["n"] = spec.n;
  if (wants("M")) doc["M"] = spec.M;
  if (wants("r")) doc["r"] = spec.r;
  if (wants("phi_s")) doc["phi_s"] = spec.phi_s;
  if (wants("gamma")) doc["gamma"] = complex_json(spec.gamma);
  if (wants("beta")) doc["beta"] = spec.beta;
  if (wants("method")) {
    doc["method"] = spec.method == CrescentMethod::laguerre ? "laguerre" : "operator";
  }
  if (wants("cutoff")) doc["cutoff"] = spec.cutoff;
  if (wants("rank")) doc["rank"] = spec.rank;
  if (wants("seed")) doc["seed"] = spec.seed;
  if (wants("eps_tail")) doc["eps_tail"] = spec.eps_tail;
  return doc;
}

Json to_json(const MomentSummary& s) {
  return Json{{"mean_a", complex_json(s.mean_a)},
              {"mean_a2", complex_json(s.mean_a2)},
              {"mean_n", s.mean_n},
              {"mean_n2", s.mean_n2},
              {"mean_a2da2", s.mean_a2da2},
              {"var_n", s.var_n},
              {"var_a", complex_json(s.var_a)},
              {"cov_ada", s.cov_ada},
              {"cov_a2", s.cov_a2},
              {"truncation_warning", s.truncation_warning}};
}

MomentSummary parse_moment_summary(const Json& doc) {
  require_object(doc, "moments");
  static const std::set<std::string> raw = {"mean_a", "mean_a2", "mean_n", "mean_n2",
                                            "mean_a2da2"};
  static const std::set<std::string> derived = {"var_n", "var_a", "cov_ada", "cov_a2",
                                                "truncation_warning"};
  for (const auto& [key, _] : doc.items()) {
    if (!raw.count(key) && !derived.count(key)) fail(key, "unknown field");
  }
  for (const auto& key : raw) {
    if (!doc.contains(key)) fail(key, "missing");
  }
  bool warning = false;
  if (doc.contains("truncation_warning")) {
    if (!doc.at("truncation_warning").is_boolean()) fail("truncation_warning", "expected a boolean");
    warning = doc.at("truncation_warning").get<bool>();
  }
  const MomentSummary s =
      complete_summary(get_complex(doc, "mean_a"), get_complex(doc, "mean_a2"),
                       get_number(doc, "mean_n"), get_number(doc, "mean_n2"),
                       get_number(doc, "mean_a2da2"), warning);
  if (doc.contains("var_n")) check_consistent("var_n", get_number(doc, "var_n"), s.var_n);
  if (doc.contains("cov_ada")) {
    check_consistent("cov_ada", get_number(doc, "cov_ada"), s.cov_ada);
  }
  if (doc.contains("cov_a2")) check_consistent("cov_a2", get_number(doc, "cov_a2"), s.cov_a2);
  if (doc.contains("var_a")) {
    const Complex v = get_complex(doc, "var_a");
    check_consistent("var_a.re", v.real(), s.var_a.real());
    check_consistent("var_a.im", v.imag(), s.var_a.imag());
  }
  return s;
}

Json to_json(const NoiseEllipse& e) {
  return Json{{"lambda_plus_sq", e.lambda_plus_sq},   {"lambda_minus_sq", e.lambda_minus_sq},
              {"major_axis_angle", e.major_axis_angle}, {"stick_angle", e.stick_angle},
              {"circle_flag", e.circle_flag},         {"zero_stick_flag", e.zero_stick_flag}};
}

Json to_json(const GaugeReport& r) {
  Json doc;
  doc["g1"] = optional_json(r.g1);
  doc["g2"] = r.g2;
  doc["g2_alt"] = optional_json(r.g2_alt);
  doc["phase_variance"] = optional_json(r.phase_variance);
  doc["tight"] = Json{{"applicable", r.tight.applicable},
                      {"bound_scan", r.tight.bound_scan},
                      {"theta_star", r.tight.theta_star},
                      {"bound_closed", r.tight.bound_closed},
                      {"slack", r.tight.slack}};
  doc["relaxed_lambda_plus"] = record_json(r.relaxed_lambda_plus);
  doc["relaxed_trace"] = record_json(r.relaxed_trace);
  doc["canonical_pair_x"] = record_json(r.canonical_pair_x);
  doc["canonical_pair_p"] = record_json(r.canonical_pair_p);
  doc["coherent_floor"] = record_json(r.coherent_floor);
  doc["uncertainty_area"] = record_json(r.uncertainty_area);
  doc["not_squeezed"] = record_json(r.not_squeezed);
  doc["square_amplitude"] = record_json(r.square_amplitude);
  doc["ellipse"] = to_json(r.ellipse);
  doc["flags"] = Json{{"squeezed", r.squeezed},
                      {"hierarchy_ok", r.hierarchy_ok},
                      {"g2_amplitude_warning", r.g2_amplitude_warning},
                      {"truncation_warning", r.truncation_warning}};
  return doc;
}

SweepConfig parse_sweep_config(const Json& doc) {
  require_object(doc, "config");
  static const std::set<std::string> allowed = {"n_pure", "n_mixed", "cutoff", "mixed_cutoff",
                                                "rank",   "seed",    "tolerances"};
  for (const auto& [key, _] : doc.items()) {
    if (!allowed.count(key)) fail(key, "unknown field");
  }
  SweepConfig c;
  if (doc.contains("n_pure")) c.n_pure = get_unsigned(doc, "n_pure");
  if (doc.contains("n_mixed")) c.n_mixed = get_unsigned(doc, "n_mixed");
  if (doc.contains("cutoff")) c.cutoff = get_unsigned(doc, "cutoff");
  if (doc.contains("mixed_cutoff")) c.mixed_cutoff = get_unsigned(doc, "mixed_cutoff");
  if (doc.contains("rank")) c.rank = get_unsigned(doc, "rank");
  if (doc.contains("seed")) c.seed = get_unsigned(doc, "seed");
  if (doc.contains("tolerances")) {
    const Json& t = doc.at("tolerances");
    if (!t.is_object()) fail("tolerances", "expected an object of check name -> tolerance");
    for (const auto& [key, _] : t.items()) c.tolerances[key] = get_number(t, key);
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  return c;
}

Json to_json(const SweepReport& r) {
  Json checks = Json::object();
  for (Check c : kAllChecks) {
    const CheckTally& t = r.tally(c);
    checks[check_name(c)] = Json{{"checked", t.checked},
                                 {"violations", t.violations},
                                 {"worst_slack", finite_or_null(t.worst_slack)},
                                 {"worst_seed_index", t.worst_seed_index}};
  }
  return Json{{"states", r.states},
              {"truncation_skips", r.truncation_skips},
              {"violations", r.total_violations()},
              {"checks", std::move(checks)},
              {"min_trace_ratio", finite_or_null(r.min_trace_ratio)}};
}

Json to_json(const CalibrationReport& r) {
  Json anchors = Json::array();
  for (const auto& a : r.anchors) {
    anchors.push_back(
        Json{{"alpha", complex_json(a.alpha)}, {"c_estimate", a.c_estimate}, {"slack", a.slack}});
  }
  Json rows = Json::array();
  for (const auto& row : r.printed_vs_derived) {
    rows.push_back(Json{{"tag", row.tag},
                        {"form", row.form},
                        {"printed", row.printed},
                        {"derived", row.derived},
                        {"ratio", row.ratio}});
  }
  return Json{{"c_tight", r.c_tight},
              {"c1", r.c1},
              {"c2", r.c2},
              {"anchors", std::move(anchors)},
              {"printed_vs_derived", std::move(rows)}};
}

Json state_metadata(const QuantumState& state, bool dump) {
  const std::size_t n = cutoff(state);
  const bool pure = std::holds_alternative<FockVector>(state);
  double norm = 0.0;
  for (double p : populations(state)) norm += p;
  Json doc{{"representation", pure ? "pure" : "mixed"},
           {"cutoff", n},
           {"origin", origin(state) == Origin::truncated ? "truncated" : "exact"},
           {"norm", norm},
           {"boundary_tail_mass", tail_mass(state, n >= 3 ? n - 3 : 0)}};
  if (dump) {
    if (pure) {
      Json amps = Json::array();
      for (const Complex c : std::get<FockVector>(state).amplitudes()) {
        amps.push_back(complex_json(c));
      }
      doc["amplitudes"] = std::move(amps);
    } else {
      const auto& m = std::get<DensityMatrix>(state).matrix();
      Json rows = Json::array();
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(std::move(row));
      }
      doc["matrix"] = std::move(rows);
    }
  }
  return doc;
}

}  // namespace fockgauge
