#include "fockgauge/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fockgauge/errors.hpp"
#include "fockgauge/json_io.hpp"

namespace fockgauge::cli {

namespace {

// Inline JSON, or "@path" to read the document from a file.
Json read_document(const std::string& text) {
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw SchemaError("cannot open '" + text.substr(1) + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
  }
  return parse_json_text(text);
}

void print(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

struct Options {
  std::string spec;
  std::string moments;
  std::string config;
  std::string which;
  std::string out_path;
  int resolution = 64;
  bool dump_amplitudes = false;
};

int cmd_state(const Options& o, std::ostream& out, const Environment& env) {
  const StateSpec spec = parse_state_spec(read_document(o.spec));
  const QuantumState state = build_state(spec, env.max_cutoff);
  Json doc{{"spec", to_json(spec)}};
  const Json meta = state_metadata(state, o.dump_amplitudes);
  for (const auto& [key, value] : meta.items()) doc[key] = value;
  if (spec.kind == StateKind::approx_strong_field) {
    const auto sf =
        approx_strong_field(spec.alpha, spec.gamma, TruncationPolicy{spec.eps_tail, env.max_cutoff});
    doc["inverse_norm_analytic"] = sf.inverse_norm_analytic;
    doc["inverse_norm_numeric"] = sf.inverse_norm_numeric;
  }
  print(out, doc);
  return kExitOk;
}

int cmd_moments(const Options& o, std::ostream& out, const Environment& env) {
  const StateSpec spec = parse_state_spec(read_document(o.spec));
  print(out, to_json(summarize(build_state(spec, env.max_cutoff))));
  return kExitOk;
}

int cmd_gauge(const Options& o, std::ostream& out, std::ostream& err, const Environment& env) {
  MomentSummary summary;
  if (!o.spec.empty()) {
    summary = summarize(build_state(parse_state_spec(read_document(o.spec)), env.max_cutoff));
  } else {
    summary = parse_moment_summary(read_document(o.moments));
  }
  const GaugeReport report = evaluate(summary, calibrate().constants());
  print(out, to_json(report));
  if (const auto violated = first_violation(report)) {
    err << "violation: " << *violated << '\n';
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  SweepConfig config = parse_sweep_config(read_document(o.config));
  config.constants = calibrate().constants();
  const SweepReport report = sweep(config);
  print(out, to_json(report));
  err << "wall_time: " << report.wall_time << " s\n";
  if (report.total_violations() > 0) {
    for (Check c : kAllChecks) {
      if (report.tally(c).violations > 0) {
        err << "violation: " << check_name(c) << " (" << report.tally(c).violations << ")\n";
      }
    }
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_figure(const Options& o, std::ostream& out, std::ostream& err) {
  const Figure which = o.which == "fig2" ? Figure::fig2 : o.which == "fig3" ? Figure::fig3 : Figure::fig4;
  const FigureTable table = figure_data(which, o.resolution, calibrate().constants());
  Json stats = Json::object();
  for (const auto& [key, value] : table.statistics) stats[key] = value;
  if (o.out_path.empty()) {
    write_csv(out, table);
    if (!table.statistics.empty()) err << stats.dump() << '\n';
    return kExitOk;
  }
  std::ofstream file(o.out_path);
  if (!file) throw SchemaError("cannot write '" + o.out_path + "'");
  write_csv(file, table);
  print(out, Json{{"rows", table.rows.size()}, {"out", o.out_path}, {"statistics", stats}});
  return kExitOk;
}

}  // namespace

Environment environment_from_process() {
  Environment env;
  if (const char* v = std::getenv("FOCKGAUGE_MAX_CUTOFF")) {
    try {
      const long long parsed = std::stoll(v);
      if (parsed > 0) env.max_cutoff = static_cast<std::size_t>(parsed);
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed FOCKGAUGE_MAX_CUTOFF='" << v << "'\n";
    }
  }
  return env;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env) {
  CLI::App app{"Truncated Fock-space moments, number-quadrature bounds and gauges", "fockgauge"};
  app.require_subcommand(1);
  Options o;

  auto* state = app.add_subcommand("state", "Construct a state and print its metadata");
  state->add_option("--spec", o.spec, "StateSpec JSON (or @file)")->required();
  state->add_flag("--dump-amplitudes", o.dump_amplitudes, "Include amplitudes / matrix entries");

  auto* moments = app.add_subcommand("moments", "Print the moment summary of a state");
  moments->add_option("--spec", o.spec, "StateSpec JSON (or @file)")->required();

  auto* gauge = app.add_subcommand("gauge", "Evaluate bounds and gauges");
  auto* gauge_spec = gauge->add_option("--spec", o.spec, "StateSpec JSON (or @file)");
  auto* gauge_moments = gauge->add_option("--moments", o.moments, "MomentSummary JSON (or @file)");
  gauge_spec->excludes(gauge_moments);
  gauge->require_option(1);

  auto* sweep_cmd = app.add_subcommand("sweep", "Random-ensemble inequality sweep");
  sweep_cmd->add_option("--config", o.config, "SweepConfig JSON (or @file)")->required();

  app.add_subcommand("calibrate", "Derive the bound constants from coherent anchors");

  auto* figure = app.add_subcommand("figure", "Emit figure datasets as CSV");
  figure->add_option("--which", o.which, "fig2 | fig3 | fig4")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
  figure->add_option("--resolution", o.resolution, "Grid resolution")
      ->check(CLI::Range(16, 2048));
  figure->add_option("--out", o.out_path, "CSV output path (standard output if omitted)");

  std::vector<std::string> storage{"fockgauge"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (state->parsed()) return cmd_state(o, out, env);
    if (moments->parsed()) return cmd_moments(o, out, env);
    if (gauge->parsed()) return cmd_gauge(o, out, err, env);
    if (sweep_cmd->parsed()) return cmd_sweep(o, out, err);
    if (figure->parsed()) return cmd_figure(o, out, err);
    print(out, to_json(calibrate()));
    return kExitOk;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NonphysicalMomentError& e) {
    err << "violation: nonphysical moments: " << e.what() << '\n';
    return kExitViolation;
  } catch (const CalibrationError& e) {
    err << "calibration failure: " << e.what() << '\n';
    return kExitViolation;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    // cutoff explosion, zero norm, overflow: the requested state cannot be built.
    err << "input error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace fockgauge::cli
