#include "fockgauge/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "fockgauge/errors.hpp"
#include "fockgauge/states.hpp"

namespace fockgauge {

namespace {

constexpr double kDefaultTolerance = 1e-9;
constexpr double kGeometryTolerance = 1e-10;
constexpr std::size_t kMaxSweepCutoff = 256;
constexpr std::uint64_t kRankStream = 0xA11;

void record(SweepReport& rep, Check check, double slack, double tolerance, std::int64_t index) {
  CheckTally& t = rep.tallies[static_cast<std::size_t>(check)];
  ++t.checked;
  if (slack < -tolerance) ++t.violations;
  if (slack < t.worst_slack || (slack == t.worst_slack && index < t.worst_seed_index)) {
    t.worst_slack = slack;
    t.worst_seed_index = index;
  }
}

QuantumState ensemble_member(const SweepConfig& config, std::int64_t index) {
  const std::uint64_t seed = derive_seed(config.seed, static_cast<std::uint64_t>(index));
  if (static_cast<std::size_t>(index) < config.n_pure) {
    return random_state(config.cutoff, RandomKind::pure, 1, seed);
  }
  const std::size_t rank = 1 + derive_seed(seed, kRankStream) % config.rank;
  return random_state(config.effective_mixed_cutoff(), RandomKind::mixed, rank, seed);
}

void accumulate_state(SweepReport& rep, const SweepConfig& config, std::int64_t index) {
  const MomentSummary s = summarize(ensemble_member(config, index));
  ++rep.states;
  if (s.truncation_warning) {
    ++rep.truncation_skips;
    return;
  }
  auto tally = [&](Check c, double slack) { record(rep, c, slack, config.tolerance(c), index); };

  const double area_slack = s.cov_ada * s.cov_ada - 0.25 - std::norm(s.var_a);
  GaugeReport g;
  try {
    g = evaluate(s, config.constants);
  } catch (const NonphysicalMomentError&) {
    tally(Check::uncertainty_area, area_slack);
    return;
  }

  const double amp_sq = std::norm(s.mean_a);
  if (g.tight.applicable) {
    const double scan = g.tight.bound_scan;
    tally(Check::tight_scan, g.tight.slack);
    tally(Check::closed_form, -std::abs(g.tight.bound_closed - scan) / (1.0 + scan));
    const double lambda_plus_bound = config.constants.c1 * amp_sq / g.ellipse.lambda_plus_sq;
    const double trace_bound = config.constants.c2 * amp_sq / s.cov_ada;
    tally(Check::hierarchy, std::min(scan - lambda_plus_bound, scan - trace_bound));
    if (amp_sq > 0.0) {
      rep.min_trace_ratio =
          std::min(rep.min_trace_ratio, s.var_n * s.cov_ada / (config.constants.c2 * amp_sq));
    }
  }
  tally(Check::canonical_pair_x, g.canonical_pair_x.slack);
  tally(Check::canonical_pair_p, g.canonical_pair_p.slack);
  tally(Check::coherent_floor, g.coherent_floor.slack);
  tally(Check::uncertainty_area, g.uncertainty_area.slack);
  tally(Check::square_amplitude, g.square_amplitude.slack);
  tally(Check::relaxed_lambda_plus, g.relaxed_lambda_plus.slack);
  tally(Check::relaxed_trace, g.relaxed_trace.slack);
  tally(Check::hyperboloid, s.cov_ada - std::sqrt(0.25 + std::norm(s.var_a)));
}

std::int64_t ensemble_size(const SweepConfig& config) {
  return static_cast<std::int64_t>(config.n_pure + config.n_mixed);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const char* check_name(Check check) {
  switch (check) {
    case Check::tight_scan: return "tight_scan";
    case Check::closed_form: return "closed_form";
    case Check::canonical_pair_x: return "canonical_pair_x";
    case Check::canonical_pair_p: return "canonical_pair_p";
    case Check::coherent_floor: return "coherent_floor";
    case Check::uncertainty_area: return "uncertainty_area";
    case Check::square_amplitude: return "square_amplitude";
    case Check::relaxed_lambda_plus: return "relaxed_lambda_plus";
    case Check::relaxed_trace: return "relaxed_trace";
    case Check::hierarchy: return "hierarchy";
    case Check::hyperboloid: return "hyperboloid";
  }
  return "unknown";
}

void SweepConfig::validate() const {
  if (cutoff > kMaxSweepCutoff || effective_mixed_cutoff() > kMaxSweepCutoff) {
    throw std::invalid_argument("sweep: cutoff must not exceed 256");
  }
  if (n_mixed > 0 && (rank < 1 || rank > effective_mixed_cutoff() + 1)) {
    throw std::invalid_argument("sweep: rank must lie in [1, mixed cutoff + 1]");
  }
  for (const auto& [name, tol] : tolerances) {
    bool known = false;
    for (Check c : kAllChecks) known = known || name == check_name(c);
    if (!known) throw std::invalid_argument("sweep: unknown tolerance key '" + name + "'");
    if (!(tol >= 0.0)) throw std::invalid_argument("sweep: tolerance must be non-negative");
  }
}

double SweepConfig::tolerance(Check check) const {
  if (auto it = tolerances.find(check_name(check)); it != tolerances.end()) return it->second;
  return (check == Check::hyperboloid || check == Check::hierarchy) ? kGeometryTolerance
                                                                    : kDefaultTolerance;
}

std::size_t SweepReport::total_violations() const {
  std::size_t total = 0;
  for (const auto& t : tallies) total += t.violations;
  return total;
}

void merge_into(SweepReport& into, const SweepReport& from) {
  for (std::size_t i = 0; i < kCheckCount; ++i) {
    CheckTally& a = into.tallies[i];
    const CheckTally& b = from.tallies[i];
    a.checked += b.checked;
    a.violations += b.violations;
    if (b.worst_seed_index >= 0 &&
        (b.worst_slack < a.worst_slack ||
         (b.worst_slack == a.worst_slack &&
          (a.worst_seed_index < 0 || b.worst_seed_index < a.worst_seed_index)))) {
      a.worst_slack = b.worst_slack;
      a.worst_seed_index = b.worst_seed_index;
    }
  }
  into.states += from.states;
  into.truncation_skips += from.truncation_skips;
  into.min_trace_ratio = std::min(into.min_trace_ratio, from.min_trace_ratio);
}

SweepReport sweep_serial(const SweepConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  SweepReport rep;
  for (std::int64_t i = 0; i < ensemble_size(config); ++i) accumulate_state(rep, config, i);
  rep.wall_time = seconds_since(start);
  return rep;
}

SweepReport sweep(const SweepConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::int64_t total = ensemble_size(config);
  SweepReport rep;
  std::exception_ptr failure;
#pragma omp parallel
  {
    SweepReport local;
#pragma omp for schedule(dynamic, 64) nowait
    for (std::int64_t i = 0; i < total; ++i) {
      try {
        accumulate_state(local, config, i);
      } catch (...) {
#pragma omp critical(fockgauge_sweep_error)
        if (!failure) failure = std::current_exception();
      }
    }
#pragma omp critical(fockgauge_sweep_merge)
    merge_into(rep, local);
  }
  if (failure) std::rethrow_exception(failure);
  rep.wall_time = seconds_since(start);
  return rep;
}

CalibrationReport calibrate() {
  const Complex anchors[] = {{0.5, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {1.0, 2.0}};
  CalibrationReport rep;
  std::vector<double> shapes;  // |<a>|^2 Lambda^2 / (lambda_+^2 lambda_-^2)
  std::vector<double> var_n;
  double c2_sum = 0.0;
  for (const Complex alpha : anchors) {
    const MomentSummary s = summarize(coherent(alpha));
    const NoiseEllipse e = ellipse(s);
    const double chi = e.stick_angle - e.major_axis_angle;
    const double big_lambda_sq = e.lambda_plus_sq * std::cos(chi) * std::cos(chi) +
                                 e.lambda_minus_sq * std::sin(chi) * std::sin(chi);
    const double shape =
        std::norm(s.mean_a) * big_lambda_sq / (e.lambda_plus_sq * e.lambda_minus_sq);
    shapes.push_back(shape);
    var_n.push_back(s.var_n);
    rep.anchors.push_back({alpha, s.var_n / shape, 0.0});

    // Summing the theta = 0 pair Var n Var x >= <p>^2/4, Var n Var p >= <x>^2/4:
    // Var n (Var x + Var p) >= (<x>^2 + <p>^2) / 4.
    const QuadratureStats q = quadrature_stats(s, 0.0);
    const double mean_sum_per_amp = (q.mean_x * q.mean_x + q.mean_p * q.mean_p) / std::norm(s.mean_a);
    const double var_sum_per_cov = (q.var_x + q.var_p) / s.cov_ada;
    c2_sum += 0.25 * mean_sum_per_amp / var_sum_per_cov;
  }
  double lo = rep.anchors.front().c_estimate;
  double hi = lo;
  double sum = 0.0;
  for (const auto& a : rep.anchors) {
    lo = std::min(lo, a.c_estimate);
    hi = std::max(hi, a.c_estimate);
    sum += a.c_estimate;
  }
  if (hi - lo > kAnchorAgreement) {
    throw CalibrationError("calibrate: coherent anchors disagree (spread " + fmt17(hi - lo) +
                           "); quadrature convention is inconsistent");
  }
  const auto count = static_cast<double>(rep.anchors.size());
  rep.c_tight = sum / count;
  rep.c1 = rep.c_tight;  // Lambda^2 >= lambda_-^2 in the closed form
  rep.c2 = c2_sum / count;
  for (std::size_t i = 0; i < rep.anchors.size(); ++i) {
    rep.anchors[i].slack = var_n[i] - rep.c_tight * shapes[i];
  }
  auto row = [](std::string tag, std::string form, double derived) {
    return CalibrationRow{std::move(tag), std::move(form), 1.0, derived, 1.0 / derived};
  };
  rep.printed_vs_derived = {
      row("eq8", "Var n [lambda_+ lambda_- / lambda(phi)]^2 >= C |<a>|^2", rep.c_tight),
      row("eq11", "Var n lambda_+^2 >= C |<a>|^2", rep.c1),
      row("eq13", "Var n Cov(a+,a) >= C |<a>|^2", rep.c2),
  };
  return rep;
}

FigureTable figure_data(Figure which, int resolution, const GaugeConstants& constants) {
  if (resolution < 16 || resolution > 2048) {
    throw std::invalid_argument("figure_data: resolution must lie in [16, 2048]");
  }
  FigureTable table;
  const int last = resolution - 1;
  switch (which) {
    case Figure::fig2: {
      // Bounds on Var n per unit |<a>|^2 over physical (|Var a|, Cov) pairs.
      table.columns = {"var_a_abs", "cov_ada", "bound_eq11", "bound_eq13"};
      constexpr double kMaxVarA = 2.0;
      constexpr double kMinCov = 0.5;
      constexpr double kMaxCov = 3.0;
      for (int i = 0; i <= last; ++i) {
        const double v = kMaxVarA * i / last;
        for (int j = 0; j <= last; ++j) {
          const double c = kMinCov + (kMaxCov - kMinCov) * j / last;
          if (c * c - 0.25 < v * v) continue;
          table.rows.push_back({v, c, constants.c1 / (c + v), constants.c2 / c});
        }
      }
      break;
    }
    case Figure::fig3: {
      table.columns = {"re_var_a", "im_var_a", "hyperboloid", "cone"};
      constexpr double kExtent = 2.0;
      const int half = resolution / 2;
      for (int i = -half; i <= half; ++i) {
        const double re = kExtent * i / half;
        for (int j = -half; j <= half; ++j) {
          const double im = kExtent * j / half;
          const double mod = std::hypot(re, im);
          table.rows.push_back({re, im, std::sqrt(0.25 + mod * mod), mod + 0.5});
        }
      }
      break;
    }
    case Figure::fig4: {
      table.columns = {"gamma_re", "gamma_im", "cov_ada", "var_n", "bound", "rel_gap"};
      const Complex alpha{3.0, 0.0};
      const double phases[] = {0.0, std::numbers::pi / 4.0, std::numbers::pi / 2.0};
      double gap_min = std::numeric_limits<double>::infinity();
      double gap_max = -gap_min;
      double gap_sum = 0.0;
      double slack_min = std::numeric_limits<double>::infinity();
      for (const double phase : phases) {
        for (int i = 0; i <= last; ++i) {
          const Complex gamma = std::polar(static_cast<double>(i) / last, phase);
          const MomentSummary s = summarize(approx_strong_field(alpha, gamma).state);
          const double bound = constants.c2 * std::norm(s.mean_a) / s.cov_ada;
          const double gap = (s.var_n - bound) / bound;
          table.rows.push_back({gamma.real(), gamma.imag(), s.cov_ada, s.var_n, bound, gap});
          gap_min = std::min(gap_min, gap);
          gap_max = std::max(gap_max, gap);
          gap_sum += gap;
          slack_min = std::min(slack_min, s.var_n - bound);
        }
      }
      table.statistics = {{"points", static_cast<double>(table.rows.size())},
                          {"rel_gap_min", gap_min},
                          {"rel_gap_max", gap_max},
                          {"rel_gap_mean", gap_sum / static_cast<double>(table.rows.size())},
                          {"min_slack", slack_min}};
      break;
    }
  }
  return table;
}

void write_csv(std::ostream& out, const FigureTable& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << fmt17(row[i]);
    out << '\n';
  }
}

}  // namespace fockgauge
