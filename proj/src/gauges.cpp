#include "fockgauge/gauges.hpp"

#include <cmath>
#include <utility>

namespace fockgauge {

namespace {

InequalityRecord at_least(double lhs, double rhs) {
  const double slack = lhs - rhs;
  return {lhs, rhs, slack, std::abs(slack) <= kSaturationTolerance};
}

InequalityRecord at_most(double lhs, double rhs) {
  const double slack = rhs - lhs;
  return {lhs, rhs, slack, std::abs(slack) <= kSaturationTolerance};
}

}  // namespace

TightBoundReport tight_bound(const MomentSummary& summary, const NoiseEllipse& e,
                             const GaugeConstants& constants) {
  TightBoundReport t;
  t.applicable = !e.zero_stick_flag;
  if (!t.applicable) return t;
  const ScanResult scan = scan_number_quadrature_bound(summary);
  t.bound_scan = scan.value;
  t.theta_star = scan.theta;
  const double chi = e.stick_angle - e.major_axis_angle;
  const double c = std::cos(chi);
  const double s = std::sin(chi);
  const double big_lambda_sq = e.lambda_plus_sq * c * c + e.lambda_minus_sq * s * s;
  t.bound_closed = constants.c_tight * std::norm(summary.mean_a) * big_lambda_sq /
                   (e.lambda_plus_sq * e.lambda_minus_sq);
  t.slack = summary.var_n - t.bound_scan;
  return t;
}

void relaxed_bounds(const MomentSummary& summary, const NoiseEllipse& e, GaugeReport& report,
                    const GaugeConstants& constants) {
  const double amp_sq = std::norm(summary.mean_a);
  report.relaxed_lambda_plus = at_least(summary.var_n * e.lambda_plus_sq, constants.c1 * amp_sq);
  report.relaxed_trace = at_least(summary.var_n * summary.cov_ada, constants.c2 * amp_sq);
  const QuadratureStats q = quadrature_stats(summary, 0.0);
  report.canonical_pair_x = at_least(summary.var_n * q.var_x, 0.25 * q.mean_p * q.mean_p);
  report.canonical_pair_p = at_least(summary.var_n * q.var_p, 0.25 * q.mean_x * q.mean_x);
}

void moment_constraints(const MomentSummary& summary, const NoiseEllipse& e, GaugeReport& report) {
  report.coherent_floor = at_least(summary.cov_ada, 0.5);
  report.uncertainty_area =
      at_most(std::norm(summary.var_a), summary.cov_ada * summary.cov_ada - 0.25);
  report.not_squeezed = at_least(e.lambda_minus_sq, 0.5);
  // Within the saturation tolerance of the coherent level counts as unsqueezed.
  report.squeezed = report.not_squeezed.slack < -kSaturationTolerance;
  report.square_amplitude = at_least(summary.cov_a2, 2.0 * summary.mean_n + 1.0);
}

std::optional<double> gauge_g1(const MomentSummary& summary, const NoiseEllipse& e) {
  if (e.zero_stick_flag) return std::nullopt;
  return summary.var_n / scan_number_quadrature_bound(summary).value;
}

G2Result gauge_g2(const MomentSummary& summary) {
  G2Result r;
  r.g2 = summary.cov_a2 / (2.0 * summary.mean_n + 1.0);
  r.amplitude_warning = std::abs(summary.mean_a) > kG2AmplitudeWarning;
  if (summary.mean_n > 0.0) {
    const double abs_var = std::abs(summary.var_a);
    const double lp = summary.cov_ada + abs_var;
    const double lm = summary.cov_ada - abs_var;
    r.g2_alt = (summary.var_n + 4.0 * (lp - 0.5) * (lm + 0.5)) / summary.mean_n;
  }
  return r;
}

bool hierarchy_check(const GaugeReport& report, const TightBoundReport& tight) {
  if (!tight.applicable) return true;
  const double lambda_plus_bound = report.relaxed_lambda_plus.rhs / report.ellipse.lambda_plus_sq;
  const double trace_bound = report.relaxed_trace.rhs / (0.5 * (report.ellipse.lambda_plus_sq +
                                                         report.ellipse.lambda_minus_sq));
  return tight.bound_scan >= lambda_plus_bound - kHierarchyTolerance && lambda_plus_bound >= 0.0 &&
         tight.bound_scan >= trace_bound - kHierarchyTolerance;
}

GaugeReport evaluate(const MomentSummary& summary, const GaugeConstants& constants) {
  GaugeReport r;
  r.ellipse = ellipse(summary);
  r.truncation_warning = summary.truncation_warning;
  r.tight = tight_bound(summary, r.ellipse, constants);
  if (r.tight.applicable) {
    r.g1 = summary.var_n / r.tight.bound_scan;
    r.phase_variance = 1.0 / r.tight.bound_scan;
  }
  const G2Result g2 = gauge_g2(summary);
  r.g2 = g2.g2;
  r.g2_alt = g2.g2_alt;
  r.g2_amplitude_warning = g2.amplitude_warning;
  relaxed_bounds(summary, r.ellipse, r, constants);
  moment_constraints(summary, r.ellipse, r);
  r.hierarchy_ok = hierarchy_check(r, r.tight);
  return r;
}

std::optional<std::string> first_violation(const GaugeReport& r, double tolerance) {
  if (r.tight.applicable && r.tight.slack < -tolerance) return "tight_scan";
  const std::pair<const char*, const InequalityRecord*> checks[] = {
      {"relaxed_lambda_plus", &r.relaxed_lambda_plus},
      {"relaxed_trace", &r.relaxed_trace},
      {"canonical_pair_x", &r.canonical_pair_x},
      {"canonical_pair_p", &r.canonical_pair_p},
      {"coherent_floor", &r.coherent_floor},
      {"uncertainty_area", &r.uncertainty_area},
      {"square_amplitude", &r.square_amplitude},
  };
  for (const auto& [name, rec] : checks) {
    if (rec->slack < -tolerance) return std::string(name);
  }
  if (!r.hierarchy_ok) return "hierarchy";
  return std::nullopt;
}

}  // namespace fockgauge
