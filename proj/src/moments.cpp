#include "fockgauge/moments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fockgauge/errors.hpp"

namespace fockgauge {

namespace {

constexpr double kTruncationWarnMass = 1e-10;
constexpr double kAreaTolerance = 1e-10;
constexpr double kVerifyTolerance = 1e-9;

ComplexMatrix lowering_matrix(Eigen::Index dim) {
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// Symmetrized covariances straight from dense matrices, padded so that
// a^{+2} never leaves the space.
void verify_against_matrices(const QuantumState& state, const MomentSummary& s) {
  const std::size_t n = cutoff(state) + 2;
  const DensityMatrix rho = std::holds_alternative<FockVector>(state)
                                ? DensityMatrix::from_pure(std::get<FockVector>(state)).padded(n)
                                : std::get<DensityMatrix>(state).padded(n);
  const ComplexMatrix& r = rho.matrix();
  const ComplexMatrix a = lowering_matrix(r.rows());
  const ComplexMatrix ad = a.adjoint();
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix ad2 = ad * ad;
  auto expect = [&](const ComplexMatrix& op) { return (r * op).trace(); };

  const Complex ma = expect(a);
  const Complex ma2 = expect(a2);
  const double cov_ada = (0.5 * expect(ad * a + a * ad)).real() - std::norm(ma);
  const double cov_a2 = (0.5 * expect(ad2 * a2 + a2 * ad2)).real() - std::norm(ma2);
  const double n_mean = expect(ad * a).real();
  const double var_n = expect(ad * a * ad * a).real() - n_mean * n_mean;

  auto check = [](const char* name, double direct, double identity) {
    if (std::abs(direct - identity) > kVerifyTolerance * (1.0 + std::abs(direct))) {
      throw std::logic_error(std::string("summarize: ") + name + " identity mismatch: direct " +
                             std::to_string(direct) + " vs " + std::to_string(identity));
    }
  };
  check("cov_ada", cov_ada, s.cov_ada);
  check("cov_a2", cov_a2, s.cov_a2);
  check("var_n", var_n, s.var_n);
  check("|mean_a|", std::abs(ma), std::abs(s.mean_a));
}

double quadrature_ratio(const MomentSummary& s, double theta) {
  const QuadratureStats q = quadrature_stats(s, theta);
  return q.mean_p * q.mean_p / (4.0 * q.var_x);
}

}  // namespace

MomentSummary complete_summary(Complex mean_a, Complex mean_a2, double mean_n, double mean_n2,
                               double mean_a2da2, bool truncation_warning) {
  MomentSummary s;
  s.mean_a = mean_a;
  s.mean_a2 = mean_a2;
  s.mean_n = mean_n;
  s.mean_n2 = mean_n2;
  s.mean_a2da2 = mean_a2da2;
  s.var_n = mean_n2 - mean_n * mean_n;
  s.var_a = mean_a2 - mean_a * mean_a;
  s.cov_ada = mean_n + 0.5 - std::norm(mean_a);
  // a^2 a^{+2} = a^{+2} a^2 + 4 a^+ a + 2
  s.cov_a2 = mean_a2da2 + 2.0 * mean_n + 1.0 - std::norm(mean_a2);
  s.truncation_warning = truncation_warning;
  return s;
}

bool truncation_suspect(const QuantumState& state) {
  if (origin(state) != Origin::truncated) return false;
  const std::size_t n = cutoff(state);
  return tail_mass(state, n >= 3 ? n - 3 : 0) > kTruncationWarnMass;
}

MomentSummary summarize(const QuantumState& state, const SummaryOptions& options) {
  const Complex mean_a = normally_ordered_moment(state, 0, 1);
  const Complex mean_a2 = normally_ordered_moment(state, 0, 2);
  const double mean_n = normally_ordered_moment(state, 1, 1).real();
  const double mean_a2da2 = normally_ordered_moment(state, 2, 2).real();
  const double mean_n2 = mean_a2da2 + mean_n;
  MomentSummary s =
      complete_summary(mean_a, mean_a2, mean_n, mean_n2, mean_a2da2, truncation_suspect(state));
  if (options.verify) verify_against_matrices(state, s);
  return s;
}

NoiseEllipse ellipse(const MomentSummary& summary) {
  if (!std::isfinite(summary.cov_ada) || !std::isfinite(std::abs(summary.var_a)) ||
      !std::isfinite(std::abs(summary.mean_a))) {
    throw NonphysicalMomentError("ellipse: non-finite moments");
  }
  NoiseEllipse e;
  const double abs_var = std::abs(summary.var_a);
  e.lambda_plus_sq = summary.cov_ada + abs_var;
  e.lambda_minus_sq = summary.cov_ada - abs_var;
  if (!(e.lambda_minus_sq > 0.0)) {
    throw NonphysicalMomentError("ellipse: lambda_-^2 = " + std::to_string(e.lambda_minus_sq) +
                                 " is not positive");
  }
  if (e.lambda_plus_sq * e.lambda_minus_sq < 0.25 - kAreaTolerance) {
    throw NonphysicalMomentError("ellipse: uncertainty area lambda_+^2 lambda_-^2 = " +
                                 std::to_string(e.lambda_plus_sq * e.lambda_minus_sq) +
                                 " below 1/4 (|Var a|^2 <= Cov(a+,a)^2 - 1/4 violated)");
  }
  e.circle_flag = abs_var < kFlagTolerance;
  e.zero_stick_flag = std::abs(summary.mean_a) < kFlagTolerance;
  e.major_axis_angle = e.circle_flag ? 0.0 : 0.5 * std::arg(summary.var_a);
  e.stick_angle = e.zero_stick_flag ? 0.0 : std::arg(summary.mean_a);
  return e;
}

QuadratureStats quadrature_stats(const MomentSummary& s, double theta) {
  const Complex rot = std::polar(1.0, theta);
  const Complex shifted = s.mean_a * rot;
  const double spread = std::real(s.var_a * rot * rot);
  QuadratureStats q;
  q.mean_x = std::numbers::sqrt2 * shifted.real();
  q.mean_p = std::numbers::sqrt2 * shifted.imag();
  q.var_x = s.cov_ada + spread;
  q.var_p = s.cov_ada - spread;
  return q;
}

QuadratureStats quadrature_stats(const QuantumState& state, double theta) {
  return quadrature_stats(summarize(state), theta);
}

double lambda_sq(const NoiseEllipse& e, double angle) {
  const double s = std::sin(angle);
  const double c = std::cos(angle);
  return e.lambda_plus_sq * s * s + e.lambda_minus_sq * c * c;
}

ScanResult scan_number_quadrature_bound(const MomentSummary& summary) {
  const double step = std::numbers::pi / kScanGridPoints;
  ScanResult best{quadrature_ratio(summary, 0.0), 0.0};
  int best_index = 0;
  for (int i = 1; i < kScanGridPoints; ++i) {
    const double theta = i * step;
    const double f = quadrature_ratio(summary, theta);
    if (f > best.value) {
      best = {f, theta};
      best_index = i;
    }
  }

  // Golden-section refinement on the bracketing grid cells.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = (best_index - 1) * step;
  double hi = (best_index + 1) * step;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = quadrature_ratio(summary, x1);
  double f2 = quadrature_ratio(summary, x2);
  while (hi - lo > kScanThetaTolerance) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = quadrature_ratio(summary, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = quadrature_ratio(summary, x1);
    }
  }
  const double theta = 0.5 * (lo + hi);
  const double f = quadrature_ratio(summary, theta);
  if (f > best.value) best = {f, theta};
  best.theta = std::fmod(best.theta + std::numbers::pi, std::numbers::pi);
  return best;
}

std::optional<double> phase_variance(const MomentSummary& summary) {
  const NoiseEllipse e = ellipse(summary);
  if (e.zero_stick_flag) return std::nullopt;
  return 1.0 / scan_number_quadrature_bound(summary).value;
}

}  // namespace fockgauge
