#pragma once

// First- and second-order field moments and the phase-space noise ellipse.
//
// Quadratures follow x_theta = (a e^{i theta} + a^+ e^{-i theta}) / sqrt(2),
// p_theta = (a e^{i theta} - a^+ e^{-i theta}) / (sqrt(2) i), so [x, p] = i and
// the vacuum has Var x_theta = 1/2.

#include <optional>

#include "fockgauge/fock.hpp"

namespace fockgauge {

// MomentSummary is the only interchange format between state construction
// and gauge evaluation; it may also be filled from measured data.
struct MomentSummary {
  Complex mean_a{};      // <a>
  Complex mean_a2{};     // <a^2>
  double mean_n = 0.0;   // <a^+ a>
  double mean_n2 = 0.0;  // <n^2>
  double mean_a2da2 = 0.0;  // <a^{+2} a^2>
  double var_n = 0.0;    // <n^2> - <n>^2
  Complex var_a{};       // <a^2> - <a>^2
  double cov_ada = 0.0;  // symmetrized Cov(a^+, a) = <n> + 1/2 - |<a>|^2
  double cov_a2 = 0.0;   // symmetrized Cov(a^{+2}, a^2)
  bool truncation_warning = false;
};

// Fills var_n, var_a, cov_ada and cov_a2 from the raw moments.
MomentSummary complete_summary(Complex mean_a, Complex mean_a2, double mean_n, double mean_n2,
                               double mean_a2da2, bool truncation_warning = false);

struct SummaryOptions {
  // Re-evaluate the symmetrized covariances from dense operator matrices and
  // throw std::logic_error when they disagree with the moment identities.
  bool verify = false;
};

MomentSummary summarize(const QuantumState& state, const SummaryOptions& options = {});

// True when a truncated expansion holds more than 1e-10 probability in its
// top three stored levels, where a^{+2} a^2 becomes boundary sensitive.
bool truncation_suspect(const QuantumState& state);

struct NoiseEllipse {
  double lambda_plus_sq = 0.0;
  double lambda_minus_sq = 0.0;
  double major_axis_angle = 0.0;  // arg(var_a) / 2
  double stick_angle = 0.0;       // arg(mean_a)
  bool circle_flag = false;       // |var_a| < 1e-12, major_axis_angle := 0
  bool zero_stick_flag = false;   // |mean_a| < 1e-12, stick_angle := 0
};

inline constexpr double kFlagTolerance = 1e-12;

// lambda_pm^2 = cov_ada +- |var_a|. Throws NonphysicalMomentError when
// lambda_-^2 <= 0 or lambda_+^2 lambda_-^2 < 1/4 - 1e-10.
NoiseEllipse ellipse(const MomentSummary& summary);

struct QuadratureStats {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
};

QuadratureStats quadrature_stats(const MomentSummary& summary, double theta);
QuadratureStats quadrature_stats(const QuantumState& state, double theta);

// lambda_+^2 sin^2(angle) + lambda_-^2 cos^2(angle)
double lambda_sq(const NoiseEllipse& ellipse, double angle);

struct ScanResult {
  double value = 0.0;  // max_theta |<p_theta>|^2 / (4 Var x_theta)
  double theta = 0.0;  // maximizer in [0, pi)
};

inline constexpr int kScanGridPoints = 1024;
inline constexpr double kScanThetaTolerance = 1e-10;

// Number-quadrature bound max_theta |<p_theta>|^2 / (4 Var x_theta): a
// 1024-point grid on [0, pi) refined by golden-section search. The summary
// must describe a physical state (Var x_theta > 0 for all theta).
ScanResult scan_number_quadrature_bound(const MomentSummary& summary);

// 1 / (scanned bound), so that Var n * Var phi >= 1; nullopt when <a> = 0.
std::optional<double> phase_variance(const MomentSummary& summary);

}  // namespace fockgauge
