#pragma once

// Number-quadrature uncertainty bounds, second-order moment constraints and
// the nonclassicality gauges G1 (distance from intelligent states) and G2
// (distance from a^2 eigenstates).
//
// The canonical tight bound is the theta-scan of
//   Var n Var x_theta >= |<p_theta>|^2 / 4.
// Its closed form follows from maximizing a rank-one Rayleigh quotient over
// theta:
//   B = C_tight |<a>|^2 Lambda^2 / (lambda_+^2 lambda_-^2),
//   Lambda^2 = lambda_+^2 cos^2 chi + lambda_-^2 sin^2 chi,
//   chi = stick_angle - major_axis_angle,
// where C_tight is fixed by coherent-state saturation (see calibrate()).

#include <optional>
#include <string>

#include "fockgauge/moments.hpp"

namespace fockgauge {

struct GaugeConstants {
  double c_tight = 0.5;  // closed-form tight bound
  double c1 = 0.5;       // Var n lambda_+^2 >= c1 |<a>|^2
  double c2 = 0.25;      // Var n Cov(a+,a) >= c2 |<a>|^2
};

// Values implied by the quadrature normalization; calibrate() re-derives them.
inline constexpr GaugeConstants kDerivedConstants{};

inline constexpr double kSaturationTolerance = 1e-8;
inline constexpr double kHierarchyTolerance = 1e-10;
// |<a>| above which G2 (meant for zero-amplitude states) raises a warning.
inline constexpr double kG2AmplitudeWarning = 1e-8;

struct TightBoundReport {
  double bound_scan = 0.0;
  double theta_star = 0.0;
  double bound_closed = 0.0;
  double slack = 0.0;  // Var n - bound_scan
  bool applicable = false;
};

// One inequality lhs >= rhs (or lhs <= rhs, stored with slack = rhs - lhs),
// slack >= 0 when it holds.
struct InequalityRecord {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool saturated = false;
};

struct GaugeReport {
  std::optional<double> g1;
  double g2 = 0.0;
  std::optional<double> g2_alt;  // informational only
  bool g2_amplitude_warning = false;
  std::optional<double> phase_variance;

  InequalityRecord relaxed_lambda_plus;  // Var n lambda_+^2 >= c1 |<a>|^2
  InequalityRecord relaxed_trace;        // Var n Cov(a+,a) >= c2 |<a>|^2
  InequalityRecord canonical_pair_x;     // Var n Var x >= |<p>|^2 / 4 at theta = 0
  InequalityRecord canonical_pair_p;     // Var n Var p >= |<x>|^2 / 4 at theta = 0
  InequalityRecord coherent_floor;       // Cov(a+,a) >= 1/2
  InequalityRecord uncertainty_area;     // |Var a|^2 <= Cov(a+,a)^2 - 1/4
  InequalityRecord not_squeezed;         // lambda_-^2 >= 1/2
  InequalityRecord square_amplitude;     // Cov(a+2,a2) >= 2<n> + 1
  bool squeezed = false;                 // lambda_-^2 < 1/2 - 1e-8

  TightBoundReport tight;
  NoiseEllipse ellipse;
  bool hierarchy_ok = false;
  bool truncation_warning = false;
};

TightBoundReport tight_bound(const MomentSummary& summary, const NoiseEllipse& ellipse,
                             const GaugeConstants& constants = kDerivedConstants);

// Fills relaxed_lambda_plus, relaxed_trace and both canonical-pair records.
void relaxed_bounds(const MomentSummary& summary, const NoiseEllipse& ellipse,
                    GaugeReport& report, const GaugeConstants& constants = kDerivedConstants);

// Fills coherent_floor, uncertainty_area, not_squeezed, square_amplitude and
// the squeezing classification.
void moment_constraints(const MomentSummary& summary, const NoiseEllipse& ellipse,
                        GaugeReport& report);

// Var n / bound_scan; nullopt for zero amplitude.
std::optional<double> gauge_g1(const MomentSummary& summary, const NoiseEllipse& ellipse);

struct G2Result {
  double g2 = 0.0;
  std::optional<double> g2_alt;
  bool amplitude_warning = false;
};

// g2 = Cov(a+2,a2) / (2<n> + 1);
// g2_alt = [Var n + 4 (lambda_+^2 - 1/2)(lambda_-^2 + 1/2)] / <n>, nullopt at <n> = 0.
G2Result gauge_g2(const MomentSummary& summary);

// bound_scan >= c1 bound >= 0 and bound_scan >= c2 bound, within 1e-10.
bool hierarchy_check(const GaugeReport& report, const TightBoundReport& tight);

// Full evaluation of one moment summary. Throws NonphysicalMomentError (from
// ellipse()) for moments no state can have.
GaugeReport evaluate(const MomentSummary& summary,
                     const GaugeConstants& constants = kDerivedConstants);

// Name of the first asserted inequality whose slack is below -tolerance, if any.
std::optional<std::string> first_violation(const GaugeReport& report, double tolerance = 1e-9);

}  // namespace fockgauge
