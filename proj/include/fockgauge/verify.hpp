#pragma once

// Brute-force oracles: seeded random-ensemble sweeps over every asserted
// inequality, the calibration audit of the bound constants, and the figure
// datasets.
//
// sweep() runs the ensemble with OpenMP; sweep_serial() is the plain loop kept
// as the reference. Both produce identical reports: every merged quantity is a
// count or a min with lowest-index tie-breaking.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fockgauge/gauges.hpp"

namespace fockgauge {

// Inequalities tallied by a sweep, in report order.
enum class Check {
  tight_scan,           // Var n >= max_theta |<p_theta>|^2 / (4 Var x_theta)
  closed_form,          // |bound_closed - bound_scan| <= 1e-9 (1 + bound_scan)
  canonical_pair_x,
  canonical_pair_p,
  coherent_floor,
  uncertainty_area,
  square_amplitude,
  relaxed_lambda_plus,
  relaxed_trace,
  hierarchy,
  hyperboloid,          // Cov(a+,a) >= sqrt(1/4 + |Var a|^2)
};
inline constexpr std::size_t kCheckCount = 11;
const char* check_name(Check check);
inline constexpr std::array<Check, kCheckCount> kAllChecks = {
    Check::tight_scan,       Check::closed_form,    Check::canonical_pair_x,
    Check::canonical_pair_p, Check::coherent_floor, Check::uncertainty_area,
    Check::square_amplitude, Check::relaxed_lambda_plus, Check::relaxed_trace,
    Check::hierarchy,        Check::hyperboloid};

struct SweepConfig {
  std::size_t n_pure = 0;
  std::size_t n_mixed = 0;
  std::size_t cutoff = 32;
  // Cutoff for the mixed ensemble; defaults to `cutoff`.
  std::optional<std::size_t> mixed_cutoff;
  // Mixed-state ranks are drawn uniformly from [1, rank].
  std::size_t rank = 1;
  std::uint64_t seed = 0;
  // Allowed negative slack per check; checks not listed use the defaults
  // (1e-9, hyperboloid and hierarchy 1e-10).
  std::map<std::string, double> tolerances;
  GaugeConstants constants = kDerivedConstants;

  // Throws std::invalid_argument on cutoffs above 256 or ranks out of range.
  void validate() const;
  double tolerance(Check check) const;
  std::size_t effective_mixed_cutoff() const { return mixed_cutoff.value_or(cutoff); }
};

struct CheckTally {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  // Ensemble index of the worst state (pure states first, then mixed).
  std::int64_t worst_seed_index = -1;
};

struct SweepReport {
  std::array<CheckTally, kCheckCount> tallies{};
  std::size_t states = 0;
  std::size_t truncation_skips = 0;
  // min over states of Var n Cov(a+,a) / (c2 |<a>|^2); reported, not asserted.
  double min_trace_ratio = std::numeric_limits<double>::infinity();
  double wall_time = 0.0;  // seconds, excluded from the JSON form

  const CheckTally& tally(Check c) const { return tallies[static_cast<std::size_t>(c)]; }
  std::size_t total_violations() const;
};

SweepReport sweep(const SweepConfig& config);
SweepReport sweep_serial(const SweepConfig& config);

// Associative, order-independent merge (ties in worst slack go to the lower index).
void merge_into(SweepReport& into, const SweepReport& from);

struct CalibrationAnchor {
  Complex alpha;
  double c_estimate = 0.0;  // constant giving zero slack for this coherent state
  double slack = 0.0;       // Var n - closed-form bound under the final c_tight
};

struct CalibrationRow {
  std::string tag;
  std::string form;
  double printed = 0.0;
  double derived = 0.0;
  double ratio = 0.0;  // printed / derived
};

struct CalibrationReport {
  double c_tight = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::vector<CalibrationAnchor> anchors;
  std::vector<CalibrationRow> printed_vs_derived;

  GaugeConstants constants() const { return {c_tight, c1, c2}; }
};

inline constexpr double kAnchorAgreement = 1e-8;

// Fixes c_tight by coherent-state saturation over alpha in {0.5, 1, 2, 1+2i},
// c2 from summing the two canonical-pair inequalities and c1 = c_tight from
// inf_phi lambda = lambda_-. Throws CalibrationError if the anchors disagree
// by more than 1e-8.
CalibrationReport calibrate();

enum class Figure { fig2, fig3, fig4 };

struct FigureTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  // Summary statistics (fig4: relative gap to the relaxed bound).
  std::map<std::string, double> statistics;
};

// resolution in [16, 2048].
FigureTable figure_data(Figure which, int resolution,
                        const GaugeConstants& constants = kDerivedConstants);

// Header plus rows, every value with 17 significant digits.
void write_csv(std::ostream& out, const FigureTable& table);

}  // namespace fockgauge
