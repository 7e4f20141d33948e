#pragma once

// JSON forms of the interchange records. Readers are strict: unknown or
// kind-irrelevant fields are rejected with a SchemaError naming the field.

#include <json.hpp>

#include "fockgauge/gauges.hpp"
#include "fockgauge/states.hpp"
#include "fockgauge/verify.hpp"

namespace fockgauge {

using Json = nlohmann::ordered_json;

// Parses text, converting syntax errors into SchemaError (with line/column).
Json parse_json_text(const std::string& text);

StateSpec parse_state_spec(const Json& doc);
Json to_json(const StateSpec& spec);

Json to_json(const MomentSummary& summary);
// Requires the raw moments; derived fields, when present, must agree with the
// values recomputed from them.
MomentSummary parse_moment_summary(const Json& doc);

Json to_json(const NoiseEllipse& ellipse);
Json to_json(const GaugeReport& report);

SweepConfig parse_sweep_config(const Json& doc);
Json to_json(const SweepReport& report);

Json to_json(const CalibrationReport& report);

// cutoff, origin, norm and boundary tail mass; amplitudes / matrix entries
// when `dump` is set.
Json state_metadata(const QuantumState& state, bool dump);

}  // namespace fockgauge
