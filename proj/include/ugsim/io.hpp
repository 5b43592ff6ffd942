#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ugsim/experiment.hpp"
#include "ugsim/oracle.hpp"

namespace ugsim {

/// Fixed-point with 6 decimals, '.' separator, never an exponent.
std::string format_fixed6(double v);

// CSV writers. All use LF line endings and produce identical bytes for
// identical inputs.
void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_aggregate_csv(std::ostream& out, const AggregateCurve& curve);
void write_calibration_csv(std::ostream& out, const std::vector<CalibrationRow>& rows);
void write_reward_curve_csv(std::ostream& out, const RewardCurve& curve);

/// Opens `path` for writing (creating parent directories), calls `fill`,
/// and throws std::runtime_error with the path on any I/O failure.
void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& fill);

/// Parses a file written by write_aggregate_csv.
AggregateCurve read_aggregate_csv(const std::filesystem::path& path);
AggregateCurve parse_aggregate_csv(std::istream& in);

/// Line chart of the curve: one polyline per arm, legend keyed by offer
/// fraction. Pure function of the curve. Throws on an empty curve.
std::string render_svg(const AggregateCurve& curve, const std::string& title = "");

}  // namespace ugsim
