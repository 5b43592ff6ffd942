#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ugsim/io.hpp"

namespace ugsim {

std::string format_fixed6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  std::string s(buf, end);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "proposer_id,trial,arm,offer_frac,accepted\n";
  for (const auto& r : records) {
    out << r.proposer_id << ',' << r.trial << ',' << r.arm << ',' << format_fixed6(r.offer_frac)
        << ',' << (r.accepted ? 1 : 0) << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const AggregateCurve& curve) {
  out << "trial";
  for (std::size_t a = 0; a < curve.arm_count; ++a) out << ",f_" << a;
  out << '\n';
  for (std::size_t t = 1; t <= curve.trials(); ++t) {
    out << t;
    for (std::size_t a = 0; a < curve.arm_count; ++a) out << ',' << format_fixed6(curve.at(t, a));
    out << '\n';
  }
}

void write_calibration_csv(std::ostream& out, const std::vector<CalibrationRow>& rows) {
  out << "lambda_neg,lambda_pos,mean_frac,sd_frac,s,emotion,argmax_arm,gap_in_se\n";
  for (const auto& r : rows) {
    out << format_fixed6(r.point.emotions.lambda_negative) << ','
        << format_fixed6(r.point.emotions.lambda_positive) << ',' << format_fixed6(r.point.mean_frac)
        << ',' << format_fixed6(r.point.sd_frac) << ',' << r.point.samples << ','
        << to_string(r.emotion) << ',' << r.argmax_arm << ',' << format_fixed6(r.gap_in_se) << '\n';
  }
}

void write_reward_curve_csv(std::ostream& out, const RewardCurve& curve) {
  out << "arm,offer,p_accept,standard_error,expected_reward\n";
  for (std::size_t a = 0; a < curve.points.size(); ++a) {
    const auto& p = curve.points[a];
    out << a << ',' << format_fixed6(p.offer) << ',' << format_fixed6(p.p_accept) << ','
        << format_fixed6(p.standard_error) << ',' << format_fixed6(p.expected_reward) << '\n';
  }
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& fill) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) {
    throw std::runtime_error("cannot create directory '" + path.parent_path().string() +
                             "': " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  fill(out);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

AggregateCurve parse_aggregate_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("trial", 0) != 0) {
    throw std::runtime_error("aggregate CSV must start with a 'trial,f_0,...' header");
  }
  AggregateCurve curve;
  for (char c : line) curve.arm_count += c == ',';
  if (curve.arm_count == 0) throw std::runtime_error("aggregate CSV has no arm columns");

  std::size_t expected_trial = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> cells;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const auto comma = std::min(line.find(',', pos), line.size());
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + comma, v);
      if (ec != std::errc() || ptr != line.data() + comma) {
        throw std::runtime_error("aggregate CSV row " + std::to_string(expected_trial) +
                                 ": malformed number");
      }
      cells.push_back(v);
      pos = comma + 1;
    }
    if (cells.size() != curve.arm_count + 1) {
      throw std::runtime_error("aggregate CSV row " + std::to_string(expected_trial) +
                               ": wrong column count");
    }
    if (cells[0] != static_cast<double>(expected_trial)) {
      throw std::runtime_error("aggregate CSV trials must be consecutive from 1");
    }
    curve.frequencies.insert(curve.frequencies.end(), cells.begin() + 1, cells.end());
    ++expected_trial;
  }
  return curve;
}

AggregateCurve read_aggregate_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return parse_aggregate_csv(in);
}

}  // namespace ugsim
