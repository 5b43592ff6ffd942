#include "ugsim/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ugsim {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("not a valid number: '" + std::string(text) + "'");
  }
  return v;
}

template <typename T>
std::vector<T> parse_list(std::string_view text) {
  std::vector<T> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_number<T>(trim(text.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"total", [](RunConfig& c, std::string_view v) { c.experiment.total = parse_number<double>(v); }},
      {"arm_count", [](RunConfig& c, std::string_view v) {
         c.experiment.arm_count = parse_number<std::size_t>(v);
       }},
      {"emotion", [](RunConfig& c, std::string_view v) { c.experiment.emotion = parse_emotion(v); }},
      {"lambda_neutral", [](RunConfig& c, std::string_view v) {
         c.experiment.emotions.lambda_neutral = parse_number<double>(v);
       }},
      {"lambda_negative", [](RunConfig& c, std::string_view v) {
         c.experiment.emotions.lambda_negative = parse_number<double>(v);
       }},
      {"lambda_positive", [](RunConfig& c, std::string_view v) {
         c.experiment.emotions.lambda_positive = parse_number<double>(v);
       }},
      {"alpha", [](RunConfig& c, std::string_view v) { c.experiment.emotions.alpha = parse_number<double>(v); }},
      {"mean_frac", [](RunConfig& c, std::string_view v) { c.experiment.mean_frac = parse_number<double>(v); }},
      {"sd_frac", [](RunConfig& c, std::string_view v) { c.experiment.sd_frac = parse_number<double>(v); }},
      {"samples", [](RunConfig& c, std::string_view v) { c.experiment.samples = parse_number<int>(v); }},
      {"epsilon", [](RunConfig& c, std::string_view v) { c.experiment.epsilon = parse_number<double>(v); }},
      {"n_trials", [](RunConfig& c, std::string_view v) {
         c.experiment.n_trials = parse_number<std::int64_t>(v);
       }},
      {"n_proposers", [](RunConfig& c, std::string_view v) {
         c.experiment.n_proposers = parse_number<int>(v);
       }},
      {"master_seed", [](RunConfig& c, std::string_view v) {
         c.experiment.master_seed = parse_number<std::uint64_t>(v);
       }},
      {"proposer_u", [](RunConfig& c, std::string_view v) {
         c.experiment.proposer_u = parse_proposer_utility(v);
       }},
      {"out_dir", [](RunConfig& c, std::string_view v) { c.out_dir = std::string(v); }},
      {"oracle_reps", [](RunConfig& c, std::string_view v) { c.oracle_reps = parse_number<int>(v); }},
      {"target_neutral", [](RunConfig& c, std::string_view v) {
         c.target.neutral = parse_number<std::size_t>(v);
       }},
      {"target_negative", [](RunConfig& c, std::string_view v) {
         c.target.negative = parse_number<std::size_t>(v);
       }},
      {"target_positive", [](RunConfig& c, std::string_view v) {
         c.target.positive = parse_number<std::size_t>(v);
       }},
      {"grid_lambda_negative", [](RunConfig& c, std::string_view v) {
         c.search.lambda_negative = parse_list<double>(v);
       }},
      {"grid_lambda_positive", [](RunConfig& c, std::string_view v) {
         c.search.lambda_positive = parse_list<double>(v);
       }},
      {"grid_mean_frac", [](RunConfig& c, std::string_view v) { c.search.mean_frac = parse_list<double>(v); }},
      {"grid_sd_frac", [](RunConfig& c, std::string_view v) { c.search.sd_frac = parse_list<double>(v); }},
      {"grid_samples", [](RunConfig& c, std::string_view v) { c.search.samples = parse_list<int>(v); }},
      {"min_gap_se", [](RunConfig& c, std::string_view v) { c.min_gap_se = parse_number<double>(v); }},
  };
  return table;
}

}  // namespace

RunConfig parse_config(std::string_view text, std::string_view source) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;

    const auto where = [&] { return std::string(source) + ":" + std::to_string(line_no) + ": "; };
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where() + "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto val = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(where() + "unknown key '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError(where() + "key '" + std::string(key) + "' set twice");
    }
    if (val.empty()) throw ConfigError(where() + "missing value for '" + std::string(key) + "'");
    try {
      it->second(cfg, val);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where() + std::string(key) + ": " + e.what());
    }
  }
  try {
    cfg.experiment.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string(source) + ": " + e.what());
  }
  if (cfg.oracle_reps < 1000) throw ConfigError(std::string(source) + ": oracle_reps must be >= 1000");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string format_calibrated_config(const CalibrationPoint& p) {
  std::ostringstream out;
  out << "lambda_neutral = " << p.emotions.lambda_neutral << '\n'
      << "lambda_negative = " << p.emotions.lambda_negative << '\n'
      << "lambda_positive = " << p.emotions.lambda_positive << '\n'
      << "alpha = " << p.emotions.alpha << '\n'
      << "mean_frac = " << p.mean_frac << '\n'
      << "sd_frac = " << p.sd_frac << '\n'
      << "samples = " << p.samples << '\n';
  return out.str();
}

}  // namespace ugsim
