// ugsim: Thompson Sampling Proposers against an SbEU Responder.
//
//   ugsim simulate  --config <path> [--out-dir <dir>] [--trials N]
//   ugsim oracle    --config <path> [--emotion E] [--out <csv>]
//   ugsim calibrate --config <path> [--out-dir <dir>] [--all]
//   ugsim plot      --in aggregate.csv --out fig.svg [--title T]
//
// Exit codes: 0 success, 1 usage/config error, 2 runtime error,
// 3 calibration infeasible.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

#include "ugsim/config.hpp"
#include "ugsim/experiment.hpp"
#include "ugsim/io.hpp"
#include "ugsim/oracle.hpp"

namespace fs = std::filesystem;
using namespace ugsim;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitInfeasible = 3;

int run_simulate(const RunConfig& cfg, const fs::path& out_dir) {
  const auto result = run_experiment(cfg.experiment);
  const auto curve = aggregate(result.records, cfg.experiment);
  write_file(out_dir / "trials.csv", [&](std::ostream& o) { write_trials_csv(o, result.records); });
  write_file(out_dir / "aggregate.csv", [&](std::ostream& o) { write_aggregate_csv(o, curve); });

  const auto n = curve.trials();
  std::cout << "emotion=" << to_string(cfg.experiment.emotion) << " proposers="
            << cfg.experiment.n_proposers << " trials=" << n << '\n';
  for (std::size_t a = 0; a < curve.arm_count; ++a) {
    std::cout << "  f_" << a << " = " << format_fixed6(curve.at(n, a)) << '\n';
  }
  std::cout << "final argmax arm " << curve.final_argmax() << " (margin "
            << format_fixed6(curve.final_margin()) << ")\n"
            << "wrote " << (out_dir / "trials.csv").string() << " and "
            << (out_dir / "aggregate.csv").string() << '\n';
  return 0;
}

int run_oracle(const RunConfig& cfg, std::optional<Emotion> emotion, const std::string& out) {
  const Emotion e = emotion.value_or(cfg.experiment.emotion);
  const auto& x = cfg.experiment;
  const auto curve = reward_curve(x.responder_model(e), x.grid(),
                                  make_proposer_utility(x.proposer_u, x.emotions.alpha),
                                  cfg.oracle_reps, x.master_seed);
  write_reward_curve_csv(std::cout, curve);
  std::cout << "# emotion=" << to_string(e) << " argmax_arm=" << curve.argmax()
            << " gap_in_se=" << format_fixed6(curve.gap_in_se()) << '\n';
  if (!out.empty()) {
    write_file(out, [&](std::ostream& o) { write_reward_curve_csv(o, curve); });
  }
  return 0;
}

int run_calibrate(const RunConfig& cfg, const fs::path& out_dir, bool scan_all) {
  const auto& x = cfg.experiment;
  CalibrationSettings settings;
  settings.total = x.total;
  settings.arm_count = x.arm_count;
  settings.lambda_neutral = x.emotions.lambda_neutral;
  settings.alpha = x.emotions.alpha;
  settings.epsilon = x.epsilon;
  settings.reps = cfg.oracle_reps;
  settings.seed = x.master_seed;
  settings.proposer_u = make_proposer_utility(x.proposer_u, x.emotions.alpha);
  settings.min_gap_se = cfg.min_gap_se;
  settings.scan_all = scan_all;

  const auto path = out_dir / "calibration.csv";
  try {
    const auto result = calibrate(cfg.target, cfg.search, settings);
    write_file(path, [&](std::ostream& o) { write_calibration_csv(o, result.rows); });
    std::cout << "# calibrated point " << result.selected.index << " of " << cfg.search.size()
              << " (" << result.feasible.size() << " feasible seen)\n"
              << format_calibrated_config(result.selected) << "# wrote " << path.string() << '\n';
    return 0;
  } catch (const CalibrationInfeasible& e) {
    write_file(path, [&](std::ostream& o) { write_calibration_csv(o, e.rows()); });
    std::cerr << "ugsim: " << e.what() << "; scanned " << cfg.search.size()
              << " points, see " << path.string() << '\n';
    return kExitInfeasible;
  }
}

int run_plot(const fs::path& in, const fs::path& out, const std::string& title) {
  const auto curve = read_aggregate_csv(in);
  const auto svg = render_svg(curve, title);
  write_file(out, [&](std::ostream& o) { o << svg; });
  std::cout << "wrote " << out.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thompson Sampling Ultimatum Game Proposers against an SbEU Responder"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::int64_t trials_override = 0;
  std::string emotion_name;
  std::string oracle_out;
  bool scan_all = false;
  std::string plot_in;
  std::string plot_out;
  std::string plot_title;

  auto* simulate = app.add_subcommand("simulate", "run M Proposers for N trials, write CSVs");
  simulate->add_option("--config", config_path, "config file")->required();
  simulate->add_option("--out-dir", out_dir, "output directory (overrides out_dir)");
  simulate->add_option("--trials", trials_override, "override n_trials (e.g. 100000)");

  auto* oracle = app.add_subcommand("oracle", "Monte Carlo reward curve for the Responder");
  oracle->add_option("--config", config_path, "config file")->required();
  oracle->add_option("--emotion", emotion_name, "override the config emotion");
  oracle->add_option("--out", oracle_out, "also write the curve to this CSV");

  auto* calib = app.add_subcommand("calibrate", "grid-search Responder parameters");
  calib->add_option("--config", config_path, "config file")->required();
  calib->add_option("--out-dir", out_dir, "output directory (overrides out_dir)");
  calib->add_flag("--all", scan_all, "scan the whole grid and report every point");

  auto* plot = app.add_subcommand("plot", "render aggregate.csv as an SVG line chart");
  plot->add_option("--in", plot_in, "aggregate CSV")->required();
  plot->add_option("--out", plot_out, "SVG output path")->required();
  plot->add_option("--title", plot_title, "chart title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (plot->parsed()) return run_plot(plot_in, plot_out, plot_title);

    RunConfig cfg = load_config(config_path);
    const fs::path dir = out_dir.empty() ? fs::path(cfg.out_dir) : fs::path(out_dir);
    if (simulate->parsed()) {
      if (trials_override != 0) {
        cfg.experiment.n_trials = trials_override;
        cfg.experiment.validate();
      }
      return run_simulate(cfg, dir);
    }
    if (oracle->parsed()) {
      std::optional<Emotion> e;
      if (!emotion_name.empty()) e = parse_emotion(emotion_name);
      return run_oracle(cfg, e, oracle_out);
    }
    return run_calibrate(cfg, dir, scan_all);
  } catch (const ConfigError& e) {
    std::cerr << "ugsim: config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ugsim: invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "ugsim: " << e.what() << '\n';
    return kExitRuntime;
  }
}
