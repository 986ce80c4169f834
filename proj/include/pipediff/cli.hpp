#pragma once

// Command-line front end:
//
//   pipediff validate <scenario>
//   pipediff run <scenario> [--trace PATH] [--report PATH] [--format text|json] [--seed N] [--theta DEG]
//   pipediff sweep <scenario> --theta-steps K [--report PATH] [--format ...] [--seed N] [--trace-prefix P]
//
// Exit codes: 0 success, 1 validation failure (including bad usage),
// 2 runtime / no-fit / I/O error. --seed falls back to $PIPEDIFF_SEED, then
// to the scenario file.

#include "pipediff/error.hpp"
#include "pipediff/report.hpp"
#include "pipediff/scenario.hpp"
#include "pipediff/simulator.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pipediff {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

namespace cli {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::optional<std::uint64_t> env_seed(std::ostream& err) {
  const char* raw = std::getenv("PIPEDIFF_SEED");
  if (!raw || !*raw) return std::nullopt;
  const std::string_view text(raw);
  if (auto v = scn::to_count(text)) return v;
  err << "warning: ignoring non-numeric PIPEDIFF_SEED='" << raw << "'\n";
  return std::nullopt;
}

struct CommonOptions {
  std::string scenario_path;
  std::string report_path;
  std::string format = "text";
  std::optional<std::uint64_t> seed;
};

// Parse and report diagnostics; nullopt means validation failed.
inline std::optional<Scenario> load(const std::string& path, std::ostream& err) {
  const auto text = read_file(path);
  auto parsed = parse_scenario(text);
  for (const auto& e : parsed.errors) err << path << ":" << e.describe() << "\n";
  if (!parsed.ok()) return std::nullopt;
  return std::move(*parsed.scenario);
}

inline void apply_seed(Scenario& sc, const CommonOptions& opt, std::ostream& err) {
  if (opt.seed) {
    sc.sim.seed = *opt.seed;
  } else if (auto s = env_seed(err)) {
    sc.sim.seed = *s;
  }
}

inline ReportFormat format_of(const CommonOptions& opt) {
  return opt.format == "json" ? ReportFormat::Json : ReportFormat::Text;
}

inline void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_text_file(path, content);
  }
}

inline int do_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  std::optional<Scenario> sc;
  try {
    sc = load(path, err);
  } catch (const Error& e) {
    err << path << ": " << e.what() << "\n";
    return kExitValidation;
  }
  if (!sc) {
    err << path << ": invalid\n";
    return kExitValidation;
  }
  // Passability is a runtime property; report it without failing validation.
  for (std::size_t k = 0; k < sc->network.segments.size(); ++k) {
    try {
      module_state(sc->robot, sc->network.spec, sc->network.segments[k], sc->sim.theta_deg * kDegToRad);
    } catch (const Error& e) {
      err << path << ": warning: segment " << k << " not passable: " << e.what() << "\n";
    }
  }
  out << path << ": ok (" << sc->network.segments.size() << " segments, "
      << scn::format_double(total_length(sc->network)) << " mm)\n";
  return kExitOk;
}

inline int do_run(const CommonOptions& opt, const std::string& trace_path, std::optional<double> theta_deg,
                  std::ostream& out, std::ostream& err) {
  auto sc = load(opt.scenario_path, err);
  if (!sc) return kExitValidation;
  apply_seed(*sc, opt, err);
  if (theta_deg) sc->sim.theta_deg = *theta_deg;

  const auto result = run(sc->network, sc->robot, sc->gear, sc->sim.to_params());
  if (!trace_path.empty()) write_trace(result.trace, trace_path);
  emit(opt.report_path, write_report(result.summary, format_of(opt), sc->report), out);
  if (result.summary.error) {
    err << "run aborted: " << result.summary.error->message << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

inline int do_sweep(const CommonOptions& opt, int steps, const std::string& trace_prefix, std::ostream& out,
                    std::ostream& err) {
  auto sc = load(opt.scenario_path, err);
  if (!sc) return kExitValidation;
  apply_seed(*sc, opt, err);

  std::vector<std::future<RunResult>> jobs;
  std::vector<double> thetas;
  for (int k = 0; k < steps; ++k) {
    const double theta = sc->sim.theta_deg + 360.0 * static_cast<double>(k) / static_cast<double>(steps);
    thetas.push_back(theta);
    SimBlock sim = sc->sim;
    sim.theta_deg = theta;
    jobs.push_back(std::async(std::launch::async, [net = sc->network, robot = sc->robot, gear = sc->gear,
                                                   params = sim.to_params()] {
      return run(net, robot, gear, params);
    }));
  }

  std::vector<SweepEntry> entries;
  bool aborted = false;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    auto result = jobs[k].get();
    if (!trace_prefix.empty()) write_trace(result.trace, trace_prefix + "_" + std::to_string(k) + ".csv");
    if (result.summary.error) {
      aborted = true;
      err << "theta " << thetas[k] << " deg aborted: " << result.summary.error->message << "\n";
    }
    entries.push_back({thetas[k], std::move(result.summary)});
  }
  emit(opt.report_path, write_sweep_report(entries, format_of(opt), sc->report), out);
  return aborted ? kExitRuntime : kExitOk;
}

}  // namespace cli

inline int cli_main(const std::vector<std::string>& args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"Kinematic simulator for a three-track in-pipe robot with a passive three-output differential",
               "pipediff"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
  validate_cmd->add_option("scenario", validate_path, "Scenario file")->required();

  cli::CommonOptions run_opt;
  std::string trace_path;
  std::optional<double> theta_deg;
  auto* run_cmd = app.add_subcommand("run", "Simulate one traversal");
  run_cmd->add_option("scenario", run_opt.scenario_path, "Scenario file")->required();
  run_cmd->add_option("--trace", trace_path, "Write the trace CSV here");
  run_cmd->add_option("--report", run_opt.report_path, "Write the report here (default: stdout)");
  run_cmd->add_option("--format", run_opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  run_cmd->add_option("--seed", run_opt.seed, "Disturbance seed (overrides PIPEDIFF_SEED and the file)");
  run_cmd->add_option("--theta", theta_deg, "Roll orientation in degrees (overrides the file)");

  cli::CommonOptions sweep_opt;
  int theta_steps = 3;
  std::string trace_prefix;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run evenly spaced roll orientations");
  sweep_cmd->add_option("scenario", sweep_opt.scenario_path, "Scenario file")->required();
  sweep_cmd->add_option("--theta-steps", theta_steps, "Number of orientations")
      ->required()
      ->check(CLI::Range(1, 3600));
  sweep_cmd->add_option("--report", sweep_opt.report_path, "Write the aggregate report here (default: stdout)");
  sweep_cmd->add_option("--format", sweep_opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  sweep_cmd->add_option("--seed", sweep_opt.seed, "Disturbance seed");
  sweep_cmd->add_option("--trace-prefix", trace_prefix, "Write PREFIX_<k>.csv per orientation");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitValidation;
  }

  try {
    if (*validate_cmd) return cli::do_validate(validate_path, out, err);
    if (*run_cmd) return cli::do_run(run_opt, trace_path, theta_deg, out, err);
    if (*sweep_cmd) return cli::do_sweep(sweep_opt, theta_steps, trace_prefix, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitValidation;
}

}  // namespace pipediff
