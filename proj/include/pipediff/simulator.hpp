#pragma once

// Fixed-step kinematic traversal of a pipe network.

#include "pipediff/error.hpp"
#include "pipediff/kinematics.hpp"
#include "pipediff/pipe_geometry.hpp"
#include "pipediff/robot_model.hpp"
#include "pipediff/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace pipediff {

struct SimParams {
  double dt = 0.01;       // s
  double omega_u = 0.0;   // rad/s
  double theta = 0.0;     // roll orientation, rad
  DisturbanceConfig disturbance;
  std::optional<double> t_max;  // s; unset runs to the end of the network

  friend bool operator==(const SimParams&, const SimParams&) = default;

  void validate() const {
    require(is_finite(dt) && dt > 0.0, ErrorCode::InvalidArgument, "dt must be > 0");
    require(is_finite(omega_u), ErrorCode::InvalidArgument, "input speed must be finite");
    require(is_finite(theta), ErrorCode::InvalidArgument, "orientation must be finite");
    require(is_finite(disturbance.amplitude) && disturbance.amplitude >= 0.0 && disturbance.amplitude < 1.0,
            ErrorCode::InvalidArgument, "disturbance amplitude must be in [0, 1)");
    require(!t_max || (is_finite(*t_max) && *t_max > 0.0), ErrorCode::InvalidArgument,
            "t_max must be > 0");
  }
};

struct TraceRecord {
  double t = 0.0;
  double s = 0.0;
  std::size_t segment = 0;
  double theta = 0.0;
  Triple v_resolved{};
  Triple v_theoretical{};
  Triple compression{};
  Triple tilt_deg{};
  Triple slip{};
  Triple distance{};  // cumulative per-track, mm
};

using Trace = std::vector<TraceRecord>;

struct SimState {
  std::size_t step = 0;
  double t = 0.0;
  double s = 0.0;
  Triple distance{};
  DisturbanceSource disturbance;
  TraceRecord record;
};

/// Read-only bundle of everything a step needs.
struct SimContext {
  const PipeNetwork& net;
  const RobotConfig& robot;
  const GearTrainConfig& gear;
  const SimParams& params;
  double total_length = 0.0;

  SimContext(const PipeNetwork& n, const RobotConfig& r, const GearTrainConfig& g, const SimParams& p)
      : net(n), robot(r), gear(g), params(p), total_length(pipediff::total_length(n)) {}
};

namespace detail {

inline TraceRecord evaluate(const SimContext& ctx, double t, double s, const Triple& distance,
                            DisturbanceSource& disturbance) {
  const Location loc = locate(ctx.net, s);
  const Segment& seg = ctx.net.segments[loc.segment_index];
  const ModuleState modules = module_state(ctx.robot, ctx.net.spec, seg, ctx.params.theta);
  // All modules carry the same compression, hence the same contact radius.
  const double r_c = modules.contact_radius[0];

  const double v_nom = nominal_speed(ctx.gear, ctx.robot, ctx.params.omega_u);
  const TrackSpeeds theo = theoretical_speeds(seg, ctx.params.theta, v_nom, r_c);
  const TrackSpeeds res = resolved_speeds(ctx.gear, ctx.robot, seg, ctx.params.theta, ctx.params.omega_u,
                                          r_c, disturbance.next());
  const SlipReport slip = slip_and_ape(res, theo);

  TraceRecord rec;
  rec.t = t;
  rec.s = s;
  rec.segment = loc.segment_index;
  rec.theta = ctx.params.theta;
  rec.v_resolved = res.v;
  rec.v_theoretical = theo.v;
  rec.compression = modules.compression;
  rec.tilt_deg = modules.tilt_deg;
  rec.slip = slip.slip;
  rec.distance = distance;
  return rec;
}

}  // namespace detail

inline SimState initial_state(const SimContext& ctx) {
  SimState st{0, 0.0, 0.0, {}, DisturbanceSource(ctx.params.disturbance), {}};
  st.record = detail::evaluate(ctx, 0.0, 0.0, st.distance, st.disturbance);
  return st;
}

/// Advance one fixed step. Returns nullopt once the end of the network has
/// been reached (completion). Throws on no-fit or infeasible constraints at
/// the new position.
inline std::optional<SimState> step(const SimState& state, const SimContext& ctx) {
  if (state.s >= ctx.total_length) return std::nullopt;
  const double dt = ctx.params.dt;
  const auto& v = state.record.v_resolved;

  SimState next = state;
  next.step = state.step + 1;
  next.t = static_cast<double>(next.step) * dt;
  next.s = std::min(ctx.total_length, state.s + (v[0] + v[1] + v[2]) / 3.0 * dt);
  for (std::size_t i = 0; i < 3; ++i) next.distance[i] = state.distance[i] + v[i] * dt;
  next.record = detail::evaluate(ctx, next.t, next.s, next.distance, next.disturbance);
  return next;
}

/// Reference-point travel from fully inserted to fully emerged.
inline double effective_robot_path(const PipeNetwork& net, const RobotConfig& robot) {
  const double total = total_length(net);
  require(total >= robot.length, ErrorCode::InvalidScenario,
          "network length " + std::to_string(total) + " mm shorter than robot " +
              std::to_string(robot.length) + " mm");
  return total - robot.length;
}

struct SegmentSummary {
  std::size_t index = 0;
  std::string label;
  bool bend = false;
  double length = 0.0;
  std::optional<double> entry_t;
  std::optional<double> exit_t;
  std::size_t records = 0;
  Triple mean_speed{};
  Triple min_speed{};
  Triple max_speed{};
  Triple mean_theoretical{};
  // Over the middle 80 % of the segment's arc.
  std::size_t window_records = 0;
  Triple window_ape{};
  std::array<bool, 3> window_ape_defined{false, false, false};
  double max_compression = 0.0;
  double max_tilt_deg = 0.0;
  double max_slip = 0.0;
  bool compression_ok = true;
  bool tilt_ok = true;
};

struct RunError {
  ErrorCode code;
  std::string message;
};

struct SummaryReport {
  double theta = 0.0;
  double nominal_speed = 0.0;
  double dt = 0.0;
  double total_length = 0.0;
  bool completed = false;
  double end_time = 0.0;
  std::optional<RunError> error;
  std::vector<SegmentSummary> segments;
  double max_compression = 0.0;
  double max_tilt_deg = 0.0;
  double max_slip = 0.0;
  double limit_compression = 0.0;
  double limit_tilt_deg = 0.0;
  Triple mean_speed{};  // whole run, per track
};

struct RunResult {
  Trace trace;
  SummaryReport summary;
};

inline constexpr double kApeWindowLow = 0.1;
inline constexpr double kApeWindowHigh = 0.9;

inline SummaryReport summarize(const Trace& trace, const PipeNetwork& net, const RobotConfig& robot,
                               const GearTrainConfig& gear, const SimParams& params) {
  SummaryReport rep;
  rep.theta = params.theta;
  rep.nominal_speed = nominal_speed(gear, robot, params.omega_u);
  rep.dt = params.dt;
  rep.total_length = total_length(net);
  rep.limit_compression = robot.max_compression;
  rep.limit_tilt_deg = robot.max_tilt_deg;
  if (!trace.empty()) rep.end_time = trace.back().t;

  const auto starts = segment_starts(net);
  rep.segments.resize(net.segments.size());
  std::vector<Triple> sum_res(net.segments.size()), sum_theo(net.segments.size());
  std::vector<Triple> win_res(net.segments.size()), win_theo(net.segments.size());

  for (std::size_t k = 0; k < net.segments.size(); ++k) {
    auto& seg = rep.segments[k];
    seg.index = k;
    seg.label = segment_label(net.segments[k]);
    seg.bend = is_bend(net.segments[k]);
    seg.length = segment_length(net.segments[k]);
    seg.min_speed.fill(std::numeric_limits<double>::infinity());
    seg.max_speed.fill(-std::numeric_limits<double>::infinity());
  }

  Triple run_sum{};
  for (const auto& rec : trace) {
    auto& seg = rep.segments[rec.segment];
    if (!seg.entry_t) seg.entry_t = rec.t;
    for (std::size_t j = 0; j < rec.segment; ++j) {
      if (!rep.segments[j].exit_t) rep.segments[j].exit_t = rec.t;
    }
    ++seg.records;
    const double lo = starts[rec.segment] + kApeWindowLow * seg.length;
    const double hi = starts[rec.segment] + kApeWindowHigh * seg.length;
    const bool in_window = rec.s >= lo && rec.s <= hi;
    if (in_window) ++seg.window_records;
    for (std::size_t i = 0; i < 3; ++i) {
      sum_res[rec.segment][i] += rec.v_resolved[i];
      sum_theo[rec.segment][i] += rec.v_theoretical[i];
      if (in_window) {
        win_res[rec.segment][i] += rec.v_resolved[i];
        win_theo[rec.segment][i] += rec.v_theoretical[i];
      }
      seg.min_speed[i] = std::min(seg.min_speed[i], rec.v_resolved[i]);
      seg.max_speed[i] = std::max(seg.max_speed[i], rec.v_resolved[i]);
      seg.max_compression = std::max(seg.max_compression, rec.compression[i]);
      seg.max_tilt_deg = std::max(seg.max_tilt_deg, std::abs(rec.tilt_deg[i]));
      seg.max_slip = std::max(seg.max_slip, rec.slip[i]);
      run_sum[i] += rec.v_resolved[i];
    }
  }

  for (std::size_t k = 0; k < rep.segments.size(); ++k) {
    auto& seg = rep.segments[k];
    if (seg.records == 0) {
      seg.min_speed = {};
      seg.max_speed = {};
    } else {
      const double count = static_cast<double>(seg.records);
      for (std::size_t i = 0; i < 3; ++i) {
        seg.mean_speed[i] = sum_res[k][i] / count;
        seg.mean_theoretical[i] = sum_theo[k][i] / count;
      }
    }
    if (seg.window_records > 0) {
      for (std::size_t i = 0; i < 3; ++i) {
        const double theo = win_theo[k][i];
        if (theo != 0.0) {
          seg.window_ape[i] = 100.0 * std::abs(win_res[k][i] - theo) / std::abs(theo);
          seg.window_ape_defined[i] = true;
        } else {
          seg.window_ape_defined[i] = (win_res[k][i] == 0.0);
        }
      }
    }
    seg.compression_ok = seg.max_compression <= robot.max_compression;
    seg.tilt_ok = seg.max_tilt_deg <= robot.max_tilt_deg;
    rep.max_compression = std::max(rep.max_compression, seg.max_compression);
    rep.max_tilt_deg = std::max(rep.max_tilt_deg, seg.max_tilt_deg);
    rep.max_slip = std::max(rep.max_slip, seg.max_slip);
  }

  if (!trace.empty()) {
    for (std::size_t i = 0; i < 3; ++i) rep.mean_speed[i] = run_sum[i] / static_cast<double>(trace.size());
    const auto& last = trace.back();
    if (last.s >= rep.total_length) {
      auto& seg = rep.segments[last.segment];
      if (!seg.exit_t) seg.exit_t = last.t;
    }
  }
  return rep;
}

/// Run to completion (or t_max). No-fit and infeasible errors after the
/// first record abort the run; the partial trace is kept and the cause is
/// recorded in the summary.
inline RunResult run(const PipeNetwork& net, const RobotConfig& robot, const GearTrainConfig& gear,
                     const SimParams& params) {
  const auto violations = validate(net);
  if (!violations.empty()) {
    std::string msg = "invalid network:";
    for (const auto& v : violations) {
      msg += " [" + std::string(to_string(v.kind)) + " @ " + std::to_string(v.index) + "]";
    }
    throw Error(ErrorCode::InvalidScenario, msg);
  }
  robot.validate();
  gear.validate();
  params.validate();
  require(params.omega_u > 0.0, ErrorCode::InvalidArgument, "input speed must be > 0 to traverse");

  const SimContext ctx(net, robot, gear, params);
  RunResult result;
  const auto expected = static_cast<std::size_t>(
      std::ceil(ctx.total_length / std::max(nominal_speed(gear, robot, params.omega_u), 1e-12) / params.dt));
  result.trace.reserve(std::min<std::size_t>(expected + 2, 10'000'000));

  std::optional<RunError> error;
  bool completed = false;
  try {
    std::optional<SimState> state = initial_state(ctx);
    while (state) {
      result.trace.push_back(state->record);
      if (params.t_max && state->t >= *params.t_max) break;
      state = step(*state, ctx);
      if (!state) completed = true;
    }
  } catch (const Error& e) {
    error = RunError{e.code(), e.what()};
  }

  result.summary = summarize(result.trace, net, robot, gear, params);
  result.summary.completed = completed;
  result.summary.error = error;
  return result;
}

}  // namespace pipediff
