#pragma once

// Geometry-required track speeds, differential-resolved track speeds, and the
// slip / APE diagnostics comparing the two.

#include "pipediff/error.hpp"
#include "pipediff/pipe_geometry.hpp"
#include "pipediff/robot_model.hpp"
#include "pipediff/transmission.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

namespace pipediff {

enum class SpeedSource { Theoretical, Resolved };

struct TrackSpeeds {
  Triple v{};  // mm/s at the sprocket, tracks A, B, C
  SpeedSource source = SpeedSource::Theoretical;

  double mean() const { return (v[0] + v[1] + v[2]) / 3.0; }
};

struct SlipReport {
  Triple slip{};                         // mm/s
  Triple ape{};                          // percent
  std::array<bool, 3> ape_defined{true, true, true};
};

/// Linear speed of the robot body: n * w_u at each output, times sprocket radius.
inline double nominal_speed(const GearTrainConfig& gear, const RobotConfig& robot, double omega_u) {
  return gear.input_to_ring_ratio * omega_u * robot.sprocket_radius;
}

inline TrackSpeeds theoretical_speeds(const Segment& segment, double theta, double v_nominal,
                                      double contact_radius) {
  TrackSpeeds out;
  out.source = SpeedSource::Theoretical;
  if (std::holds_alternative<Straight>(segment)) {
    out.v = {v_nominal, v_nominal, v_nominal};
    return out;
  }
  const auto& bend = std::get<Bend>(segment);
  for (std::size_t i = 0; i < 3; ++i) {
    out.v[i] = v_nominal * module_path_radius(bend, theta, i, contact_radius) / bend.radius;
  }
  return out;
}

struct DisturbanceConfig {
  double amplitude = 0.0;  // fractional, 0.025 = 2.5 %
  std::uint64_t seed = 0;

  friend bool operator==(const DisturbanceConfig&, const DisturbanceConfig&) = default;
};

/// Per-track multiplicative contact irregularity, 1 + a * U[-1, 1].
/// Holds its generator by value; copies replay the same sequence.
class DisturbanceSource {
 public:
  explicit DisturbanceSource(DisturbanceConfig cfg = {}) : cfg_(cfg), engine_(cfg.seed) {}

  bool active() const { return cfg_.amplitude != 0.0; }

  Triple next() {
    if (!active()) return {1.0, 1.0, 1.0};
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Triple f{};
    for (auto& x : f) x = 1.0 + cfg_.amplitude * unit(engine_);
    return f;
  }

 private:
  DisturbanceConfig cfg_;
  std::mt19937_64 engine_;
};

/// Track speeds delivered by the differential.
///
/// The wall demands each track's contact-path speed (scaled by `disturbance`).
/// Demands that already satisfy the differential's sum constraint are imposed
/// as-is; otherwise the mismatch is shared equally across the tracks (the
/// part that slips) before imposing. The gear relation is homogeneous, so it
/// is solved directly in sprocket-rim units.
inline TrackSpeeds resolved_speeds(const GearTrainConfig& gear, const RobotConfig& robot,
                                   const Segment& segment, double theta, double omega_u,
                                   double contact_radius, const Triple& disturbance = {1.0, 1.0, 1.0}) {
  robot.validate();
  const double v_nom = nominal_speed(gear, robot, omega_u);
  const TrackSpeeds theo = theoretical_speeds(segment, theta, v_nom, contact_radius);

  Triple demand{};
  for (std::size_t i = 0; i < 3; ++i) demand[i] = theo.v[i] * disturbance[i];

  const double rim_input = omega_u * robot.sprocket_radius;
  const double target = 3.0 * gear.input_to_ring_ratio * rim_input;
  const double excess = detail::sorted_sum(demand, 3) - target;
  if (std::abs(excess) > kInfeasibleRelTol * std::max(1.0, std::abs(target))) {
    for (auto& d : demand) d -= excess / 3.0;
  }

  const LoadState loads{load::ImposedSpeed{demand[0]}, load::ImposedSpeed{demand[1]},
                        load::ImposedSpeed{demand[2]}};
  const SpeedSolution sol = solve_output_speeds(gear, rim_input, loads);

  TrackSpeeds out;
  out.source = SpeedSource::Resolved;
  out.v = sol.omega;
  return out;
}

inline SlipReport slip_and_ape(const TrackSpeeds& resolved, const TrackSpeeds& theoretical) {
  SlipReport rep;
  for (std::size_t i = 0; i < 3; ++i) {
    rep.slip[i] = std::abs(resolved.v[i] - theoretical.v[i]);
    if (theoretical.v[i] != 0.0) {
      rep.ape[i] = 100.0 * rep.slip[i] / std::abs(theoretical.v[i]);
    } else {
      rep.ape[i] = 0.0;
      rep.ape_defined[i] = (rep.slip[i] == 0.0);
    }
  }
  return rep;
}

}  // namespace pipediff
