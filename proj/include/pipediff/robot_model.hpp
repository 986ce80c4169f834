#pragma once

// Spring-loaded wall-press model for the three track modules.

#include "pipediff/error.hpp"
#include "pipediff/pipe_geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace pipediff {

inline constexpr double kRadToDeg = 180.0 / std::numbers::pi;

struct RobotConfig {
  double sprocket_radius = 0.0;             // mm
  double length = 0.0;                      // L, mm
  double spring_stiffness = 2.0;            // k, N/mm
  double preload_compression = 0.0;         // delta0, mm
  double max_compression = 16.0;            // delta_max, mm
  double max_tilt_deg = 10.0;               // phi
  double nominal_body_radius = 0.0;         // pipe axis to contact at delta0, mm
  int rollers_per_module = 3;

  friend bool operator==(const RobotConfig&, const RobotConfig&) = default;

  static constexpr std::array<double, 3> module_angles_deg{0.0, 120.0, 240.0};

  void validate() const {
    require(is_finite(sprocket_radius) && sprocket_radius > 0.0, ErrorCode::InvalidArgument,
            "sprocket_radius must be > 0");
    require(is_finite(length) && length > 0.0, ErrorCode::InvalidArgument, "robot length must be > 0");
    require(is_finite(spring_stiffness) && spring_stiffness > 0.0, ErrorCode::InvalidArgument,
            "spring_stiffness must be > 0");
    require(is_finite(preload_compression) && preload_compression >= 0.0, ErrorCode::InvalidArgument,
            "preload_compression must be >= 0");
    require(is_finite(max_compression) && preload_compression <= max_compression,
            ErrorCode::InvalidArgument, "preload_compression must not exceed max_compression");
    require(is_finite(max_tilt_deg) && max_tilt_deg > 0.0, ErrorCode::InvalidArgument,
            "max_tilt must be > 0");
    require(is_finite(nominal_body_radius) && nominal_body_radius > 0.0, ErrorCode::InvalidArgument,
            "nominal_body_radius must be > 0");
    require(rollers_per_module > 0, ErrorCode::InvalidArgument, "rollers_per_module must be > 0");
  }
};

using ModuleTriple = std::array<double, 3>;

struct ModuleState {
  ModuleTriple compression{};     // mm
  ModuleTriple tilt_deg{};        // asymmetric compression angle
  ModuleTriple contact_radius{};  // mm from pipe axis
};

inline double contact_radius(const RobotConfig& cfg, double compression) {
  require(is_finite(compression) && compression >= 0.0 && compression <= cfg.max_compression,
          ErrorCode::InvalidArgument,
          "compression " + std::to_string(compression) + " outside [0, " +
              std::to_string(cfg.max_compression) + "]");
  return std::max(0.0, cfg.nominal_body_radius - (compression - cfg.preload_compression));
}

inline double spring_force(const RobotConfig& cfg, double compression) {
  return cfg.spring_stiffness * compression;
}

/// Identical compression on all three modules that puts each contact on a
/// wall of radius `spec.inner_radius`.
inline ModuleTriple compression_in_straight(const RobotConfig& cfg, const PipeSpec& spec) {
  const double delta = cfg.preload_compression + (cfg.nominal_body_radius - spec.inner_radius);
  require(delta >= 0.0, ErrorCode::NoFit,
          "pipe radius " + std::to_string(spec.inner_radius) + " too wide: modules lose wall contact");
  require(delta <= cfg.max_compression, ErrorCode::NoFit,
          "straight pipe needs compression " + std::to_string(delta) + " mm > max " +
              std::to_string(cfg.max_compression) + " mm");
  return {delta, delta, delta};
}

/// Extra compression a rigid body of length L needs inside centerline
/// curvature R (chord sagitta).
inline double bend_sagitta(double robot_length, double bend_radius) {
  return robot_length * robot_length / (8.0 * bend_radius);
}

/// All three modules absorb the sagitta; with three equal springs and a
/// floating body center the increment is the same for every roll angle.
inline ModuleTriple compression_in_bend(const RobotConfig& cfg, const PipeSpec& spec, const Bend& bend,
                                        double theta) {
  require(is_finite(theta), ErrorCode::InvalidArgument, "non-finite orientation");
  require(is_finite(bend.radius) && bend.radius > 0.0, ErrorCode::InvalidGeometry,
          "bend radius must be > 0");
  const ModuleTriple straight = compression_in_straight(cfg, spec);
  const double extra = bend_sagitta(cfg.length, bend.radius);
  const double delta = straight[0] + extra;
  require(delta <= cfg.max_compression, ErrorCode::NoFit,
          "bend R=" + std::to_string(bend.radius) + " needs compression " + std::to_string(delta) +
              " mm > max " + std::to_string(cfg.max_compression) + " mm");
  return {delta, delta, delta};
}

/// Full module state at a segment. Straights have no tilt; in a bend each
/// rigid module of length L sits as a chord on its own path radius rho_i and
/// meets the wall tangent at atan(L / (2 rho_i)).
inline ModuleState module_state(const RobotConfig& cfg, const PipeSpec& spec, const Segment& seg,
                                double theta) {
  ModuleState st;
  if (std::holds_alternative<Straight>(seg)) {
    st.compression = compression_in_straight(cfg, spec);
    for (std::size_t i = 0; i < 3; ++i) {
      st.contact_radius[i] = contact_radius(cfg, st.compression[i]);
      st.tilt_deg[i] = 0.0;
    }
    return st;
  }
  const auto& bend = std::get<Bend>(seg);
  st.compression = compression_in_bend(cfg, spec, bend, theta);
  for (std::size_t i = 0; i < 3; ++i) {
    st.contact_radius[i] = contact_radius(cfg, st.compression[i]);
    const double rho = module_path_radius(bend, theta, i, st.contact_radius[i]);
    st.tilt_deg[i] = std::atan(cfg.length / (2.0 * rho)) * kRadToDeg;
    require(std::abs(st.tilt_deg[i]) <= cfg.max_tilt_deg, ErrorCode::NoFit,
            "module " + std::to_string(i) + " tilt " + std::to_string(st.tilt_deg[i]) +
                " deg exceeds max " + std::to_string(cfg.max_tilt_deg) + " deg");
  }
  return st;
}

}  // namespace pipediff
