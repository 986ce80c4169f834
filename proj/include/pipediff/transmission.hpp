#pragma once

// Single-input, three-output passive differential.
//
// Three two-output bevel differentials sit in a ring around the input. Unit
// i's right side gear is locked to unit (i+1)'s left side gear; each locked
// pair drives one output sprocket. A ring gear turns at the mean of its two
// side gears, so summing the three ring relations gives
//
//     w_A + w_B + w_C = 3 n w_u
//
// while the split between outputs floats with the loads they see.

#include "pipediff/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <variant>

namespace pipediff {

inline constexpr std::size_t kNumOutputs = 3;

using Triple = std::array<double, kNumOutputs>;

struct GearTrainConfig {
  double input_to_ring_ratio = 1.0;  // n

  friend bool operator==(const GearTrainConfig&, const GearTrainConfig&) = default;

  void validate() const {
    require(is_finite(input_to_ring_ratio) && input_to_ring_ratio > 0.0,
            ErrorCode::InvalidArgument, "gear ratio must be finite and > 0");
  }
};

/// Side gears of the coupled pair that drives `output`: the right gear of
/// unit `output` and the left gear of unit `output + 1` (mod 3).
struct CoupledPair {
  std::size_t right_of_unit;
  std::size_t left_of_unit;
};

constexpr CoupledPair coupled_pair(std::size_t output) {
  return {output % kNumOutputs, (output + 1) % kNumOutputs};
}

namespace load {
struct Free {
  friend bool operator==(const Free&, const Free&) = default;
};
struct ImposedSpeed {
  double omega = 0.0;  // rad/s
  friend bool operator==(const ImposedSpeed&, const ImposedSpeed&) = default;
};
struct ImposedTorque {
  double torque = 0.0;  // N*mm
  friend bool operator==(const ImposedTorque&, const ImposedTorque&) = default;
};
}  // namespace load

using OutputLoad = std::variant<load::Free, load::ImposedSpeed, load::ImposedTorque>;
using LoadState = std::array<OutputLoad, kNumOutputs>;

struct SpeedSolution {
  Triple omega{};         // rad/s, outputs A, B, C
  double residual = 0.0;  // |sum - 3 n w_u|
};

struct TorqueSolution {
  Triple torque{};                  // N*mm per output
  double input_reflected = 0.0;     // n * sum(torque), equals the input torque
};

/// Relative tolerance for accepting imposed speeds against the sum constraint.
inline constexpr double kInfeasibleRelTol = 1e-6;

inline double ring_speed(double omega_side_left, double omega_side_right) {
  require(is_finite(omega_side_left) && is_finite(omega_side_right), ErrorCode::InvalidArgument,
          "ring_speed: non-finite side gear speed");
  return (omega_side_left + omega_side_right) / 2.0;
}

/// Ring gear speeds implied by a set of output speeds under the cyclic coupling.
inline Triple ring_speeds(const Triple& outputs) {
  Triple rings{};
  for (std::size_t unit = 0; unit < kNumOutputs; ++unit) {
    // Left gear of this unit belongs to the previous output's pair.
    const double left = outputs[(unit + kNumOutputs - 1) % kNumOutputs];
    const double right = outputs[unit];
    rings[unit] = ring_speed(left, right);
  }
  return rings;
}

inline double constraint_residual(const GearTrainConfig& cfg, double omega_u, const Triple& speeds) {
  return std::abs(speeds[0] + speeds[1] + speeds[2] - 3.0 * cfg.input_to_ring_ratio * omega_u);
}

namespace detail {

// Order-independent summation so that relabeled inputs give bit-identical sums.
template <std::size_t N>
double sorted_sum(std::array<double, N> values, std::size_t count) {
  std::sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(count));
  double acc = 0.0;
  for (std::size_t i = 0; i < count; ++i) acc += values[i];
  return acc;
}

inline double load_value(const OutputLoad& l) {
  if (const auto* t = std::get_if<load::ImposedTorque>(&l)) return t->torque;
  if (const auto* s = std::get_if<load::ImposedSpeed>(&l)) return s->omega;
  return 0.0;
}

}  // namespace detail

/// Resolve the three output speeds for a given input speed and per-output
/// constraints.
///
/// Imposed speeds are honored exactly. The remaining (floating) outputs share
/// what is left of the sum constraint; equal loads get identical speeds, and
/// unequal torques shift speed away from the more heavily loaded output in
/// proportion to its normalized excess load. Free outputs count as zero load.
///
/// Three imposed speeds are accepted only if they already satisfy the sum
/// constraint within kInfeasibleRelTol.
inline SpeedSolution solve_output_speeds(const GearTrainConfig& cfg, double omega_u,
                                         const LoadState& loads) {
  cfg.validate();
  require(is_finite(omega_u), ErrorCode::InvalidArgument, "input speed must be finite");
  for (const auto& l : loads) {
    require(is_finite(detail::load_value(l)), ErrorCode::InvalidArgument, "non-finite load value");
  }

  const double n = cfg.input_to_ring_ratio;
  const double target = 3.0 * n * omega_u;
  const double tol = kInfeasibleRelTol * std::max(1.0, std::abs(target));

  std::array<double, kNumOutputs> imposed{};
  std::array<double, kNumOutputs> floating_torque{};
  std::size_t num_imposed = 0;
  std::size_t num_floating = 0;
  for (const auto& l : loads) {
    if (const auto* s = std::get_if<load::ImposedSpeed>(&l)) {
      imposed[num_imposed++] = s->omega;
    } else {
      floating_torque[num_floating++] = detail::load_value(l);
    }
  }

  SpeedSolution sol;
  if (num_floating == 0) {
    const double sum = detail::sorted_sum(imposed, num_imposed);
    require(std::abs(sum - target) <= tol, ErrorCode::InfeasibleConstraint,
            "imposed speeds sum to " + std::to_string(sum) + ", differential requires " +
                std::to_string(target));
    for (std::size_t i = 0; i < kNumOutputs; ++i) {
      sol.omega[i] = std::get<load::ImposedSpeed>(loads[i]).omega;
    }
    sol.residual = constraint_residual(cfg, omega_u, sol.omega);
    return sol;
  }

  const double remaining = target - detail::sorted_sum(imposed, num_imposed);
  const double base = (num_floating == kNumOutputs) ? n * omega_u
                                                    : remaining / static_cast<double>(num_floating);

  const bool equal_loads =
      std::all_of(floating_torque.begin(), floating_torque.begin() + static_cast<std::ptrdiff_t>(num_floating),
                  [&](double t) { return t == floating_torque[0]; });

  double mean_torque = 0.0;
  double torque_scale = 0.0;
  if (!equal_loads) {
    mean_torque = detail::sorted_sum(floating_torque, num_floating) / static_cast<double>(num_floating);
    std::array<double, kNumOutputs> magnitudes{};
    for (std::size_t j = 0; j < num_floating; ++j) magnitudes[j] = std::abs(floating_torque[j]);
    torque_scale = detail::sorted_sum(magnitudes, num_floating);
  }

  for (std::size_t i = 0; i < kNumOutputs; ++i) {
    if (const auto* s = std::get_if<load::ImposedSpeed>(&loads[i])) {
      sol.omega[i] = s->omega;
    } else if (equal_loads) {
      sol.omega[i] = base;
    } else {
      const double excess = (detail::load_value(loads[i]) - mean_torque) / torque_scale;
      sol.omega[i] = base * (1.0 - excess);
    }
  }
  sol.residual = constraint_residual(cfg, omega_u, sol.omega);
  return sol;
}

/// Lossless open-differential torque split: every output carries the same
/// torque and n times their sum reflects back to the input.
inline TorqueSolution solve_output_torques(const GearTrainConfig& cfg, double torque_input) {
  cfg.validate();
  require(is_finite(torque_input), ErrorCode::InvalidArgument, "input torque must be finite");
  const double n = cfg.input_to_ring_ratio;
  const double each = torque_input / (3.0 * n);
  TorqueSolution sol;
  sol.torque = {each, each, each};
  sol.input_reflected = n * (each + each + each);
  return sol;
}

}  // namespace pipediff
