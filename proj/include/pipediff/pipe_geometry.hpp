#pragma once

// Arc-length parameterized pipe centerline built from straight runs and
// circular bends.

#include "pipediff/error.hpp"
#include "pipediff/vec3.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

namespace pipediff {

inline constexpr double kDegToRad = std::numbers::pi / 180.0;
inline constexpr double kMaxSweepDeg = 180.0;
inline constexpr double kJointAngleTol = 1e-9;  // rad
inline constexpr double kUnitTol = 1e-9;

/// Used for bends that omit a plane normal.
inline constexpr Vec3 kDefaultBendNormal{0.0, 1.0, 0.0};
/// Entry direction of a network that starts with a bend.
inline constexpr Vec3 kDefaultEntryDirection{0.0, 0.0, 1.0};

struct PipeSpec {
  double inner_radius = 0.0;  // mm
  std::string standard_label;

  friend bool operator==(const PipeSpec&, const PipeSpec&) = default;
};

struct Straight {
  double length = 0.0;  // mm
  Vec3 axis{0.0, 0.0, 1.0};
  std::string label;

  friend bool operator==(const Straight&, const Straight&) = default;
};

struct Bend {
  double radius = 0.0;     // centerline bend radius R, mm
  double sweep_deg = 0.0;  // (0, 180]
  Vec3 plane_normal = kDefaultBendNormal;
  std::string label;

  friend bool operator==(const Bend&, const Bend&) = default;

  double sweep_rad() const { return sweep_deg * kDegToRad; }
};

using Segment = std::variant<Straight, Bend>;

inline double segment_length(const Segment& seg) {
  if (const auto* s = std::get_if<Straight>(&seg)) return s->length;
  const auto& b = std::get<Bend>(seg);
  return b.radius * b.sweep_rad();
}

inline const std::string& segment_label(const Segment& seg) {
  return std::visit([](const auto& s) -> const std::string& { return s.label; }, seg);
}

inline bool is_bend(const Segment& seg) { return std::holds_alternative<Bend>(seg); }

struct PipeNetwork {
  PipeSpec spec;
  std::vector<Segment> segments;

  friend bool operator==(const PipeNetwork&, const PipeNetwork&) = default;
};

inline double total_length(const PipeNetwork& net) {
  double acc = 0.0;
  for (const auto& seg : net.segments) acc += segment_length(seg);
  return acc;
}

/// Point and unit tangent on the centerline.
struct Frame {
  Vec3 point;
  Vec3 tangent;
};

namespace detail {

// Rotate `v` about unit axis `k` by `angle` (Rodrigues).
inline Vec3 rotate(const Vec3& v, const Vec3& k, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return v * c + k.cross(v) * s + k * (k.dot(v) * (1.0 - c));
}

inline Frame advance(const Segment& seg, const Frame& entry, double offset) {
  if (const auto* s = std::get_if<Straight>(&seg)) {
    return {entry.point + s->axis * offset, s->axis};
  }
  const auto& b = std::get<Bend>(seg);
  const double phi = offset / b.radius;
  const Vec3 inward = b.plane_normal.cross(entry.tangent);  // towards the bend center
  const Vec3 point = entry.point + inward * (b.radius * (1.0 - std::cos(phi))) +
                     entry.tangent * (b.radius * std::sin(phi));
  return {point, detail::rotate(entry.tangent, b.plane_normal, phi)};
}

inline Vec3 entry_direction(const PipeNetwork& net) {
  if (!net.segments.empty()) {
    if (const auto* s = std::get_if<Straight>(&net.segments.front())) return s->axis;
  }
  return kDefaultEntryDirection;
}

}  // namespace detail

struct Location {
  std::size_t segment_index = 0;
  double offset = 0.0;  // mm into the segment
  Vec3 point;
  Vec3 tangent;
};

/// Segment containing arc length `s`. Joints resolve to the later segment;
/// `s == total_length` resolves to the end of the last segment.
inline Location locate(const PipeNetwork& net, double s) {
  require(!net.segments.empty(), ErrorCode::OutOfBounds, "locate on empty network");
  const double total = total_length(net);
  require(is_finite(s) && s >= 0.0 && s <= total, ErrorCode::OutOfBounds,
          "arc length " + std::to_string(s) + " outside [0, " + std::to_string(total) + "]");

  Frame frame{{0.0, 0.0, 0.0}, detail::entry_direction(net)};
  double start = 0.0;
  const std::size_t last = net.segments.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    const auto& seg = net.segments[i];
    const double len = segment_length(seg);
    if (s < start + len || i == last) {
      const double offset = std::min(s - start, len);
      const Frame f = detail::advance(seg, frame, offset);
      return {i, offset, f.point, f.tangent};
    }
    frame = detail::advance(seg, frame, len);
    start += len;
  }
  return {};  // unreachable
}

/// Cumulative arc length at the start of each segment, plus the total at the end.
inline std::vector<double> segment_starts(const PipeNetwork& net) {
  std::vector<double> starts;
  starts.reserve(net.segments.size() + 1);
  double acc = 0.0;
  starts.push_back(acc);
  for (const auto& seg : net.segments) {
    acc += segment_length(seg);
    starts.push_back(acc);
  }
  return starts;
}

/// Path radius of module `module_index`'s contact line through a bend.
/// theta = 0 puts module 0's contact point nearest the bend center.
inline double module_path_radius(const Bend& bend, double theta, std::size_t module_index,
                                 double contact_radius) {
  require(is_finite(theta) && is_finite(contact_radius), ErrorCode::InvalidArgument,
          "module_path_radius: non-finite input");
  require(module_index < 3, ErrorCode::InvalidArgument, "module index must be 0, 1 or 2");
  require(contact_radius < bend.radius, ErrorCode::InvalidGeometry,
          "contact radius " + std::to_string(contact_radius) + " >= bend radius " +
              std::to_string(bend.radius));
  const double module_angle = theta + 2.0 * std::numbers::pi * static_cast<double>(module_index) / 3.0;
  return bend.radius - contact_radius * std::cos(module_angle);
}

enum class ViolationKind {
  PipeRadius,
  EmptyNetwork,
  Length,
  Direction,
  Radius,
  Sweep,
  Continuity,
};

inline const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::PipeRadius: return "pipe-radius-violation";
    case ViolationKind::EmptyNetwork: return "empty-network";
    case ViolationKind::Length: return "length-violation";
    case ViolationKind::Direction: return "direction-violation";
    case ViolationKind::Radius: return "radius-violation";
    case ViolationKind::Sweep: return "sweep-violation";
    case ViolationKind::Continuity: return "continuity-violation";
  }
  return "violation";
}

struct Violation {
  ViolationKind kind;
  std::size_t index = 0;  // segment index, or joint index for continuity
  std::string message;
};

inline std::vector<Violation> validate(const PipeNetwork& net) {
  std::vector<Violation> out;
  const double r = net.spec.inner_radius;
  if (!(is_finite(r) && r > 0.0)) {
    out.push_back({ViolationKind::PipeRadius, 0, "pipe inner radius must be > 0"});
  }
  if (net.segments.empty()) {
    out.push_back({ViolationKind::EmptyNetwork, 0, "network has no segments"});
    return out;
  }

  auto is_unit = [](const Vec3& v) { return is_finite(v.norm()) && std::abs(v.norm() - 1.0) <= kUnitTol; };

  Vec3 tangent = detail::entry_direction(net);
  for (std::size_t i = 0; i < net.segments.size(); ++i) {
    const auto& seg = net.segments[i];
    bool geometry_ok = true;
    if (const auto* s = std::get_if<Straight>(&seg)) {
      if (!(is_finite(s->length) && s->length > 0.0)) {
        out.push_back({ViolationKind::Length, i, "straight length must be > 0"});
      }
      if (!is_unit(s->axis)) {
        out.push_back({ViolationKind::Direction, i, "straight axis must be a unit vector"});
        geometry_ok = false;
      } else if (i > 0 && angle_between(tangent, s->axis) >= kJointAngleTol) {
        out.push_back({ViolationKind::Continuity, i - 1,
                       "straight axis does not continue the incoming tangent"});
      }
      if (geometry_ok) tangent = s->axis;
    } else {
      const auto& b = std::get<Bend>(seg);
      if (!(is_finite(b.radius) && b.radius > 0.0 && b.radius > r)) {
        out.push_back({ViolationKind::Radius, i, "bend radius must exceed pipe radius"});
      }
      if (!(is_finite(b.sweep_deg) && b.sweep_deg > 0.0 && b.sweep_deg <= kMaxSweepDeg)) {
        out.push_back({ViolationKind::Sweep, i, "bend sweep must be in (0, 180] degrees"});
      }
      if (!is_unit(b.plane_normal)) {
        out.push_back({ViolationKind::Direction, i, "bend plane normal must be a unit vector"});
        geometry_ok = false;
      } else if (std::abs(b.plane_normal.dot(tangent)) >= kJointAngleTol) {
        out.push_back({ViolationKind::Continuity, i == 0 ? 0 : i - 1,
                       "bend plane normal is not perpendicular to the incoming tangent"});
      }
      if (geometry_ok && is_finite(b.sweep_deg)) {
        tangent = detail::rotate(tangent, b.plane_normal, b.sweep_rad());
      }
    }
  }
  return out;
}

}  // namespace pipediff
