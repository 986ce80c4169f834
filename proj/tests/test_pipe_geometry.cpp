#include <gtest/gtest.h>

#include "pipediff/pipe_geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace pipediff;

namespace {

constexpr double kPi = std::numbers::pi;

PipeNetwork straight_then_elbow() {
  PipeNetwork net;
  net.spec = {50.0, "test"};
  net.segments.push_back(Straight{350.0, {0, 0, 1}, "run"});
  net.segments.push_back(Bend{100.0, 90.0, {0, 1, 0}, "elbow"});
  return net;
}

}  // namespace

TEST(TotalLength, Examples) {
  PipeNetwork a{{50.0, ""}, {Straight{350.0, {0, 0, 1}, ""}}};
  EXPECT_DOUBLE_EQ(total_length(a), 350.0);

  PipeNetwork b{{50.0, ""}, {Bend{100.0, 180.0, {0, 1, 0}, ""}}};
  EXPECT_NEAR(total_length(b), 100.0 * kPi, 1e-12);

  EXPECT_NEAR(total_length(straight_then_elbow()), 350.0 + 50.0 * kPi, 1e-12);
}

TEST(TotalLength, Additivity) {
  const auto net = straight_then_elbow();
  PipeNetwork head{net.spec, {net.segments[0]}};
  PipeNetwork tail{net.spec, {net.segments[1]}};
  EXPECT_DOUBLE_EQ(total_length(net), total_length(head) + total_length(tail));
}

TEST(Locate, Endpoints) {
  const auto net = straight_then_elbow();
  const auto first = locate(net, 0.0);
  EXPECT_EQ(first.segment_index, 0u);
  EXPECT_EQ(first.offset, 0.0);

  const double total = total_length(net);
  const auto last = locate(net, total);
  EXPECT_EQ(last.segment_index, 1u);
  EXPECT_NEAR(last.offset, 50.0 * kPi, 1e-12);
}

TEST(Locate, CumulativeSumOracle) {
  const auto net = straight_then_elbow();
  // Cumulative-sum table: [0, 350) -> 0, [350, 350 + 50 pi] -> 1.
  const auto starts = segment_starts(net);
  ASSERT_EQ(starts.size(), 3u);
  const double s = 360.0;
  std::size_t expected = 0;
  while (expected + 1 < net.segments.size() && s >= starts[expected + 1]) ++expected;
  const auto loc = locate(net, s);
  EXPECT_EQ(loc.segment_index, expected);
  EXPECT_EQ(loc.segment_index, 1u);
  EXPECT_NEAR(loc.offset, 10.0, 1e-12);
}

TEST(Locate, JointResolvesToLaterSegment) {
  const auto net = straight_then_elbow();
  const auto loc = locate(net, 350.0);
  EXPECT_EQ(loc.segment_index, 1u);
  EXPECT_EQ(loc.offset, 0.0);
}

TEST(Locate, OutOfRange) {
  const auto net = straight_then_elbow();
  EXPECT_THROW(locate(net, -1e-9), Error);
  EXPECT_THROW(locate(net, total_length(net) + 1e-6), Error);
  try {
    locate(net, 1e9);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfBounds);
  }
}

TEST(Locate, FrameFollowsElbow) {
  const auto net = straight_then_elbow();
  const auto end = locate(net, total_length(net));
  // Up the z axis, then a quarter turn about +y ends heading +x.
  EXPECT_NEAR(end.tangent.x, 1.0, 1e-12);
  EXPECT_NEAR(end.tangent.z, 0.0, 1e-12);
  EXPECT_NEAR(end.point.x, 100.0, 1e-9);
  EXPECT_NEAR(end.point.z, 450.0, 1e-9);
}

TEST(Locate, MonotoneInArcLength) {
  const auto net = straight_then_elbow();
  const double total = total_length(net);
  double prev_global = -1.0;
  const auto starts = segment_starts(net);
  for (int k = 0; k <= 1000; ++k) {
    const double s = total * k / 1000.0;
    const auto loc = locate(net, s);
    const double global = starts[loc.segment_index] + loc.offset;
    EXPECT_GE(global, prev_global);
    EXPECT_NEAR(global, s, 1e-9);
    prev_global = global;
  }
}

TEST(ModulePathRadius, Examples) {
  const Bend bend{200.0, 90.0, {0, 1, 0}, ""};
  EXPECT_DOUBLE_EQ(module_path_radius(bend, 0.0, 0, 40.0), 160.0);
  // Oracle: direct evaluation 200 - 40 cos(120 deg).
  EXPECT_NEAR(module_path_radius(bend, 0.0, 1, 40.0), 200.0 - 40.0 * std::cos(2.0 * kPi / 3.0), 1e-12);
  EXPECT_NEAR(module_path_radius(bend, 0.0, 1, 40.0), 220.0, 1e-12);
  EXPECT_NEAR(module_path_radius(bend, kPi, 0, 40.0), 240.0, 1e-12);
}

TEST(ModulePathRadius, ContactOutsideBendIsInvalid) {
  const Bend bend{40.0, 90.0, {0, 1, 0}, ""};
  try {
    module_path_radius(bend, 0.0, 0, 40.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidGeometry);
  }
}

TEST(ModulePathRadius, SumIsThreeRForRandomOrientations) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> theta(-10.0, 10.0);
  std::uniform_real_distribution<double> radius(60.0, 2000.0);
  for (int i = 0; i < 1000; ++i) {
    const Bend bend{radius(rng), 90.0, {0, 1, 0}, ""};
    const double rc = std::uniform_real_distribution<double>(0.0, bend.radius * 0.999)(rng);
    const double t = theta(rng);
    const double sum = module_path_radius(bend, t, 0, rc) + module_path_radius(bend, t, 1, rc) +
                       module_path_radius(bend, t, 2, rc);
    EXPECT_NEAR(sum, 3.0 * bend.radius, 8.0 * std::numeric_limits<double>::epsilon() * 3.0 * bend.radius);
  }
}

TEST(Validate, WellFormed) { EXPECT_TRUE(validate(straight_then_elbow()).empty()); }

TEST(Validate, BendRadiusBelowPipeRadius) {
  auto net = straight_then_elbow();
  std::get<Bend>(net.segments[1]).radius = net.spec.inner_radius / 2.0;
  const auto v = validate(net);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::Radius);
  EXPECT_EQ(v[0].index, 1u);
}

TEST(Validate, DiscontinuousJoint) {
  auto net = straight_then_elbow();
  net.segments.push_back(Straight{100.0, {0, 0, 1}, ""});  // elbow exits along +x
  const auto v = validate(net);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::Continuity);
  EXPECT_EQ(v[0].index, 1u);
}

TEST(Validate, OtherRules) {
  auto net = straight_then_elbow();
  std::get<Bend>(net.segments[1]).sweep_deg = 270.0;
  EXPECT_EQ(validate(net).front().kind, ViolationKind::Sweep);

  auto tilted = straight_then_elbow();
  std::get<Bend>(tilted.segments[1]).plane_normal = {0, 0, 1};  // parallel to the incoming tangent
  EXPECT_EQ(validate(tilted).front().kind, ViolationKind::Continuity);

  PipeNetwork empty{{10.0, ""}, {}};
  EXPECT_EQ(validate(empty).front().kind, ViolationKind::EmptyNetwork);

  auto non_unit = straight_then_elbow();
  std::get<Straight>(non_unit.segments[0]).axis = {0, 0, 2};
  EXPECT_EQ(validate(non_unit).front().kind, ViolationKind::Direction);
}
