#include <gtest/gtest.h>

#include "pipediff/scenario.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace pipediff;

namespace {

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string reference_text() { return read(std::string(PIPEDIFF_SCENARIO_DIR) + "/reference.scn"); }

const char* kMinimal = R"(
[pipe]
inner_radius = 50

[segment]
type = straight
length = 100
axis = 0 0 1

[robot]
sprocket_radius = 10
length = 40
preload_compression = 2
nominal_body_radius = 50

[sim]
input_speed = 1
theta = 0
)";

bool has_error(const ParseResult& r, ParseErrorKind kind, std::size_t line = 0) {
  for (const auto& e : r.errors) {
    if (e.kind == kind && (line == 0 || e.line == line)) return true;
  }
  return false;
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  if (pos != std::string::npos) text.replace(pos, from.size(), to);
  return text;
}

}  // namespace

TEST(ParseScenario, ReferenceFixture) {
  const auto r = parse_scenario(reference_text());
  ASSERT_TRUE(r.ok()) << (r.errors.empty() ? "" : r.errors.front().describe());
  const auto& sc = *r.scenario;
  EXPECT_EQ(sc.network.segments.size(), 4u);
  EXPECT_DOUBLE_EQ(sc.network.spec.inner_radius, 151.6);
  EXPECT_DOUBLE_EQ(std::get<Bend>(sc.network.segments[3]).sweep_deg, 180.0);
  EXPECT_DOUBLE_EQ(sc.sim.input_speed, 2.5);
  EXPECT_DOUBLE_EQ(sc.robot.max_compression, 16.0);
}

TEST(ParseScenario, DefaultsForOptionalKeys) {
  const auto r = parse_scenario(kMinimal);
  ASSERT_TRUE(r.ok()) << r.errors.front().describe();
  const auto& sc = *r.scenario;
  EXPECT_EQ(sc.gear.input_to_ring_ratio, 1.0);
  EXPECT_EQ(sc.robot.spring_stiffness, 2.0);
  EXPECT_EQ(sc.robot.max_tilt_deg, 10.0);
  EXPECT_EQ(sc.sim.dt, 0.01);
  EXPECT_EQ(sc.sim.disturbance_percent, 0.0);
  EXPECT_FALSE(sc.sim.t_max);
  EXPECT_TRUE(sc.report.ape);
}

TEST(ParseScenario, SweepBeyondHalfTurn) {
  const auto text = replace(reference_text(), "sweep = 180 deg", "sweep = 270 deg");
  const auto r = parse_scenario(text);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_error(r, ParseErrorKind::InvariantViolation));
}

TEST(ParseScenario, MissingPipeBlock) {
  const auto text = replace(kMinimal, "[pipe]\ninner_radius = 50\n", "");
  const auto r = parse_scenario(text);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_error(r, ParseErrorKind::MissingBlock));
}

TEST(ParseScenario, UnknownKeyWithLine) {
  const auto text = replace(kMinimal, "input_speed = 1", "input_speed = 1\ncolour = red");
  const auto r = parse_scenario(text);
  EXPECT_FALSE(r.ok());
  ASSERT_FALSE(r.errors.empty());
  EXPECT_EQ(r.errors.front().kind, ParseErrorKind::UnknownKey);
  EXPECT_EQ(r.errors.front().line, 18u);
}

TEST(ParseScenario, UnitMismatch) {
  const auto r = parse_scenario(replace(kMinimal, "length = 100", "length = 100 m"));
  EXPECT_TRUE(has_error(r, ParseErrorKind::UnitViolation, 7));
  // The declared unit is accepted.
  EXPECT_TRUE(parse_scenario(replace(kMinimal, "length = 100", "length = 100 mm")).ok());
}

TEST(ParseScenario, SyntaxAndMissingKey) {
  EXPECT_TRUE(has_error(parse_scenario(replace(kMinimal, "length = 100", "length = abc")), ParseErrorKind::Syntax));
  EXPECT_TRUE(has_error(parse_scenario(replace(kMinimal, "length = 100", "length 100")), ParseErrorKind::Syntax));
  EXPECT_TRUE(has_error(parse_scenario(replace(kMinimal, "theta = 0", "")), ParseErrorKind::MissingKey));
  EXPECT_TRUE(has_error(parse_scenario(replace(kMinimal, "[sim]", "[simulation]")), ParseErrorKind::UnknownSection));
}

TEST(ParseScenario, DuplicateKey) {
  const auto r = parse_scenario(replace(kMinimal, "theta = 0", "theta = 0\ntheta = 5"));
  EXPECT_TRUE(has_error(r, ParseErrorKind::DuplicateKey));
}

TEST(ParseScenario, BendRadiusAgainstPipeRadius) {
  const auto text = replace(reference_text(), "radius = 457.2 mm\nsweep = 90", "radius = 75 mm\nsweep = 90");
  const auto r = parse_scenario(text);
  EXPECT_TRUE(has_error(r, ParseErrorKind::InvariantViolation));
}

TEST(ParseScenario, Discontinuity) {
  const auto text = replace(reference_text(), "axis = 1 0 0", "axis = 0 0 1");
  const auto r = parse_scenario(text);
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(has_error(r, ParseErrorKind::InvariantViolation));
}

TEST(WriteScenario, ReferenceRoundTrips) {
  const auto a = parse_scenario(reference_text());
  ASSERT_TRUE(a.ok());
  const auto b = parse_scenario(write_scenario(*a.scenario));
  ASSERT_TRUE(b.ok()) << b.errors.front().describe();
  EXPECT_EQ(*a.scenario, *b.scenario);
}

TEST(WriteScenario, RandomScenariosRoundTrip) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int iter = 0; iter < 200; ++iter) {
    Scenario sc;
    sc.network.spec = {10.0 + 200.0 * u01(rng), iter % 2 ? "label with spaces" : ""};
    // Planar chain in the x-z plane, alternating straights and bends about +y.
    Vec3 heading{0, 0, 1};
    const int n = 1 + static_cast<int>(u01(rng) * 6);
    for (int k = 0; k < n; ++k) {
      if (k % 2 == 0) {
        sc.network.segments.emplace_back(Straight{1.0 + 1000.0 * u01(rng), heading, "s" + std::to_string(k)});
      } else {
        // Quarter or half turns keep the heading on exact axis values.
        const double sweep = u01(rng) < 0.5 ? 90.0 : 180.0;
        sc.network.segments.emplace_back(Bend{sc.network.spec.inner_radius * (1.1 + 5.0 * u01(rng)), sweep,
                                              {0, 1, 0}, ""});
        heading = sweep == 90.0 ? Vec3{heading.z, 0, -heading.x} : Vec3{-heading.x, 0, -heading.z};
      }
    }
    sc.robot.sprocket_radius = 1.0 + 50.0 * u01(rng);
    sc.robot.length = 1.0 + 300.0 * u01(rng);
    sc.robot.spring_stiffness = 0.1 + 10.0 * u01(rng);
    sc.robot.preload_compression = 8.0 * u01(rng);
    sc.robot.max_compression = 16.0;
    sc.robot.max_tilt_deg = 1.0 + 30.0 * u01(rng);
    sc.robot.nominal_body_radius = sc.network.spec.inner_radius;
    sc.robot.rollers_per_module = 1 + iter % 4;
    sc.gear.input_to_ring_ratio = 0.1 + 5.0 * u01(rng);
    sc.sim.dt = 0.001 + 0.1 * u01(rng);
    sc.sim.input_speed = 0.1 + 10.0 * u01(rng);
    sc.sim.theta_deg = 360.0 * u01(rng) - 180.0;
    if (iter % 3 == 0) sc.sim.t_max = 1.0 + 100.0 * u01(rng);
    sc.sim.disturbance_percent = 5.0 * u01(rng);
    sc.sim.seed = rng();
    sc.report.tracks = {true, iter % 2 == 0, iter % 3 != 0};
    if (iter % 4 == 0) sc.report.segments = {0};
    sc.report.ape = iter % 5 != 0;

    const auto parsed = parse_scenario(write_scenario(sc));
    ASSERT_TRUE(parsed.ok()) << parsed.errors.front().describe() << "\n" << write_scenario(sc);
    EXPECT_EQ(*parsed.scenario, sc);
  }
}
