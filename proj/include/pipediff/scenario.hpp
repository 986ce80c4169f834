#pragma once

// Scenario files: a sectioned key = value text format.
//
//   [pipe] [segment]... [robot] [gear] [sim] [report]
//
// Full grammar and key table in docs/scenario_format.md. Every error carries
// the 1-based line it was found on (0 when it concerns the file as a whole).

#include "pipediff/error.hpp"
#include "pipediff/pipe_geometry.hpp"
#include "pipediff/robot_model.hpp"
#include "pipediff/simulator.hpp"
#include "pipediff/transmission.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace pipediff {

struct SimBlock {
  double dt = 0.01;                     // s
  double input_speed = 0.0;             // rad/s
  double theta_deg = 0.0;
  std::optional<double> t_max;          // s
  double disturbance_percent = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const SimBlock&, const SimBlock&) = default;

  SimParams to_params() const {
    SimParams p;
    p.dt = dt;
    p.omega_u = input_speed;
    p.theta = theta_deg * kDegToRad;
    p.t_max = t_max;
    p.disturbance = {disturbance_percent / 100.0, seed};
    return p;
  }
};

struct ReportOptions {
  std::array<bool, 3> tracks{true, true, true};
  std::vector<std::size_t> segments;  // empty: all
  bool ape = true;

  friend bool operator==(const ReportOptions&, const ReportOptions&) = default;

  bool show_segment(std::size_t k) const {
    return segments.empty() || std::find(segments.begin(), segments.end(), k) != segments.end();
  }
};

struct Scenario {
  PipeNetwork network;
  RobotConfig robot;
  GearTrainConfig gear;
  SimBlock sim;
  ReportOptions report;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

enum class ParseErrorKind {
  Syntax,
  UnknownSection,
  UnknownKey,
  DuplicateKey,
  MissingBlock,
  MissingKey,
  UnitViolation,
  InvariantViolation,
};

inline const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::Syntax: return "syntax-error";
    case ParseErrorKind::UnknownSection: return "unknown-section";
    case ParseErrorKind::UnknownKey: return "unknown-key";
    case ParseErrorKind::DuplicateKey: return "duplicate-key";
    case ParseErrorKind::MissingBlock: return "missing-block";
    case ParseErrorKind::MissingKey: return "missing-key";
    case ParseErrorKind::UnitViolation: return "unit-violation";
    case ParseErrorKind::InvariantViolation: return "invariant-violation";
  }
  return "error";
}

struct ParseError {
  std::size_t line = 0;
  ParseErrorKind kind = ParseErrorKind::Syntax;
  std::string message;

  std::string describe() const {
    return "line " + std::to_string(line) + ": " + to_string(kind) + ": " + message;
  }
};

struct ParseResult {
  std::optional<Scenario> scenario;
  std::vector<ParseError> errors;

  bool ok() const { return scenario.has_value() && errors.empty(); }
};

namespace scn {

enum class ValueKind { Number, Vector, Text, Bool, Count, Tracks, SegmentList };

struct KeySpec {
  std::string_view name;
  ValueKind kind;
  std::string_view unit;  // empty: dimensionless / not applicable
  bool required;
};

struct SectionSpec {
  std::string_view name;
  bool required;
  bool repeatable;
  std::vector<KeySpec> keys;
};

inline const std::vector<SectionSpec>& sections() {
  static const std::vector<SectionSpec> specs{
      {"pipe", true, false,
       {{"inner_radius", ValueKind::Number, "mm", true}, {"standard", ValueKind::Text, "", false}}},
      {"segment", true, true,
       {{"type", ValueKind::Text, "", true},
        {"length", ValueKind::Number, "mm", false},
        {"axis", ValueKind::Vector, "", false},
        {"radius", ValueKind::Number, "mm", false},
        {"sweep", ValueKind::Number, "deg", false},
        {"normal", ValueKind::Vector, "", false},
        {"label", ValueKind::Text, "", false}}},
      {"robot", true, false,
       {{"sprocket_radius", ValueKind::Number, "mm", true},
        {"length", ValueKind::Number, "mm", true},
        {"spring_stiffness", ValueKind::Number, "N/mm", false},
        {"preload_compression", ValueKind::Number, "mm", true},
        {"max_compression", ValueKind::Number, "mm", false},
        {"max_tilt", ValueKind::Number, "deg", false},
        {"nominal_body_radius", ValueKind::Number, "mm", true},
        {"rollers_per_module", ValueKind::Count, "", false}}},
      {"gear", false, false, {{"ratio", ValueKind::Number, "", false}}},
      {"sim", true, false,
       {{"dt", ValueKind::Number, "s", false},
        {"input_speed", ValueKind::Number, "rad/s", true},
        {"theta", ValueKind::Number, "deg", true},
        {"t_max", ValueKind::Number, "s", false},
        {"disturbance_amplitude", ValueKind::Number, "%", false},
        {"seed", ValueKind::Count, "", false}}},
      {"report", false, false,
       {{"tracks", ValueKind::Tracks, "", false},
        {"segments", ValueKind::SegmentList, "", false},
        {"ape", ValueKind::Bool, "", false}}},
  };
  return specs;
}

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != ',') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

inline std::optional<double> to_double(std::string_view tok) {
  double v = 0.0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

inline std::optional<std::uint64_t> to_count(std::string_view tok) {
  std::uint64_t v = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

struct Entry {
  std::size_t line;
  std::string value;
};

struct Block {
  std::string name;
  std::size_t line;
  std::map<std::string, Entry, std::less<>> entries;
};

class Reader {
 public:
  Reader(const Block& block, std::vector<ParseError>& errors) : block_(block), errors_(errors) {
    for (const auto& s : sections()) {
      if (s.name == block.name) spec_ = &s;
    }
  }

  bool has(std::string_view key) const { return block_.entries.find(key) != block_.entries.end(); }

  std::size_t line_of(std::string_view key) const {
    const auto it = block_.entries.find(key);
    return it == block_.entries.end() ? block_.line : it->second.line;
  }

  std::optional<double> number(std::string_view key) {
    const auto* e = lookup(key);
    if (!e) return std::nullopt;
    const auto toks = split_ws(e->value);
    if (toks.empty() || toks.size() > 2) {
      fail(e->line, ParseErrorKind::Syntax, std::string(key) + ": expected a number");
      return std::nullopt;
    }
    const auto v = to_double(toks[0]);
    if (!v) {
      fail(e->line, ParseErrorKind::Syntax, std::string(key) + ": '" + std::string(toks[0]) + "' is not a number");
      return std::nullopt;
    }
    if (toks.size() == 2) {
      const auto unit = unit_of(key);
      if (toks[1] != unit) {
        fail(e->line, ParseErrorKind::UnitViolation,
             std::string(key) + " is in " + (unit.empty() ? std::string("no unit") : std::string(unit)) +
                 ", got '" + std::string(toks[1]) + "'");
        return std::nullopt;
      }
    }
    return v;
  }

  std::optional<std::uint64_t> count(std::string_view key) {
    const auto* e = lookup(key);
    if (!e) return std::nullopt;
    const auto v = to_count(trim(e->value));
    if (!v) fail(e->line, ParseErrorKind::Syntax, std::string(key) + ": expected a non-negative integer");
    return v;
  }

  std::optional<Vec3> vector(std::string_view key) {
    const auto* e = lookup(key);
    if (!e) return std::nullopt;
    const auto toks = split_ws(e->value);
    std::array<double, 3> xyz{};
    bool ok = toks.size() == 3;
    for (std::size_t i = 0; ok && i < 3; ++i) {
      const auto v = to_double(toks[i]);
      ok = v.has_value();
      if (ok) xyz[i] = *v;
    }
    if (!ok) {
      fail(e->line, ParseErrorKind::Syntax, std::string(key) + ": expected three numbers");
      return std::nullopt;
    }
    return Vec3{xyz[0], xyz[1], xyz[2]};
  }

  std::optional<std::string> text(std::string_view key) {
    const auto* e = lookup(key);
    if (!e) return std::nullopt;
    return e->value;
  }

  std::optional<bool> boolean(std::string_view key) {
    const auto* e = lookup(key);
    if (!e) return std::nullopt;
    const auto v = trim(e->value);
    if (v == "on" || v == "true" || v == "yes") return true;
    if (v == "off" || v == "false" || v == "no") return false;
    fail(e->line, ParseErrorKind::Syntax, std::string(key) + ": expected on/off");
    return std::nullopt;
  }

  void require_key(std::string_view key, std::string_view context = {}) {
    if (!has(key)) {
      fail(block_.line, ParseErrorKind::MissingKey,
           "[" + block_.name + "] missing required key '" + std::string(key) + "'" +
               (context.empty() ? "" : " " + std::string(context)));
    }
  }

  void reject_key(std::string_view key, std::string_view context) {
    if (has(key)) {
      fail(line_of(key), ParseErrorKind::UnknownKey,
           "'" + std::string(key) + "' is not valid " + std::string(context));
    }
  }

  void fail(std::size_t line, ParseErrorKind kind, std::string msg) {
    errors_.push_back({line, kind, std::move(msg)});
  }

 private:
  const Entry* lookup(std::string_view key) const {
    const auto it = block_.entries.find(key);
    return it == block_.entries.end() ? nullptr : &it->second;
  }

  std::string_view unit_of(std::string_view key) const {
    if (spec_) {
      for (const auto& k : spec_->keys) {
        if (k.name == key) return k.unit;
      }
    }
    return {};
  }

  const Block& block_;
  const SectionSpec* spec_ = nullptr;
  std::vector<ParseError>& errors_;
};

}  // namespace scn

inline ParseResult parse_scenario(std::string_view text) {
  using namespace scn;
  ParseResult result;
  auto& errors = result.errors;

  // Pass 1: split into blocks.
  std::vector<Block> blocks;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back({line_no, ParseErrorKind::Syntax, "unterminated section header"});
        continue;
      }
      const std::string name(trim(line.substr(1, line.size() - 2)));
      const auto& specs = sections();
      const auto spec = std::find_if(specs.begin(), specs.end(), [&](const auto& s) { return s.name == name; });
      if (spec == specs.end()) {
        errors.push_back({line_no, ParseErrorKind::UnknownSection, "unknown section [" + name + "]"});
        blocks.push_back({"", line_no, {}});  // swallow its keys
        continue;
      }
      if (!spec->repeatable) {
        const bool dup = std::any_of(blocks.begin(), blocks.end(), [&](const Block& b) { return b.name == name; });
        if (dup) {
          errors.push_back({line_no, ParseErrorKind::DuplicateKey, "section [" + name + "] appears twice"});
        }
      }
      blocks.push_back({name, line_no, {}});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back({line_no, ParseErrorKind::Syntax, "expected 'key = value'"});
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      errors.push_back({line_no, ParseErrorKind::Syntax, "empty key"});
      continue;
    }
    if (blocks.empty()) {
      errors.push_back({line_no, ParseErrorKind::Syntax, "key '" + key + "' outside any section"});
      continue;
    }
    auto& block = blocks.back();
    if (block.name.empty()) continue;  // inside an unknown section, already reported
    const auto& spec = *std::find_if(sections().begin(), sections().end(),
                                     [&](const auto& s) { return s.name == block.name; });
    const bool known = std::any_of(spec.keys.begin(), spec.keys.end(), [&](const auto& k) { return k.name == key; });
    if (!known) {
      errors.push_back({line_no, ParseErrorKind::UnknownKey, "unknown key '" + key + "' in [" + block.name + "]"});
      continue;
    }
    if (!block.entries.emplace(key, Entry{line_no, value}).second) {
      errors.push_back({line_no, ParseErrorKind::DuplicateKey, "key '" + key + "' repeated"});
    }
  }

  for (const auto& s : sections()) {
    if (!s.required) continue;
    const bool present = std::any_of(blocks.begin(), blocks.end(), [&](const Block& b) { return b.name == s.name; });
    if (!present) {
      errors.push_back({0, ParseErrorKind::MissingBlock, "missing [" + std::string(s.name) + "] block"});
    }
  }

  // Pass 2: interpret blocks.
  Scenario sc;
  std::vector<std::size_t> segment_lines;
  auto invariant = [&](std::size_t line, std::string msg) {
    errors.push_back({line, ParseErrorKind::InvariantViolation, std::move(msg)});
  };

  for (const auto& block : blocks) {
    if (block.name.empty()) continue;
    Reader rd(block, errors);

    if (block.name == "pipe") {
      rd.require_key("inner_radius");
      if (auto v = rd.number("inner_radius")) {
        sc.network.spec.inner_radius = *v;
        if (*v <= 0.0) invariant(rd.line_of("inner_radius"), "inner_radius must be > 0");
      }
      if (auto v = rd.text("standard")) sc.network.spec.standard_label = *v;

    } else if (block.name == "segment") {
      segment_lines.push_back(block.line);
      rd.require_key("type");
      const auto type = rd.text("type").value_or("");
      const auto label = rd.text("label").value_or("");
      if (type == "straight") {
        rd.require_key("length", "for a straight segment");
        rd.require_key("axis", "for a straight segment");
        rd.reject_key("radius", "for a straight segment");
        rd.reject_key("sweep", "for a straight segment");
        rd.reject_key("normal", "for a straight segment");
        Straight s;
        s.label = label;
        if (auto v = rd.number("length")) {
          s.length = *v;
          if (*v <= 0.0) invariant(rd.line_of("length"), "straight length must be > 0");
        }
        if (auto v = rd.vector("axis")) s.axis = *v;
        sc.network.segments.emplace_back(s);
      } else if (type == "bend") {
        rd.require_key("radius", "for a bend segment");
        rd.require_key("sweep", "for a bend segment");
        rd.reject_key("length", "for a bend segment (arc length follows from radius and sweep)");
        rd.reject_key("axis", "for a bend segment");
        Bend b;
        b.label = label;
        if (auto v = rd.number("radius")) {
          b.radius = *v;
          if (*v <= 0.0) invariant(rd.line_of("radius"), "bend radius must be > 0");
        }
        if (auto v = rd.number("sweep")) {
          b.sweep_deg = *v;
          if (!(*v > 0.0 && *v <= kMaxSweepDeg)) {
            invariant(rd.line_of("sweep"), "sweep " + format_double(*v) + " deg outside (0, 180]");
          }
        }
        if (auto v = rd.vector("normal")) b.plane_normal = *v;
        sc.network.segments.emplace_back(b);
      } else {
        if (rd.has("type")) {
          rd.fail(rd.line_of("type"), ParseErrorKind::Syntax, "segment type must be 'straight' or 'bend'");
        }
        sc.network.segments.emplace_back(Straight{});
      }

    } else if (block.name == "robot") {
      auto& r = sc.robot;
      for (auto key : {"sprocket_radius", "length", "preload_compression", "nominal_body_radius"}) {
        rd.require_key(key);
      }
      auto positive = [&](const char* key, double& field) {
        if (auto v = rd.number(key)) {
          field = *v;
          if (*v <= 0.0) invariant(rd.line_of(key), std::string(key) + " must be > 0");
        }
      };
      positive("sprocket_radius", r.sprocket_radius);
      positive("length", r.length);
      positive("spring_stiffness", r.spring_stiffness);
      positive("max_tilt", r.max_tilt_deg);
      positive("nominal_body_radius", r.nominal_body_radius);
      if (auto v = rd.number("max_compression")) r.max_compression = *v;
      if (auto v = rd.number("preload_compression")) {
        r.preload_compression = *v;
        if (*v < 0.0) invariant(rd.line_of("preload_compression"), "preload_compression must be >= 0");
      }
      if (r.preload_compression > r.max_compression) {
        invariant(rd.line_of("preload_compression"), "preload_compression exceeds max_compression");
      }
      if (auto v = rd.count("rollers_per_module")) {
        r.rollers_per_module = static_cast<int>(*v);
        if (*v == 0) invariant(rd.line_of("rollers_per_module"), "rollers_per_module must be > 0");
      }

    } else if (block.name == "gear") {
      if (auto v = rd.number("ratio")) {
        sc.gear.input_to_ring_ratio = *v;
        if (*v <= 0.0) invariant(rd.line_of("ratio"), "gear ratio must be > 0");
      }

    } else if (block.name == "sim") {
      auto& s = sc.sim;
      rd.require_key("input_speed");
      rd.require_key("theta");
      if (auto v = rd.number("dt")) {
        s.dt = *v;
        if (*v <= 0.0) invariant(rd.line_of("dt"), "dt must be > 0");
      }
      if (auto v = rd.number("input_speed")) {
        s.input_speed = *v;
        if (*v <= 0.0) invariant(rd.line_of("input_speed"), "input_speed must be > 0");
      }
      if (auto v = rd.number("theta")) s.theta_deg = *v;
      if (auto v = rd.number("t_max")) {
        s.t_max = *v;
        if (*v <= 0.0) invariant(rd.line_of("t_max"), "t_max must be > 0");
      }
      if (auto v = rd.number("disturbance_amplitude")) {
        s.disturbance_percent = *v;
        if (!(*v >= 0.0 && *v < 100.0)) {
          invariant(rd.line_of("disturbance_amplitude"), "disturbance_amplitude must be in [0, 100) %");
        }
      }
      if (auto v = rd.count("seed")) s.seed = *v;

    } else if (block.name == "report") {
      auto& o = sc.report;
      if (auto v = rd.text("tracks")) {
        o.tracks = {false, false, false};
        const auto toks = split_ws(*v);
        if (toks.empty()) rd.fail(rd.line_of("tracks"), ParseErrorKind::Syntax, "tracks: list A, B and/or C");
        for (auto t : toks) {
          if (t == "A") o.tracks[0] = true;
          else if (t == "B") o.tracks[1] = true;
          else if (t == "C") o.tracks[2] = true;
          else rd.fail(rd.line_of("tracks"), ParseErrorKind::Syntax, "unknown track '" + std::string(t) + "'");
        }
      }
      if (auto v = rd.text("segments")) {
        if (trim(*v) != "all") {
          const auto toks = split_ws(*v);
          if (toks.empty()) rd.fail(rd.line_of("segments"), ParseErrorKind::Syntax, "segments: 'all' or indices");
          for (auto t : toks) {
            if (auto idx = to_count(t)) {
              o.segments.push_back(static_cast<std::size_t>(*idx));
            } else {
              rd.fail(rd.line_of("segments"), ParseErrorKind::Syntax, "bad segment index '" + std::string(t) + "'");
            }
          }
        }
      }
      if (auto v = rd.boolean("ape")) o.ape = *v;
    }
  }

  // Cross-block invariants.
  const double r = sc.network.spec.inner_radius;
  for (std::size_t i = 0; i < sc.network.segments.size() && i < segment_lines.size(); ++i) {
    if (const auto* b = std::get_if<Bend>(&sc.network.segments[i]); b && r > 0.0 && b->radius > 0.0) {
      if (!(b->radius > r)) {
        invariant(segment_lines[i], "bend radius " + format_double(b->radius) + " must exceed pipe radius " +
                                        format_double(r));
      }
    }
  }
  for (auto k : sc.report.segments) {
    if (k >= sc.network.segments.size()) {
      errors.push_back({0, ParseErrorKind::InvariantViolation,
                        "[report] segment index " + std::to_string(k) + " out of range"});
    }
  }
  if (errors.empty()) {
    for (const auto& v : validate(sc.network)) {
      // Radius and sweep were reported above; remaining rules are directional/continuity.
      const std::size_t seg = v.kind == ViolationKind::Continuity ? std::min(v.index + 1, segment_lines.size() - 1)
                                                                  : v.index;
      const std::size_t line = segment_lines.empty() ? 0 : segment_lines[std::min(seg, segment_lines.size() - 1)];
      invariant(line, std::string(to_string(v.kind)) + " @ " + std::to_string(v.index) + ": " + v.message);
    }
  }

  std::stable_sort(errors.begin(), errors.end(),
                   [](const ParseError& a, const ParseError& b) { return a.line < b.line; });
  if (errors.empty()) result.scenario = std::move(sc);
  return result;
}

/// Canonical text form; parse_scenario(write_scenario(s)) == s.
inline std::string write_scenario(const Scenario& sc) {
  using scn::format_double;
  std::ostringstream out;
  auto vec = [](const Vec3& v) {
    return format_double(v.x) + " " + format_double(v.y) + " " + format_double(v.z);
  };

  out << "[pipe]\n";
  out << "inner_radius = " << format_double(sc.network.spec.inner_radius) << " mm\n";
  if (!sc.network.spec.standard_label.empty()) out << "standard = " << sc.network.spec.standard_label << "\n";

  for (const auto& seg : sc.network.segments) {
    out << "\n[segment]\n";
    if (const auto* s = std::get_if<Straight>(&seg)) {
      out << "type = straight\n";
      out << "length = " << format_double(s->length) << " mm\n";
      out << "axis = " << vec(s->axis) << "\n";
    } else {
      const auto& b = std::get<Bend>(seg);
      out << "type = bend\n";
      out << "radius = " << format_double(b.radius) << " mm\n";
      out << "sweep = " << format_double(b.sweep_deg) << " deg\n";
      out << "normal = " << vec(b.plane_normal) << "\n";
    }
    if (!segment_label(seg).empty()) out << "label = " << segment_label(seg) << "\n";
  }

  const auto& r = sc.robot;
  out << "\n[robot]\n";
  out << "sprocket_radius = " << format_double(r.sprocket_radius) << " mm\n";
  out << "length = " << format_double(r.length) << " mm\n";
  out << "spring_stiffness = " << format_double(r.spring_stiffness) << " N/mm\n";
  out << "preload_compression = " << format_double(r.preload_compression) << " mm\n";
  out << "max_compression = " << format_double(r.max_compression) << " mm\n";
  out << "max_tilt = " << format_double(r.max_tilt_deg) << " deg\n";
  out << "nominal_body_radius = " << format_double(r.nominal_body_radius) << " mm\n";
  out << "rollers_per_module = " << r.rollers_per_module << "\n";

  out << "\n[gear]\n";
  out << "ratio = " << format_double(sc.gear.input_to_ring_ratio) << "\n";

  const auto& s = sc.sim;
  out << "\n[sim]\n";
  out << "dt = " << format_double(s.dt) << " s\n";
  out << "input_speed = " << format_double(s.input_speed) << " rad/s\n";
  out << "theta = " << format_double(s.theta_deg) << " deg\n";
  if (s.t_max) out << "t_max = " << format_double(*s.t_max) << " s\n";
  out << "disturbance_amplitude = " << format_double(s.disturbance_percent) << " %\n";
  out << "seed = " << s.seed << "\n";

  const auto& o = sc.report;
  out << "\n[report]\n";
  out << "tracks =";
  for (std::size_t i = 0; i < 3; ++i) {
    if (o.tracks[i]) out << ' ' << static_cast<char>('A' + i);
  }
  out << "\n";
  if (o.segments.empty()) {
    out << "segments = all\n";
  } else {
    out << "segments =";
    for (auto k : o.segments) out << ' ' << k;
    out << "\n";
  }
  out << "ape = " << (o.ape ? "on" : "off") << "\n";
  return out.str();
}

}  // namespace pipediff
