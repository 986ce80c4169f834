#pragma once

// Trace CSV and run/sweep reports (plain text or JSON).

#include "pipediff/error.hpp"
#include "pipediff/scenario.hpp"
#include "pipediff/simulator.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace pipediff {

inline constexpr const char* kTraceHeader =
    "t,s,segment,theta,vA,vB,vC,vA_theo,vB_theo,vC_theo,dA,dB,dC,slipA,slipB,slipC,distA,distB,distC";

inline constexpr std::size_t kTraceColumns = 19;

/// theta is written in degrees; all other columns in mm, s, mm/s.
inline void write_trace(const Trace& trace, std::ostream& out) {
  out << kTraceHeader << '\n';
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), ",%.6f", v);
    out << buf;
  };
  for (const auto& r : trace) {
    std::snprintf(buf, sizeof(buf), "%.6f", r.t);
    out << buf;
    put(r.s);
    out << ',' << r.segment;
    put(r.theta * kRadToDeg);
    for (double v : r.v_resolved) put(v);
    for (double v : r.v_theoretical) put(v);
    for (double v : r.compression) put(v);
    for (double v : r.slip) put(v);
    for (double v : r.distance) put(v);
    out << '\n';
  }
}

inline void write_trace(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorCode::Io, "cannot open trace file '" + path + "'");
  write_trace(trace, out);
  out.flush();
  require(out.good(), ErrorCode::Io, "failed writing trace file '" + path + "'");
}

enum class ReportFormat { Text, Json };

namespace detail {

inline constexpr std::array<const char*, 3> kTrackNames{"A", "B", "C"};

inline nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline nlohmann::json summary_json(const SummaryReport& s, const ReportOptions& opt) {
  using nlohmann::json;
  json j;
  j["theta_deg"] = s.theta * kRadToDeg;
  j["nominal_speed"] = s.nominal_speed;
  j["dt"] = s.dt;
  j["total_length"] = s.total_length;
  j["completed"] = s.completed;
  j["end_time"] = s.end_time;
  j["error"] = s.error ? json{{"code", std::string(to_string(s.error->code))}, {"message", s.error->message}}
                       : json(nullptr);

  json segments = json::array();
  for (const auto& seg : s.segments) {
    if (!opt.show_segment(seg.index)) continue;
    json js;
    js["index"] = seg.index;
    js["label"] = seg.label;
    js["kind"] = seg.bend ? "bend" : "straight";
    js["length"] = seg.length;
    js["entry_t"] = optional_json(seg.entry_t);
    js["exit_t"] = optional_json(seg.exit_t);
    js["records"] = seg.records;
    json tracks = json::object();
    for (std::size_t i = 0; i < 3; ++i) {
      if (!opt.tracks[i]) continue;
      json jt;
      jt["mean_speed"] = seg.mean_speed[i];
      jt["min_speed"] = seg.min_speed[i];
      jt["max_speed"] = seg.max_speed[i];
      jt["mean_theoretical"] = seg.mean_theoretical[i];
      if (opt.ape) {
        jt["ape_percent"] = (seg.window_records > 0 && seg.window_ape_defined[i]) ? json(seg.window_ape[i])
                                                                                 : json(nullptr);
      }
      tracks[kTrackNames[i]] = jt;
    }
    js["tracks"] = tracks;
    js["max_compression"] = seg.max_compression;
    js["max_tilt_deg"] = seg.max_tilt_deg;
    js["max_slip"] = seg.max_slip;
    js["compression_ok"] = seg.compression_ok;
    js["tilt_ok"] = seg.tilt_ok;
    segments.push_back(js);
  }
  j["segments"] = segments;

  json tracks = json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    if (!opt.tracks[i]) continue;
    tracks.push_back({{"name", kTrackNames[i]}, {"mean_speed", s.mean_speed[i]}});
  }
  j["tracks"] = tracks;

  j["limits"] = {{"max_compression", s.limit_compression},
                 {"max_tilt_deg", s.limit_tilt_deg},
                 {"observed_max_compression", s.max_compression},
                 {"observed_max_tilt_deg", s.max_tilt_deg},
                 {"observed_max_slip", s.max_slip},
                 {"compression_ok", s.max_compression <= s.limit_compression},
                 {"tilt_ok", s.max_tilt_deg <= s.limit_tilt_deg}};
  return j;
}

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

inline std::string fmt_opt(const std::optional<double>& v) { return v ? fmt("%8.2f", *v) : "       -"; }

inline void summary_text(std::ostream& out, const SummaryReport& s, const ReportOptions& opt) {
  out << "orientation " << fmt("%.2f", s.theta * kRadToDeg) << " deg, nominal speed "
      << fmt("%.4f", s.nominal_speed) << " mm/s, dt " << fmt("%g", s.dt) << " s\n";
  out << "network length " << fmt("%.3f", s.total_length) << " mm, end time " << fmt("%.2f", s.end_time)
      << " s, " << (s.completed ? "completed" : "not completed") << "\n";
  if (s.error) out << "ABORTED: " << s.error->message << "\n";
  out << "\n";

  for (const auto& seg : s.segments) {
    if (!opt.show_segment(seg.index)) continue;
    out << "segment " << seg.index << " (" << (seg.bend ? "bend" : "straight")
        << (seg.label.empty() ? "" : ", " + seg.label) << "), length " << fmt("%.3f", seg.length) << " mm\n";
    out << "  entry " << fmt_opt(seg.entry_t) << " s   exit " << fmt_opt(seg.exit_t) << " s\n";
    out << "  track      mean       min       max      theo";
    if (opt.ape) out << "    APE%";
    out << "\n";
    for (std::size_t i = 0; i < 3; ++i) {
      if (!opt.tracks[i]) continue;
      out << "  " << kTrackNames[i] << "     " << fmt("%9.4f", seg.mean_speed[i]) << " "
          << fmt("%9.4f", seg.min_speed[i]) << " " << fmt("%9.4f", seg.max_speed[i]) << " "
          << fmt("%9.4f", seg.mean_theoretical[i]);
      if (opt.ape) {
        if (seg.window_records > 0 && seg.window_ape_defined[i]) {
          out << " " << fmt("%7.3f", seg.window_ape[i]);
        } else {
          out << "       -";
        }
      }
      out << "\n";
    }
    out << "  max compression " << fmt("%.4f", seg.max_compression) << " mm ["
        << (seg.compression_ok ? "ok" : "FAIL") << "]  max tilt " << fmt("%.3f", seg.max_tilt_deg) << " deg ["
        << (seg.tilt_ok ? "ok" : "FAIL") << "]  max slip " << fmt("%.3g", seg.max_slip) << " mm/s\n\n";
  }

  out << "limits: compression " << fmt("%.4f", s.max_compression) << " / " << fmt("%.4f", s.limit_compression)
      << " mm, tilt " << fmt("%.3f", s.max_tilt_deg) << " / " << fmt("%.3f", s.limit_tilt_deg) << " deg\n";
}

}  // namespace detail

inline std::string write_report(const SummaryReport& summary, ReportFormat format,
                                const ReportOptions& options = {}) {
  if (format == ReportFormat::Json) return detail::summary_json(summary, options).dump(2) + "\n";
  std::ostringstream out;
  detail::summary_text(out, summary, options);
  return out.str();
}

/// One orientation of a sweep.
struct SweepEntry {
  double theta_deg = 0.0;
  SummaryReport summary;
};

inline std::string write_sweep_report(const std::vector<SweepEntry>& entries, ReportFormat format,
                                      const ReportOptions& options = {}) {
  if (format == ReportFormat::Json) {
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& e : entries) runs.push_back(detail::summary_json(e.summary, options));
    nlohmann::json j;
    j["orientations"] = entries.size();
    j["runs"] = runs;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "orientation sweep, " << entries.size() << " runs\n";
  out << "  theta_deg      mean_A      mean_B      mean_C    mean_all   end_t  status\n";
  for (const auto& e : entries) {
    const auto& m = e.summary.mean_speed;
    out << "  " << detail::fmt("%9.2f", e.theta_deg) << " " << detail::fmt("%11.4f", m[0]) << " "
        << detail::fmt("%11.4f", m[1]) << " " << detail::fmt("%11.4f", m[2]) << " "
        << detail::fmt("%11.4f", (m[0] + m[1] + m[2]) / 3.0) << " " << detail::fmt("%7.2f", e.summary.end_time)
        << "  " << (e.summary.error ? "aborted" : (e.summary.completed ? "completed" : "stopped")) << "\n";
  }
  for (const auto& e : entries) {
    out << "\n== theta " << detail::fmt("%.2f", e.theta_deg) << " deg ==\n";
    detail::summary_text(out, e.summary, options);
  }
  return out.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorCode::Io, "cannot open '" + path + "'");
  out << content;
  out.flush();
  require(out.good(), ErrorCode::Io, "failed writing '" + path + "'");
}

}  // namespace pipediff
