#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wsnloc/engine.hpp"

namespace wsnloc {

inline constexpr std::string_view kTraceHeader =
    "step,sensor_id,role,true_x,true_y,est_x,est_y,uncertainty,neighbor_count,fix_count,method";

/// One data row of trace.csv.
struct TraceRow {
  std::int64_t step = 0;
  std::string sensor_id;
  Role role = Role::Anchor;
  Point true_position;
  Point estimated_position;
  double uncertainty = 0.0;
  int neighbor_count = 0;
  int fix_count = 0;
  std::string method;
};

/// Parsed trace.csv: the embedded scenario and seed plus every data row.
struct TraceTable {
  Scenario scenario;
  std::uint64_t seed = 0;
  std::vector<TraceRow> rows;

  std::int64_t step_count() const;
  /// Rows of one step, in file order.
  std::vector<TraceRow> rows_at(std::int64_t step) const;
};

/// Writes trace.csv. Leading '#' lines carry the seed and the serialized
/// scenario; then the fixed header and one row per (step, sensor_id).
/// Numbers use 9 significant digits.
void write_trace_csv(std::ostream& out, const Trace& t);

/// Throws Error(Trace) with a line number on anything malformed.
TraceTable read_trace_csv(std::istream& in);

/// Per-tag final/peak uncertainty and verdict, one line per tag.
std::string summary_text(const Trace& t, bool color = false);

/// Both runs' per-step tag uncertainties side by side.
void write_compare_csv(std::ostream& out, const ComparisonReport& r);

/// Verdict lines `tag <id>: links_off=<diverged|bounded> links_on=<diverged|bounded>`
/// followed by neighbor-count histograms.
std::string report_text(const ComparisonReport& r, bool color = false);

std::string format_number(double v);

}  // namespace wsnloc
