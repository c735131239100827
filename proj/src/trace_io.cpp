#include "wsnloc/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "wsnloc/error.hpp"

namespace wsnloc {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::int64_t TraceTable::step_count() const {
  std::int64_t n = 0;
  for (const auto& r : rows) n = std::max(n, r.step + 1);
  return n;
}

std::vector<TraceRow> TraceTable::rows_at(std::int64_t step) const {
  std::vector<TraceRow> out;
  for (const auto& r : rows)
    if (r.step == step) out.push_back(r);
  return out;
}

void write_trace_csv(std::ostream& out, const Trace& t) {
  out << "# wsnloc trace\n";
  out << "# seed = " << t.seed << "\n";
  std::istringstream cfg(render_scenario(t.scenario));
  for (std::string line; std::getline(cfg, line);) out << "# | " << line << "\n";
  out << kTraceHeader << "\n";

  for (const auto& rec : t.steps) {
    for (const auto& s : rec.sensors) {
      out << rec.step_index << ',' << s.id << ',' << (s.role == Role::Tag ? "tag" : "anchor") << ','
          << format_number(s.true_position.x) << ',' << format_number(s.true_position.y) << ','
          << format_number(s.estimated_position.x) << ',' << format_number(s.estimated_position.y)
          << ',' << format_number(s.uncertainty) << ',' << s.neighbor_count << ',' << s.fix_count
          << ',' << to_string(s.method_used) << '\n';
    }
  }
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto next = line.find(sep, pos);
    out.push_back(line.substr(pos, next == std::string_view::npos ? line.npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

template <class T>
bool parse_value(std::string_view s, T& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size() && !s.empty();
}

}  // namespace

TraceTable read_trace_csv(std::istream& in) {
  TraceTable table;
  std::string scenario_text;
  bool header_seen = false;
  bool seed_seen = false;
  int line_no = 0;

  auto fail = [&](const std::string& msg) -> void {
    throw Error(ErrorKind::Trace, "trace line " + std::to_string(line_no) + ": " + msg);
  };

  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    if (!header_seen) {
      if (line.starts_with("# | ")) {
        scenario_text.append(line.substr(4)).push_back('\n');
      } else if (line == "# |") {
        scenario_text.push_back('\n');
      } else if (line.starts_with("# seed = ")) {
        if (!parse_value(line.substr(9), table.seed)) fail("bad seed");
        seed_seen = true;
      } else if (line.starts_with("#")) {
        continue;
      } else if (line == kTraceHeader) {
        header_seen = true;
      } else {
        fail("expected header '" + std::string(kTraceHeader) + "'");
      }
      continue;
    }

    auto f = split(line, ',');
    if (f.size() != 11) fail("expected 11 fields, got " + std::to_string(f.size()));
    TraceRow row;
    bool ok = parse_value(f[0], row.step) && row.step >= 0;
    row.sensor_id = std::string(f[1]);
    if (f[2] == "tag")
      row.role = Role::Tag;
    else if (f[2] == "anchor")
      row.role = Role::Anchor;
    else
      ok = false;
    ok = ok && parse_value(f[3], row.true_position.x) && parse_value(f[4], row.true_position.y) &&
         parse_value(f[5], row.estimated_position.x) && parse_value(f[6], row.estimated_position.y) &&
         parse_value(f[7], row.uncertainty) && parse_value(f[8], row.neighbor_count) &&
         parse_value(f[9], row.fix_count);
    row.method = std::string(f[10]);
    if (row.method != "trilaterate" && row.method != "weighted_centroid" && row.method != "none")
      ok = false;
    if (!ok || row.sensor_id.empty()) fail("malformed row");
    table.rows.push_back(std::move(row));
  }

  if (!header_seen) throw Error(ErrorKind::Trace, "trace has no header line");
  if (!seed_seen) throw Error(ErrorKind::Trace, "trace has no seed comment");
  try {
    table.scenario = parse_scenario(scenario_text);
  } catch (const Error& e) {
    throw Error(ErrorKind::Trace, std::string("embedded scenario: ") + e.what());
  }
  return table;
}

namespace {

constexpr const char* kRed = "\x1b[31m";
constexpr const char* kGreen = "\x1b[32m";
constexpr const char* kReset = "\x1b[0m";

std::string verdict(bool diverged, bool color) {
  const char* word = diverged ? "diverged" : "bounded";
  if (!color) return word;
  return std::string(diverged ? kRed : kGreen) + word + kReset;
}

}  // namespace

std::string summary_text(const Trace& t, bool color) {
  std::ostringstream o;
  o << "seed " << t.seed << ", " << t.steps.size() << " steps, tag links "
    << (t.scenario.tag_links_enabled ? "on" : "off") << "\n";
  for (const auto& v : detect_divergence(t)) {
    o << "tag " << v.tag_id << ": final_uncertainty=" << format_number(v.final_uncertainty)
      << " peak_uncertainty=" << format_number(v.peak_uncertainty) << " verdict="
      << verdict(v.diverged, color) << "\n";
  }
  return o.str();
}

void write_compare_csv(std::ostream& out, const ComparisonReport& r) {
  out << "step,tag_id,true_x,true_y,uncertainty_links_off,uncertainty_links_on,"
         "neighbor_count_links_off,neighbor_count_links_on\n";
  for (std::size_t i = 0; i < r.links_off.steps.size(); ++i) {
    const auto& off = r.links_off.steps[i];
    const auto& on = r.links_on.steps[i];
    for (const auto& a : off.sensors) {
      if (a.role != Role::Tag) continue;
      const SensorRecord* b = on.find(a.id);
      out << off.step_index << ',' << a.id << ',' << format_number(a.true_position.x) << ','
          << format_number(a.true_position.y) << ',' << format_number(a.uncertainty) << ','
          << format_number(b->uncertainty) << ',' << a.neighbor_count << ',' << b->neighbor_count
          << '\n';
    }
  }
}

std::string report_text(const ComparisonReport& r, bool color) {
  std::ostringstream o;
  for (const auto& t : r.tags) {
    o << "tag " << t.tag_id << ": links_off=" << verdict(t.links_off.diverged, color)
      << " links_on=" << verdict(t.links_on.diverged, color) << "\n";
  }
  o << "\n# seed " << r.seed << ", " << r.steps << " steps\n";
  for (const auto& t : r.tags) {
    o << "# tag " << t.tag_id << " final/peak uncertainty: links_off "
      << format_number(t.links_off.final_uncertainty) << "/"
      << format_number(t.links_off.peak_uncertainty) << ", links_on "
      << format_number(t.links_on.final_uncertainty) << "/"
      << format_number(t.links_on.peak_uncertainty) << "\n";
    auto hist = [&](const char* label, const std::map<int, std::int64_t>& h) {
      o << "# tag " << t.tag_id << " neighbor histogram " << label << ":";
      for (const auto& [k, n] : h) o << ' ' << k << '=' << n;
      o << "\n";
    };
    hist("links_off", t.neighbor_histogram_off);
    hist("links_on", t.neighbor_histogram_on);
  }
  return o.str();
}

}  // namespace wsnloc
