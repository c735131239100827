#include <doctest.h>

#include <regex>
#include <sstream>

#include "wsnloc/error.hpp"
#include "wsnloc/svg.hpp"
#include "wsnloc/trace_io.hpp"

using namespace wsnloc;

namespace {

int count(const std::string& haystack, const std::string& needle) {
  int n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

std::string csv_of(const Trace& t) {
  std::ostringstream o;
  write_trace_csv(o, t);
  return o.str();
}

TraceTable table_of(const std::string& csv) {
  std::istringstream in(csv);
  return read_trace_csv(in);
}

}  // namespace

TEST_CASE("trace.csv schema") {
  Scenario s = default_scenario();
  s.tag_links_enabled = true;
  const Trace t = run(s, 25, 7);
  const std::string csv = csv_of(t);

  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> data;
  bool header = false;
  while (std::getline(in, line)) {
    if (!header) {
      if (line == kTraceHeader) header = true;
      else REQUIRE(line.starts_with("#"));
      continue;
    }
    data.push_back(line);
  }
  REQUIRE(header);
  CHECK(data.size() == 25 * 9);

  // rows ordered by (step, sensor_id)
  std::vector<std::pair<long, std::string>> keys;
  for (const auto& row : data) {
    const auto c1 = row.find(','), c2 = row.find(',', c1 + 1);
    keys.emplace_back(std::stol(row.substr(0, c1)), row.substr(c1 + 1, c2 - c1 - 1));
  }
  CHECK(std::is_sorted(keys.begin(), keys.end()));

  CHECK(format_number(1.0 / 3.0) == "0.333333333");
  CHECK(format_number(5.0) == "5");
  CHECK(format_number(12345.6789012) == "12345.6789");
}

TEST_CASE("trace.csv reads back") {
  Scenario s = default_scenario();
  s.tag_links_enabled = true;
  const Trace t = run(s, 40, 3);
  const TraceTable table = table_of(csv_of(t));
  CHECK(table.scenario == s);
  CHECK(table.seed == 3);
  CHECK(table.step_count() == 40);
  REQUIRE(table.rows.size() == 40 * 9);
  const auto& r = table.rows[9 * 12];  // step 12, tag "A" sorts before "a1"
  CHECK(r.role == Role::Tag);
  const SensorRecord* src = t.steps[12].find(r.sensor_id);
  REQUIRE(src);
  CHECK(r.true_position.x == doctest::Approx(src->true_position.x).epsilon(1e-8));
  CHECK(r.uncertainty == doctest::Approx(src->uncertainty).epsilon(1e-8));
  CHECK(r.neighbor_count == src->neighbor_count);
  CHECK(r.method == to_string(src->method_used));
}

TEST_CASE("malformed traces are rejected") {
  const std::string good = csv_of(run(default_scenario(), 2, 1));
  auto kind = [](const std::string& text) {
    try {
      table_of(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Config;
  };
  CHECK(kind("") == ErrorKind::Trace);
  CHECK(kind("step,sensor\n") == ErrorKind::Trace);
  CHECK(kind(good + "1,A,tag,1,2,3\n") == ErrorKind::Trace);
  CHECK(kind(good + "1,A,dog,1,2,3,4,1,3,3,none\n") == ErrorKind::Trace);
  CHECK(kind(good + "1,A,tag,x,2,3,4,1,3,3,none\n") == ErrorKind::Trace);
  CHECK(kind(good + "1,A,tag,1,2,3,4,1,3,3,magic\n") == ErrorKind::Trace);
  std::string no_seed = good;
  no_seed.erase(no_seed.find("# seed"), no_seed.find('\n', no_seed.find("# seed")) - no_seed.find("# seed") + 1);
  CHECK(kind(no_seed) == ErrorKind::Trace);
}

TEST_CASE("summary and report text") {
  const ComparisonReport r = compare_runs(default_scenario(), 1, 42);
  const std::string text = report_text(r);
  const std::regex verdict_line("tag [A-Za-z0-9_.-]+: links_off=(diverged|bounded) links_on=(diverged|bounded)");
  int lines = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.starts_with("tag ")) {
      CHECK(std::regex_match(line, verdict_line));
      CHECK(line.find("diverged") == std::string::npos);
      ++lines;
    }
  }
  CHECK(lines == 3);
  CHECK(text.find('\x1b') == std::string::npos);
  CHECK(report_text(r, true).find("\x1b[32mbounded") != std::string::npos);

  const std::string summary = summary_text(r.links_off);
  CHECK(count(summary, "verdict=") == 3);
  CHECK(summary.find('\x1b') == std::string::npos);

  std::ostringstream cmp;
  write_compare_csv(cmp, r);
  CHECK(cmp.str().starts_with("step,tag_id,true_x,true_y,uncertainty_links_off,uncertainty_links_on,"));
  CHECK(count(cmp.str(), "\n") == 1 + 3);
}

TEST_CASE("svg snapshot contract") {
  const Trace t = run(default_scenario(), 10, 42);
  const TraceTable table = table_of(csv_of(t));
  RenderStyle style;
  const std::string svg = render_step_svg(table, 0, style);

  CHECK(count(svg, "<circle class=\"anchor\"") == 6);
  CHECK(count(svg, "<circle class=\"tag\"") == 3);
  CHECK(count(svg, "<rect class=\"territory\"") == 3);
  CHECK(count(svg, "<rect class=\"arena\"") == 1);
  CHECK(count(svg, "stroke-dasharray") == 3);

  // radius = tag_glyph_scale * recorded uncertainty
  for (const auto& row : table.rows_at(0)) {
    if (row.role != Role::Tag) continue;
    const std::string needle = "data-id=\"" + row.sensor_id + "\" cx=";
    const auto pos = svg.find("<circle class=\"tag\" " + needle);
    REQUIRE(pos != std::string::npos);
    const auto r0 = svg.find(" r=\"", pos) + 4;
    const double r = std::stod(svg.substr(r0, svg.find('"', r0) - r0));
    CHECK(r == doctest::Approx(style.tag_glyph_scale * row.uncertainty).epsilon(1e-8));
  }

  RenderStyle bare = style;
  bare.show_links = false;
  bare.show_territories = false;
  const std::string plain = render_step_svg(table, 0, bare);
  CHECK(count(plain, "class=\"territory\"") == 0);
  CHECK(count(plain, "class=\"link\"") == 0);

  CHECK_THROWS_AS(render_step_svg(table, 10, style), Error);
  CHECK_THROWS_AS(render_step_svg(table, -1, style), Error);
}

TEST_CASE("tag at u_max renders at exactly scale * u_max") {
  const Scenario s = default_scenario();
  std::ostringstream csv;
  csv << "# seed = 1\n";
  std::istringstream cfg(render_scenario(s));
  for (std::string line; std::getline(cfg, line);) csv << "# | " << line << "\n";
  csv << kTraceHeader << "\n";
  csv << "0,C,tag,8,8,8.1,8.1,5,1,1,weighted_centroid\n";
  csv << "0,a1,anchor,1,1,1,1,0,0,0,none\n";
  const TraceTable table = table_of(csv.str());
  RenderStyle style;
  style.tag_glyph_scale = 12.5;
  const std::string svg = render_step_svg(table, 0, style);
  CHECK(svg.find("<circle class=\"tag\" data-id=\"C\" cx=\"") != std::string::npos);
  CHECK(svg.find("r=\"62.5\"") != std::string::npos);
}

TEST_CASE("links drawn from recorded positions") {
  Scenario s = default_scenario();
  s.tag_links_enabled = true;
  const Trace t = run(s, 3, 42);
  const TraceTable table = table_of(csv_of(t));
  const std::string svg = render_step_svg(table, 2);
  CHECK(count(svg, "<line class=\"link\"") == static_cast<int>(t.steps[2].links.size()));
}
