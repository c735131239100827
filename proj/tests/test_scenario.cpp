#include <doctest.h>

#include <cmath>
#include <random>

#include "wsnloc/error.hpp"
#include "wsnloc/scenario.hpp"

using namespace wsnloc;

namespace {

int anchors_in_range(Point p, const Scenario& s) {
  int n = 0;
  for (const auto& a : s.anchors) n += distance(p, a.position) <= s.radio.range;
  return n;
}

bool has_violation(const std::vector<Violation>& v, const std::string& path) {
  for (const auto& x : v)
    if (x.path == path) return true;
  return false;
}

}  // namespace

TEST_CASE("default scenario matches the reference experiment") {
  const Scenario s = default_scenario();
  CHECK(s.arena.width == 10.0);
  CHECK(s.arena.height == 10.0);
  CHECK(s.radio.range == 7.0);
  CHECK(s.anchors.size() == 6);
  CHECK(s.tags.size() == 3);
  CHECK(s.radio.shadowing_sigma == 0.0);
  CHECK(s.dynamics.growth_factor_low == 1.15);
  CHECK(s.dynamics.growth_factor_three == 1.05);
  CHECK(s.dynamics.decay_alpha == 0.1);
  CHECK(s.estimator.centroid_degree_g == 1.0);
  CHECK_FALSE(s.tag_links_enabled);
  CHECK(validate_scenario(s).empty());
  CHECK(default_scenario() == default_scenario());
}

TEST_CASE("default geometry has a coverage-poor corner") {
  const Scenario s = default_scenario();
  // Direct distance counts.
  CHECK(anchors_in_range({9, 9}, s) == 0);
  CHECK(anchors_in_range({9, 8}, s) == 2);

  // Tag C's territory contains points with two or fewer anchors; tag A's does not.
  const auto& c = s.tags[2];
  const auto& a = s.tags[0];
  CHECK(anchors_in_range({c.territory.xmax, c.territory.ymax}, s) <= 2);
  for (double x = a.territory.xmin; x <= a.territory.xmax; x += 0.25)
    for (double y = a.territory.ymin; y <= a.territory.ymax; y += 0.25)
      REQUIRE(anchors_in_range({x, y}, s) >= 4);

  // B and C have positions within mutual range.
  CHECK(distance({c.territory.xmin, c.territory.ymin}, {s.tags[1].territory.xmax, s.tags[1].territory.ymax}) <=
        s.radio.range);
}

TEST_CASE("empty document yields the defaults") {
  CHECK(parse_scenario("") == default_scenario());
  CHECK(parse_scenario("# only a comment\n\n   \n") == default_scenario());
}

TEST_CASE("parse qualified keys and anchor blocks") {
  const char* text = R"(
arena.width = 10
arena.height = 10
radio.range = 7
[[anchor]]
id = a1
position = 1, 1
[[anchor]]
id = a2
position = 4, 1
[[anchor]]
id = a3
position = 1, 4
[[anchor]]
id = a4
position = 4, 4
[[anchor]]
id = a5
position = 2, 7
[[anchor]]
id = "a6"   # quoted ids are accepted
position = 7,2
)";
  const Scenario s = parse_scenario(text);
  CHECK(s.anchors.size() == 6);
  CHECK(s.anchors[5].id == "a6");
  CHECK(s.anchors[5].position == Point{7, 2});
  CHECK(s.arena.width == 10);
  CHECK(s.radio.range == 7);
  CHECK(s.tags == default_scenario().tags);
}

TEST_CASE("section keys and tag blocks") {
  const char* text = R"(
tag_links_enabled = true
[dynamics]
u_max = 4.5
[estimator]
method = weighted_centroid
refine_iterations = 3
[[tag]]
id = dog1
initial_position = 2, 2
territory = 1, 1, 3, 3
)";
  const Scenario s = parse_scenario(text);
  CHECK(s.tag_links_enabled);
  CHECK(s.dynamics.u_max == 4.5);
  CHECK(s.estimator.method == EstimatorMethod::WeightedCentroid);
  CHECK(s.estimator.refine_iterations == 3);
  REQUIRE(s.tags.size() == 1);
  CHECK(s.tags[0].initial_uncertainty == 1.0);
  CHECK(s.tags[0].territory == Rect{1, 1, 3, 3});
}

TEST_CASE("parse errors") {
  auto message = [](const char* text) {
    try {
      parse_scenario(text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Config);
      return std::string(e.what());
    }
    FAIL("expected a parse error");
    return std::string();
  };

  SUBCASE("duplicate id names the id") {
    auto m = message("[[anchor]]\nid = a1\nposition = 1,1\n[[anchor]]\nid = a1\nposition = 2,2\n");
    CHECK(m.find("a1") != std::string::npos);
    CHECK(m.find("duplicate") != std::string::npos);
  }
  SUBCASE("id shared between anchor and tag") {
    auto m = message("[[anchor]]\nid = x\nposition = 1,1\n[[tag]]\nid = x\ninitial_position = 1,1\nterritory = 0,0,2,2\n");
    CHECK(m.find("\"x\"") != std::string::npos);
  }
  SUBCASE("syntax error carries the line number") {
    auto m = message("arena.width = 10\n\nthis is not a key value\n");
    CHECK(m.find("line 3") != std::string::npos);
  }
  SUBCASE("unknown key") {
    auto m = message("radio.power = 3\n");
    CHECK(m.find("unknown key 'radio.power'") != std::string::npos);
  }
  SUBCASE("unknown key inside section") {
    CHECK(message("[radio]\nbogus = 1\n").find("radio.bogus") != std::string::npos);
  }
  SUBCASE("type mismatch") {
    CHECK(message("radio.range = seven\n").find("type mismatch") != std::string::npos);
    CHECK(message("tag_links_enabled = yes\n").find("type mismatch") != std::string::npos);
    CHECK(message("estimator.refine_iterations = 2.5\n").find("integer") != std::string::npos);
    CHECK(message("[[anchor]]\nid = a\nposition = 1\n").find("point") != std::string::npos);
    CHECK(message("[[tag]]\nid = t\ninitial_position = 1,1\nterritory = 0,0,2\n").find("rectangle") !=
          std::string::npos);
  }
  SUBCASE("incomplete block") {
    CHECK(message("[[anchor]]\nid = a\n").find("position") != std::string::npos);
  }
  SUBCASE("unknown section") {
    CHECK(message("[physics]\n").find("unknown section") != std::string::npos);
  }
}

TEST_CASE("validation reports each violation") {
  SUBCASE("tag outside its territory") {
    Scenario s = default_scenario();
    s.tags[1].initial_position = {1, 1};
    const auto v = validate_scenario(s);
    REQUIRE(v.size() == 1);
    CHECK(v[0].path == "tag[1].initial_position");
    CHECK(v[0].reason.find("\"B\"") != std::string::npos);
  }
  SUBCASE("u_min above u_max") {
    Scenario s = default_scenario();
    s.dynamics.u_min = 0.5;
    s.dynamics.u_max = 0.1;
    s.estimator.tag_trust_max_uncertainty = 0.1;
    for (auto& t : s.tags) t.initial_uncertainty = 0.1;
    const auto v = validate_scenario(s);
    bool found = false;
    for (const auto& x : v) found |= x.reason == "u_min < u_max required";
    CHECK(found);
  }
  SUBCASE("each typed invariant") {
    Scenario s = default_scenario();
    s.arena.width = 0;
    s.radio.range = -1;
    s.radio.path_loss_exponent = 0;
    s.radio.reference_distance = 0;
    s.radio.shadowing_sigma = -1;
    s.dynamics.growth_factor_three = 1.2;  // not below growth_factor_low
    s.dynamics.decay_alpha = 0;
    s.dynamics.speed = -1;
    s.dynamics.heading_sigma = -0.1;
    s.estimator.centroid_degree_g = 0;
    s.estimator.refine_iterations = -1;
    s.estimator.collinearity_epsilon = 0;
    s.estimator.tag_trust_max_uncertainty = 6;
    const auto v = validate_scenario(s);
    for (const char* p : {"arena.width", "radio.range", "radio.path_loss_exponent", "radio.reference_distance",
                          "radio.shadowing_sigma", "dynamics.growth_factor_low", "dynamics.decay_alpha",
                          "dynamics.speed", "dynamics.heading_sigma", "estimator.centroid_degree_g",
                          "estimator.refine_iterations", "estimator.collinearity_epsilon",
                          "estimator.tag_trust_max_uncertainty"})
      CHECK_MESSAGE(has_violation(v, p), p);
    // Shrinking the arena also pushes anchors and territories outside it.
    CHECK(has_violation(v, "anchor[0].position"));
  }
  SUBCASE("lists and ids") {
    Scenario s = default_scenario();
    s.anchors.clear();
    s.tags.push_back(s.tags[0]);
    const auto v = validate_scenario(s);
    CHECK(has_violation(v, "anchors"));
    CHECK(has_violation(v, "tag[3].id"));
  }
  SUBCASE("never mutates") {
    Scenario s = default_scenario();
    s.arena.height = -3;
    const Scenario copy = s;
    (void)validate_scenario(s);
    CHECK(s == copy);
  }
}

TEST_CASE("render/parse round trip over random valid scenarios") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Scenario s;
    s.arena = {5 + 20 * u(rng), 5 + 20 * u(rng)};
    const int na = 1 + static_cast<int>(u(rng) * 7);
    for (int i = 0; i < na; ++i)
      s.anchors.push_back({"anchor_" + std::to_string(i), {u(rng) * s.arena.width, u(rng) * s.arena.height}});
    s.dynamics.u_min = 0.01 + 0.1 * u(rng);
    s.dynamics.u_max = s.dynamics.u_min + 1 + 5 * u(rng);
    s.dynamics.growth_factor_low = 1.1 + u(rng);
    s.dynamics.growth_factor_three = 1 + (s.dynamics.growth_factor_low - 1) * (0.1 + 0.8 * u(rng));
    s.dynamics.decay_alpha = 0.01 + u(rng);
    s.dynamics.speed = u(rng);
    s.dynamics.heading_sigma = u(rng) / 3;
    const int nt = 1 + static_cast<int>(u(rng) * 4);
    for (int i = 0; i < nt; ++i) {
      const double x0 = u(rng) * s.arena.width / 2, y0 = u(rng) * s.arena.height / 2;
      const double x1 = x0 + u(rng) * s.arena.width / 2, y1 = y0 + u(rng) * s.arena.height / 2;
      s.tags.push_back({"t" + std::to_string(i), {(x0 + x1) / 2, (y0 + y1) / 2}, {x0, y0, x1, y1},
                        s.dynamics.u_min + u(rng) * (s.dynamics.u_max - s.dynamics.u_min)});
    }
    s.radio = {1 + 10 * u(rng), 1 + 3 * u(rng), 0.5 + u(rng), -30 - 40 * u(rng), 4 * u(rng)};
    s.estimator.method = u(rng) < 0.5 ? EstimatorMethod::Trilaterate : EstimatorMethod::WeightedCentroid;
    s.estimator.centroid_degree_g = 0.1 + 3 * u(rng);
    s.estimator.refine_iterations = static_cast<int>(u(rng) * 20);
    s.estimator.collinearity_epsilon = 1e-9 + u(rng);
    s.estimator.tag_trust_max_uncertainty = s.dynamics.u_max * (0.01 + 0.99 * u(rng));
    s.tag_links_enabled = u(rng) < 0.5;
    REQUIRE(validate_scenario(s).empty());
    REQUIRE(parse_scenario(render_scenario(s)) == s);
  }
}

TEST_CASE("load_scenario") {
  CHECK(load_scenario("default") == default_scenario());
  try {
    load_scenario("/nonexistent/dir/scenario.cfg");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    CHECK(std::string(e.what()).find("/nonexistent/dir/scenario.cfg") != std::string::npos);
  }
}
