#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wsnloc/geometry.hpp"

namespace wsnloc {

struct Arena {
  double width = 10.0;
  double height = 10.0;

  Rect bounds() const { return {0.0, 0.0, width, height}; }
  friend bool operator==(const Arena&, const Arena&) = default;
};

struct AnchorSpec {
  std::string id;
  Point position;
  friend bool operator==(const AnchorSpec&, const AnchorSpec&) = default;
};

struct TagSpec {
  std::string id;
  Point initial_position;
  Rect territory;
  double initial_uncertainty = 1.0;
  friend bool operator==(const TagSpec&, const TagSpec&) = default;
};

/// Radio range plus the log-distance path-loss model used to turn RSSI into range.
struct RadioParams {
  double range = 7.0;
  double path_loss_exponent = 2.0;
  double reference_distance = 1.0;
  double reference_power = -40.0;  // dB at reference_distance
  double shadowing_sigma = 0.0;    // dB
  friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

struct DynamicsParams {
  double growth_factor_low = 1.15;    // neighbor count <= 2
  double growth_factor_three = 1.05;  // neighbor count == 3
  double decay_alpha = 0.1;           // per neighbor above 3
  double u_min = 0.05;
  double u_max = 5.0;
  double speed = 0.25;          // meters per step
  double heading_sigma = 0.3;   // radians per step
  friend bool operator==(const DynamicsParams&, const DynamicsParams&) = default;
};

enum class EstimatorMethod { Trilaterate, WeightedCentroid };

struct EstimatorParams {
  EstimatorMethod method = EstimatorMethod::Trilaterate;
  double centroid_degree_g = 1.0;
  int refine_iterations = 5;
  double collinearity_epsilon = 1e-6;
  double tag_trust_max_uncertainty = 5.0;
  friend bool operator==(const EstimatorParams&, const EstimatorParams&) = default;
};

struct Scenario {
  Arena arena;
  std::vector<AnchorSpec> anchors;
  std::vector<TagSpec> tags;
  RadioParams radio;
  DynamicsParams dynamics;
  EstimatorParams estimator;
  bool tag_links_enabled = false;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// One failed invariant: dotted field path plus a human-readable reason.
struct Violation {
  std::string path;
  std::string reason;
  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string_view to_string(EstimatorMethod m);

/// Reference experiment: six fixed anchors in a 10 m x 10 m arena, 7 m radio
/// range, three territory-constrained tags. Tag C's territory sits in the
/// coverage-poor corner so that, without tag links, it spends long stretches
/// with two or fewer neighbors.
Scenario default_scenario();

/// Every invariant violation in `s`; empty means valid.
std::vector<Violation> validate_scenario(const Scenario& s);

/// Parses the INI-like scenario config. Absent keys keep their defaults; any
/// `[[anchor]]` or `[[tag]]` block replaces the corresponding default list.
/// Throws Error(ErrorKind::Config) with a line number on malformed input,
/// unknown keys, type mismatches and duplicate ids.
Scenario parse_scenario(std::string_view text);

/// Serializes every field so that parse_scenario(render_scenario(s)) == s.
std::string render_scenario(const Scenario& s);

/// Reads and parses a scenario file; the literal "default" yields default_scenario().
Scenario load_scenario(const std::string& path_or_default);

}  // namespace wsnloc
