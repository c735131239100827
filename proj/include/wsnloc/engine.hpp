#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wsnloc/dynamics.hpp"
#include "wsnloc/localization.hpp"
#include "wsnloc/radio.hpp"
#include "wsnloc/scenario.hpp"

namespace wsnloc {

struct SensorState {
  std::string id;
  Role role = Role::Anchor;
  Point true_position;
  Point estimated_position;
  double uncertainty = 0.0;
  std::optional<TagMotionState> motion;  // tags only

  friend bool operator==(const SensorState&, const SensorState&) = default;
};

/// Random streams owned by one tag. Motion and radio draws never share a
/// stream, so toggling tag links cannot perturb trajectories.
struct TagStreams {
  Stream motion{0};
  Stream radio{0};
  friend bool operator==(const TagStreams&, const TagStreams&) = default;
};

struct SimState {
  Scenario scenario;
  std::uint64_t seed = 0;
  std::int64_t next_step = 0;
  std::vector<SensorState> sensors;  // sorted by id
  std::map<std::string, TagStreams> streams;

  friend bool operator==(const SimState&, const SimState&) = default;
};

struct SensorRecord {
  std::string id;
  Role role = Role::Anchor;
  Point true_position;
  Point estimated_position;
  double uncertainty = 0.0;
  int neighbor_count = 0;
  int fix_count = 0;
  MethodUsed method_used = MethodUsed::None;
  std::vector<BeaconFix> fixes;  // fixes the tag gathered this step; empty for anchors

  friend bool operator==(const SensorRecord& a, const SensorRecord& b) {
    return a.id == b.id && a.role == b.role && a.true_position == b.true_position &&
           a.estimated_position == b.estimated_position && a.uncertainty == b.uncertainty &&
           a.neighbor_count == b.neighbor_count && a.fix_count == b.fix_count &&
           a.method_used == b.method_used;
  }
};

struct StepRecord {
  std::int64_t step_index = 0;
  std::vector<SensorRecord> sensors;  // sorted by id
  std::vector<std::pair<std::string, std::string>> links;  // first < second

  const SensorRecord* find(const std::string& id) const;
  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct Trace {
  Scenario scenario;
  std::uint64_t seed = 0;
  std::vector<StepRecord> steps;

  /// Uncertainty of `tag_id` at every recorded step.
  std::vector<double> uncertainty_series(const std::string& tag_id) const;
  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Places anchors and tags, perturbs each tag's estimate uniformly within a
/// disc of radius initial_uncertainty, and derives per-tag streams from
/// (seed, tag id). Throws Error(Config) listing every violation when the
/// scenario is invalid.
SimState init_sim(const Scenario& s, std::uint64_t seed);

/// Advances one step: move tags, rebuild links from true positions, gather
/// fixes (tag sources report their step-begin estimates), localize every tag,
/// then update uncertainty from the neighbor count.
StepRecord step(SimState& state);

Trace run(const Scenario& s, std::int64_t steps, std::uint64_t seed);

struct DivergenceVerdict {
  std::string tag_id;
  bool diverged = false;
  double final_uncertainty = 0.0;
  double peak_uncertainty = 0.0;
  double tail_median = 0.0;
};

/// A tag has diverged iff its final uncertainty equals u_max and the median
/// over the last 10% of steps (at least one) is >= 0.9 u_max.
std::vector<DivergenceVerdict> detect_divergence(const Trace& t);

struct TagComparison {
  std::string tag_id;
  DivergenceVerdict links_off;
  DivergenceVerdict links_on;
  std::map<int, std::int64_t> neighbor_histogram_off;  // neighbor count -> steps
  std::map<int, std::int64_t> neighbor_histogram_on;
};

struct ComparisonReport {
  std::uint64_t seed = 0;
  std::int64_t steps = 0;
  std::vector<TagComparison> tags;
  Trace links_off;
  Trace links_on;

  int diverged_count_off() const;
  int diverged_count_on() const;
};

/// Runs `s` with tag links forced off and then on, same seed.
ComparisonReport compare_runs(const Scenario& s, std::int64_t steps, std::uint64_t seed);

}  // namespace wsnloc
