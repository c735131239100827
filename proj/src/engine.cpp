#include "wsnloc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wsnloc/error.hpp"

namespace wsnloc {

const SensorRecord* StepRecord::find(const std::string& id) const {
  auto it = std::lower_bound(sensors.begin(), sensors.end(), id,
                             [](const SensorRecord& r, const std::string& key) { return r.id < key; });
  return it != sensors.end() && it->id == id ? &*it : nullptr;
}

std::vector<double> Trace::uncertainty_series(const std::string& tag_id) const {
  std::vector<double> out;
  out.reserve(steps.size());
  for (const auto& rec : steps)
    if (const auto* s = rec.find(tag_id)) out.push_back(s->uncertainty);
  return out;
}

SimState init_sim(const Scenario& s, std::uint64_t seed) {
  if (auto violations = validate_scenario(s); !violations.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& v : violations) msg += "\n  " + v.path + ": " + v.reason;
    throw Error(ErrorKind::Config, msg);
  }

  SimState state;
  state.scenario = s;
  state.seed = seed;

  for (const auto& a : s.anchors) {
    SensorState sensor;
    sensor.id = a.id;
    sensor.role = Role::Anchor;
    sensor.true_position = a.position;
    sensor.estimated_position = a.position;
    state.sensors.push_back(std::move(sensor));
  }

  for (const auto& t : s.tags) {
    Stream init = Stream::derive(seed, t.id, "init");
    const double heading = -std::numbers::pi + 2.0 * std::numbers::pi * init.uniform();
    const double r = t.initial_uncertainty * std::sqrt(init.uniform());
    const double theta = 2.0 * std::numbers::pi * init.uniform();

    SensorState sensor;
    sensor.id = t.id;
    sensor.role = Role::Tag;
    sensor.true_position = t.initial_position;
    sensor.estimated_position = {t.initial_position.x + r * std::cos(theta),
                                 t.initial_position.y + r * std::sin(theta)};
    sensor.uncertainty = t.initial_uncertainty;
    sensor.motion = TagMotionState{t.initial_position, heading, t.territory};
    state.sensors.push_back(std::move(sensor));

    state.streams[t.id] = TagStreams{Stream::derive(seed, t.id, "motion"),
                                     Stream::derive(seed, t.id, "radio")};
  }

  std::sort(state.sensors.begin(), state.sensors.end(),
            [](const SensorState& a, const SensorState& b) { return a.id < b.id; });
  return state;
}

StepRecord step(SimState& state) {
  const Scenario& sc = state.scenario;

  // (1) move
  for (auto& sensor : state.sensors) {
    if (sensor.role != Role::Tag) continue;
    *sensor.motion = step_mobility(*sensor.motion, sc.dynamics, state.streams.at(sensor.id).motion);
    sensor.true_position = sensor.motion->position;
  }

  // (2) connectivity from true positions
  std::map<std::string, Point> positions;
  std::map<std::string, Role> roles;
  std::map<std::string, const SensorState*> by_id;
  for (const auto& sensor : state.sensors) {
    positions[sensor.id] = sensor.true_position;
    roles[sensor.id] = sensor.role;
    by_id[sensor.id] = &sensor;
  }
  const LinkSet links = neighbor_graph(positions, sc.radio, roles, sc.tag_links_enabled);

  StepRecord rec;
  rec.step_index = state.next_step;

  // (3) + (4) gather fixes and localize against the step-begin snapshot
  struct Update {
    PositionEstimate estimate;
    int neighbor_count = 0;
    std::vector<BeaconFix> fixes;
  };
  std::vector<Update> updates(state.sensors.size());

  for (std::size_t i = 0; i < state.sensors.size(); ++i) {
    const auto& sensor = state.sensors[i];
    if (sensor.role != Role::Tag) continue;
    Stream& radio_rng = state.streams.at(sensor.id).radio;

    auto& up = updates[i];
    for (const auto& other_id : links.neighbors(sensor.id)) {
      const SensorState& other = *by_id.at(other_id);
      DistanceMeasurement m =
          measure_distance(sensor.true_position, other.true_position, sc.radio, radio_rng);
      BeaconFix fix;
      fix.beacon_position = other.estimated_position;
      fix.estimated_distance = m.estimated_distance;
      fix.source_id = other.id;
      fix.source_kind = other.role;
      fix.reported_uncertainty = other.role == Role::Tag ? other.uncertainty : 0.0;
      up.fixes.push_back(std::move(fix));
    }
    up.neighbor_count = static_cast<int>(up.fixes.size());

    PositionEstimate prior;
    prior.position = sensor.estimated_position;
    up.estimate = localize(prior, up.fixes, sc.estimator);
  }

  // (5) commit estimates and uncertainty together
  for (std::size_t i = 0; i < state.sensors.size(); ++i) {
    auto& sensor = state.sensors[i];
    SensorRecord r;
    r.id = sensor.id;
    r.role = sensor.role;
    if (sensor.role == Role::Tag) {
      auto& up = updates[i];
      sensor.estimated_position = up.estimate.position;
      sensor.uncertainty = update_uncertainty(sensor.uncertainty, up.neighbor_count, sc.dynamics);
      r.neighbor_count = up.neighbor_count;
      r.fix_count = up.estimate.fix_count;
      r.method_used = up.estimate.method_used;
      r.fixes = std::move(up.fixes);
    } else {
      int tags = 0;
      for (const auto& other_id : links.neighbors(sensor.id))
        if (roles.at(other_id) == Role::Tag) ++tags;
      r.neighbor_count = tags;
    }
    r.true_position = sensor.true_position;
    r.estimated_position = sensor.estimated_position;
    r.uncertainty = sensor.uncertainty;
    rec.sensors.push_back(std::move(r));
  }

  // (6) links that carry fixes; anchor-anchor pairs are dropped
  for (const auto& [a, neighbors] : links.adjacency()) {
    for (const auto& b : neighbors) {
      if (a < b && (roles.at(a) == Role::Tag || roles.at(b) == Role::Tag)) rec.links.emplace_back(a, b);
    }
  }

  ++state.next_step;
  return rec;
}

Trace run(const Scenario& s, std::int64_t steps, std::uint64_t seed) {
  if (steps < 1) throw Error(ErrorKind::Config, "steps must be >= 1");
  SimState state = init_sim(s, seed);
  Trace trace;
  trace.scenario = s;
  trace.seed = seed;
  trace.steps.reserve(static_cast<std::size_t>(steps));
  for (std::int64_t i = 0; i < steps; ++i) trace.steps.push_back(step(state));
  return trace;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<DivergenceVerdict> detect_divergence(const Trace& t) {
  std::vector<DivergenceVerdict> out;
  if (t.steps.empty()) return out;
  const double u_max = t.scenario.dynamics.u_max;

  for (const auto& tag : t.scenario.tags) {
    const auto series = t.uncertainty_series(tag.id);
    if (series.empty()) continue;
    const std::size_t n = series.size();
    const std::size_t tail = std::max<std::size_t>(1, (n + 9) / 10);

    DivergenceVerdict v;
    v.tag_id = tag.id;
    v.final_uncertainty = series.back();
    v.peak_uncertainty = *std::max_element(series.begin(), series.end());
    v.tail_median = median(std::vector<double>(series.end() - static_cast<std::ptrdiff_t>(tail), series.end()));
    v.diverged = v.final_uncertainty == u_max && v.tail_median >= 0.9 * u_max;
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end(),
            [](const DivergenceVerdict& a, const DivergenceVerdict& b) { return a.tag_id < b.tag_id; });
  return out;
}

int ComparisonReport::diverged_count_off() const {
  return static_cast<int>(std::count_if(tags.begin(), tags.end(),
                                        [](const TagComparison& t) { return t.links_off.diverged; }));
}

int ComparisonReport::diverged_count_on() const {
  return static_cast<int>(std::count_if(tags.begin(), tags.end(),
                                        [](const TagComparison& t) { return t.links_on.diverged; }));
}

namespace {

std::map<int, std::int64_t> neighbor_histogram(const Trace& t, const std::string& id) {
  std::map<int, std::int64_t> h;
  for (const auto& rec : t.steps)
    if (const auto* s = rec.find(id)) ++h[s->neighbor_count];
  return h;
}

}  // namespace

ComparisonReport compare_runs(const Scenario& s, std::int64_t steps, std::uint64_t seed) {
  Scenario off = s;
  off.tag_links_enabled = false;
  Scenario on = s;
  on.tag_links_enabled = true;

  ComparisonReport report;
  report.seed = seed;
  report.steps = steps;
  report.links_off = run(off, steps, seed);
  report.links_on = run(on, steps, seed);

  const auto v_off = detect_divergence(report.links_off);
  const auto v_on = detect_divergence(report.links_on);
  for (std::size_t i = 0; i < v_off.size(); ++i) {
    TagComparison tc;
    tc.tag_id = v_off[i].tag_id;
    tc.links_off = v_off[i];
    tc.links_on = v_on[i];
    tc.neighbor_histogram_off = neighbor_histogram(report.links_off, tc.tag_id);
    tc.neighbor_histogram_on = neighbor_histogram(report.links_on, tc.tag_id);
    report.tags.push_back(std::move(tc));
  }
  return report;
}

}  // namespace wsnloc
