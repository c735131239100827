#include "wsnloc/radio.hpp"

#include <algorithm>
#include <cmath>

namespace wsnloc {

const std::set<std::string>& LinkSet::neighbors(const std::string& id) const {
  static const std::set<std::string> empty;
  auto it = adj_.find(id);
  return it == adj_.end() ? empty : it->second;
}

LinkSet neighbor_graph(const std::map<std::string, Point>& true_positions, const RadioParams& radio,
                       const std::map<std::string, Role>& roles, bool tag_links_enabled) {
  auto role_of = [&](const std::string& id) {
    auto it = roles.find(id);
    return it == roles.end() ? Role::Anchor : it->second;
  };

  LinkSet links;
  for (const auto& [id, p] : true_positions) links.add_sensor(id);
  for (auto a = true_positions.begin(); a != true_positions.end(); ++a) {
    for (auto b = std::next(a); b != true_positions.end(); ++b) {
      if (distance(a->second, b->second) > radio.range) continue;
      if (!tag_links_enabled && role_of(a->first) == Role::Tag && role_of(b->first) == Role::Tag)
        continue;
      links.link(a->first, b->first);
    }
  }
  return links;
}

double rssi_from_distance(double d, const RadioParams& radio, double noise_db) {
  d = std::max(d, radio.reference_distance / 100.0);
  return radio.reference_power -
         10.0 * radio.path_loss_exponent * std::log10(d / radio.reference_distance) + noise_db;
}

double distance_from_rssi(double power_db, const RadioParams& radio) {
  const double d = radio.reference_distance *
                   std::pow(10.0, (radio.reference_power - power_db) / (10.0 * radio.path_loss_exponent));
  return std::clamp(d, 0.01, 2.0 * radio.range);
}

DistanceMeasurement measure_distance(Point a, Point b, const RadioParams& radio, Stream& rng) {
  const double noise = radio.shadowing_sigma * rng.normal();
  DistanceMeasurement m;
  m.true_distance = distance(a, b);
  m.estimated_distance = distance_from_rssi(rssi_from_distance(m.true_distance, radio, noise), radio);
  return m;
}

}  // namespace wsnloc
