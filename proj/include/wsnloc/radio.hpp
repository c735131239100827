#pragma once

#include <map>
#include <set>
#include <string>

#include "wsnloc/geometry.hpp"
#include "wsnloc/rng.hpp"
#include "wsnloc/scenario.hpp"

namespace wsnloc {

enum class Role { Anchor, Tag };

/// Symmetric, irreflexive adjacency keyed by sensor id. Every sensor passed to
/// neighbor_graph has an entry, possibly empty.
class LinkSet {
 public:
  void add_sensor(const std::string& id) { adj_[id]; }
  void link(const std::string& a, const std::string& b) {
    adj_[a].insert(b);
    adj_[b].insert(a);
  }

  bool linked(const std::string& a, const std::string& b) const {
    auto it = adj_.find(a);
    return it != adj_.end() && it->second.contains(b);
  }
  const std::set<std::string>& neighbors(const std::string& id) const;
  const std::map<std::string, std::set<std::string>>& adjacency() const { return adj_; }

  friend bool operator==(const LinkSet&, const LinkSet&) = default;

 private:
  std::map<std::string, std::set<std::string>> adj_;
};

/// Links every pair within radio.range (inclusive) of each other's true
/// position. Tag-tag pairs are linked only when tag_links_enabled.
LinkSet neighbor_graph(const std::map<std::string, Point>& true_positions, const RadioParams& radio,
                       const std::map<std::string, Role>& roles, bool tag_links_enabled);

/// Log-distance path loss: P(d) = P0 - 10 n log10(d / d0) + noise.
/// Distances below d0/100 are clamped up to d0/100.
double rssi_from_distance(double d, const RadioParams& radio, double noise_db);

/// Inverse of the path-loss model, clamped to [0.01, 2 * range].
double distance_from_rssi(double power_db, const RadioParams& radio);

struct DistanceMeasurement {
  std::string from_id;
  std::string to_id;
  double true_distance = 0.0;
  double estimated_distance = 0.0;
};

/// RSSI round trip with one Gaussian shadowing draw from `rng`. The draw is
/// consumed even when shadowing_sigma is zero.
DistanceMeasurement measure_distance(Point a, Point b, const RadioParams& radio, Stream& rng);

}  // namespace wsnloc
