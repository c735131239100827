#pragma once

#include "wsnloc/geometry.hpp"
#include "wsnloc/rng.hpp"
#include "wsnloc/scenario.hpp"

namespace wsnloc {

/// Per-step multiplier applied to a tag's uncertainty given its neighbor count:
/// growth_factor_low for k <= 2, growth_factor_three for k == 3, and
/// exp(-decay_alpha * (k - 3)) for k >= 4.
double uncertainty_factor(int neighbor_count, const DynamicsParams& params);

/// clamp(u * uncertainty_factor(k), u_min, u_max)
double update_uncertainty(double u, int neighbor_count, const DynamicsParams& params);

struct TagMotionState {
  Point position;
  double heading = 0.0;  // radians, [-pi, pi)
  Rect territory;

  friend bool operator==(const TagMotionState&, const TagMotionState&) = default;
};

/// Wraps an angle into [-pi, pi).
double wrap_angle(double a);

/// Heading-persistent random walk confined to the territory. The heading takes
/// a Gaussian kick (Box-Muller over two uniform draws), the tag advances
/// `speed` meters, and any coordinate that leaves the territory is mirrored
/// about the violated edge with the matching heading component negated.
TagMotionState step_mobility(const TagMotionState& state, const DynamicsParams& params, Stream& rng);

}  // namespace wsnloc
