#include "wsnloc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wsnloc {

double uncertainty_factor(int neighbor_count, const DynamicsParams& params) {
  if (neighbor_count <= 2) return params.growth_factor_low;
  if (neighbor_count == 3) return params.growth_factor_three;
  return std::exp(-params.decay_alpha * static_cast<double>(neighbor_count - 3));
}

double update_uncertainty(double u, int neighbor_count, const DynamicsParams& params) {
  return std::clamp(u * uncertainty_factor(neighbor_count, params), params.u_min, params.u_max);
}

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(a + std::numbers::pi, two_pi);
  if (w < 0) w += two_pi;
  w -= std::numbers::pi;
  // fmod can land exactly on +pi after the shift back.
  return w >= std::numbers::pi ? -std::numbers::pi : w;
}

namespace {

// Mirrors x into [lo, hi]; returns true if an odd number of reflections happened.
bool reflect(double& x, double lo, double hi) {
  const double width = hi - lo;
  if (width <= 0) {
    const bool moved = x != lo;
    x = lo;
    return moved;
  }
  bool flipped = false;
  // Steps longer than the territory bounce more than once.
  for (int i = 0; i < 64 && (x < lo || x > hi); ++i) {
    x = x > hi ? 2.0 * hi - x : 2.0 * lo - x;
    flipped = !flipped;
  }
  x = std::clamp(x, lo, hi);
  return flipped;
}

}  // namespace

TagMotionState step_mobility(const TagMotionState& state, const DynamicsParams& params, Stream& rng) {
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  const double kick = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);

  TagMotionState next = state;
  double heading = state.heading + params.heading_sigma * kick;
  double dx = std::cos(heading);
  double dy = std::sin(heading);
  next.position.x += params.speed * dx;
  next.position.y += params.speed * dy;

  const Rect& t = state.territory;
  if (reflect(next.position.x, t.xmin, t.xmax)) dx = -dx;
  if (reflect(next.position.y, t.ymin, t.ymax)) dy = -dy;
  next.heading = wrap_angle(std::atan2(dy, dx));
  return next;
}

}  // namespace wsnloc
