#pragma once

#include <span>
#include <string>
#include <string_view>

#include "wsnloc/geometry.hpp"
#include "wsnloc/radio.hpp"
#include "wsnloc/scenario.hpp"

namespace wsnloc {

/// A reference position plus the measured distance to it.
struct BeaconFix {
  Point beacon_position;
  double estimated_distance = 0.0;
  std::string source_id;
  Role source_kind = Role::Anchor;
  /// Uncertainty the source reports for its own position; 0 for anchors.
  double reported_uncertainty = 0.0;
};

enum class MethodUsed { Trilaterate, WeightedCentroid, None };

std::string_view to_string(MethodUsed m);

struct PositionEstimate {
  Point position;
  int fix_count = 0;
  MethodUsed method_used = MethodUsed::None;
  double residual = 0.0;  // RMS range residual, meters
};

/// Inverse-distance weighted centroid: sum(w_j V_j) / sum(w_j), w_j = 1 / d_j^g.
/// Throws Error(NoFixes) on an empty list.
PositionEstimate weighted_centroid(std::span<const BeaconFix> fixes, double g);

/// Largest |triangle area| over all fix triples, square meters.
double max_triangle_area(std::span<const BeaconFix> fixes);

/// RMS of |p - V_j| - d_j.
double rms_range_residual(Point p, std::span<const BeaconFix> fixes);

/// Linearized least squares (each circle equation minus the first) followed by
/// up to `refine_iterations` damped Gauss-Newton steps on the range residuals.
/// A step is taken only if it lowers the RMS residual; otherwise it is halved,
/// at most ten times, after which refinement stops.
/// Throws Error(InsufficientFixes) for fewer than three fixes and
/// Error(DegenerateGeometry) when every fix triple spans less than
/// `collinearity_epsilon` square meters.
PositionEstimate trilaterate(std::span<const BeaconFix> fixes, int refine_iterations,
                             double collinearity_epsilon);

/// Trust-filters tag fixes, then runs the configured estimator with the
/// fallback ladder trilaterate -> weighted centroid -> prior. Never throws.
PositionEstimate localize(const PositionEstimate& prior, std::span<const BeaconFix> fixes,
                          const EstimatorParams& params);

}  // namespace wsnloc
