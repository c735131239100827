#include "wsnloc/localization.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "wsnloc/error.hpp"

namespace wsnloc {

std::string_view to_string(MethodUsed m) {
  switch (m) {
    case MethodUsed::Trilaterate:
      return "trilaterate";
    case MethodUsed::WeightedCentroid:
      return "weighted_centroid";
    case MethodUsed::None:
      return "none";
  }
  return "none";
}

PositionEstimate weighted_centroid(std::span<const BeaconFix> fixes, double g) {
  if (fixes.empty()) throw Error(ErrorKind::NoFixes, "weighted centroid needs at least one fix");

  double wsum = 0.0, x = 0.0, y = 0.0;
  for (const auto& f : fixes) {
    const double w = 1.0 / std::pow(f.estimated_distance, g);
    wsum += w;
    x += w * f.beacon_position.x;
    y += w * f.beacon_position.y;
  }
  PositionEstimate est;
  est.position = {x / wsum, y / wsum};
  est.fix_count = static_cast<int>(fixes.size());
  est.method_used = MethodUsed::WeightedCentroid;
  return est;
}

double max_triangle_area(std::span<const BeaconFix> fixes) {
  double best = 0.0;
  const std::size_t n = fixes.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        best = std::max(best, 0.5 * std::abs(cross(fixes[i].beacon_position, fixes[j].beacon_position,
                                                   fixes[k].beacon_position)));
  return best;
}

double rms_range_residual(Point p, std::span<const BeaconFix> fixes) {
  if (fixes.empty()) return 0.0;
  double ss = 0.0;
  for (const auto& f : fixes) {
    const double r = distance(p, f.beacon_position) - f.estimated_distance;
    ss += r * r;
  }
  return std::sqrt(ss / static_cast<double>(fixes.size()));
}

namespace {

Point linearized_solution(std::span<const BeaconFix> fixes) {
  const auto& v0 = fixes[0].beacon_position;
  const double d0 = fixes[0].estimated_distance;
  const Eigen::Index rows = static_cast<Eigen::Index>(fixes.size()) - 1;

  // Work relative to the first beacon to keep the system well scaled.
  Eigen::MatrixXd a(rows, 2);
  Eigen::VectorXd b(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& f = fixes[static_cast<std::size_t>(r) + 1];
    const double dx = f.beacon_position.x - v0.x;
    const double dy = f.beacon_position.y - v0.y;
    a(r, 0) = 2.0 * dx;
    a(r, 1) = 2.0 * dy;
    b(r) = d0 * d0 - f.estimated_distance * f.estimated_distance + dx * dx + dy * dy;
  }
  const Eigen::Vector2d sol = a.colPivHouseholderQr().solve(b);
  return {v0.x + sol(0), v0.y + sol(1)};
}

// Returns false when the normal matrix is singular (e.g. p sits on a beacon).
bool gauss_newton_direction(Point p, std::span<const BeaconFix> fixes, Eigen::Vector2d& step) {
  Eigen::Matrix2d jtj = Eigen::Matrix2d::Zero();
  Eigen::Vector2d jtr = Eigen::Vector2d::Zero();
  for (const auto& f : fixes) {
    const double dist = distance(p, f.beacon_position);
    if (dist < 1e-12) return false;
    const Eigen::Vector2d j((p.x - f.beacon_position.x) / dist, (p.y - f.beacon_position.y) / dist);
    const double r = dist - f.estimated_distance;
    jtj += j * j.transpose();
    jtr += j * r;
  }
  Eigen::LDLT<Eigen::Matrix2d> ldlt(jtj);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || std::abs(jtj.determinant()) < 1e-300)
    return false;
  step = -ldlt.solve(jtr);
  return step.allFinite();
}

}  // namespace

PositionEstimate trilaterate(std::span<const BeaconFix> fixes, int refine_iterations,
                             double collinearity_epsilon) {
  if (fixes.size() < 3)
    throw Error(ErrorKind::InsufficientFixes,
                "trilateration needs at least 3 fixes, got " + std::to_string(fixes.size()));
  if (max_triangle_area(fixes) < collinearity_epsilon)
    throw Error(ErrorKind::DegenerateGeometry, "beacon positions are collinear");

  Point p = linearized_solution(fixes);
  double rms = rms_range_residual(p, fixes);

  for (int it = 0; it < refine_iterations; ++it) {
    Eigen::Vector2d dir;
    if (!gauss_newton_direction(p, fixes, dir)) break;
    double scale = 1.0;
    bool improved = false;
    for (int halving = 0; halving <= 10; ++halving, scale *= 0.5) {
      const Point trial{p.x + scale * dir(0), p.y + scale * dir(1)};
      const double trial_rms = rms_range_residual(trial, fixes);
      if (trial_rms < rms) {
        p = trial;
        rms = trial_rms;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }

  PositionEstimate est;
  est.position = p;
  est.fix_count = static_cast<int>(fixes.size());
  est.method_used = MethodUsed::Trilaterate;
  est.residual = rms;
  return est;
}

PositionEstimate localize(const PositionEstimate& prior, std::span<const BeaconFix> fixes,
                          const EstimatorParams& params) {
  std::vector<BeaconFix> trusted;
  trusted.reserve(fixes.size());
  for (const auto& f : fixes) {
    if (f.source_kind == Role::Anchor || f.reported_uncertainty <= params.tag_trust_max_uncertainty)
      trusted.push_back(f);
  }

  if (trusted.empty()) {
    PositionEstimate est;
    est.position = prior.position;
    est.method_used = MethodUsed::None;
    return est;
  }

  const bool usable = trusted.size() >= 3 &&
                      max_triangle_area(trusted) >= params.collinearity_epsilon;
  if (usable && params.method == EstimatorMethod::Trilaterate)
    return trilaterate(trusted, params.refine_iterations, params.collinearity_epsilon);

  PositionEstimate est = weighted_centroid(trusted, params.centroid_degree_g);
  est.residual = 0.0;
  return est;
}

}  // namespace wsnloc
