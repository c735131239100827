// Independent reference computations for tests. Nothing here calls into the
// estimator code paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "wsnloc/geometry.hpp"
#include "wsnloc/localization.hpp"

namespace wsnloc::oracle {

/// Sum of squared range residuals, evaluated directly.
inline double ssr(double x, double y, std::span<const BeaconFix> fixes) {
  double s = 0.0;
  for (const auto& f : fixes) {
    const double dx = x - f.beacon_position.x;
    const double dy = y - f.beacon_position.y;
    const double r = std::sqrt(dx * dx + dy * dy) - f.estimated_distance;
    s += r * r;
  }
  return s;
}

inline double rms(double x, double y, std::span<const BeaconFix> fixes) {
  return std::sqrt(ssr(x, y, fixes) / static_cast<double>(fixes.size()));
}

struct GridResult {
  Point best_1mm;     // minimizer on the 1 mm lattice
  double rms_1mm = 0.0;
  Point best;         // after zooming down to `finest` spacing
  double rms_best = 0.0;
};

namespace detail {

struct Cand {
  double x, y, v;
};

inline Cand search_window(double cx, double cy, double half, double step, std::span<const BeaconFix> f,
                          double xmin, double ymin, double xmax, double ymax) {
  Cand best{cx, cy, ssr(cx, cy, f)};
  const long n = std::lround(half / step);
  for (long i = -n; i <= n; ++i) {
    const double x = cx + static_cast<double>(i) * step;
    if (x < xmin - 1e-12 || x > xmax + 1e-12) continue;
    for (long j = -n; j <= n; ++j) {
      const double y = cy + static_cast<double>(j) * step;
      if (y < ymin - 1e-12 || y > ymax + 1e-12) continue;
      const double v = ssr(x, y, f);
      if (v < best.v) best = {x, y, v};
    }
  }
  return best;
}

}  // namespace detail

/// Brute-force minimizer of the range residuals over [0,width] x [0,height].
/// A full 1 cm lattice locates every basin; its five best local minima are
/// searched exhaustively on a 1 mm lattice, and the winner is then zoomed by
/// factors of ten down to `finest` meters.
inline GridResult grid_minimize(std::span<const BeaconFix> fixes, double width, double height,
                                double finest = 1e-8) {
  const double coarse = 0.01;
  const long nx = std::lround(width / coarse);
  const long ny = std::lround(height / coarse);
  std::vector<double> v(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  auto at = [&](long i, long j) -> double& { return v[static_cast<std::size_t>(i * (ny + 1) + j)]; };
  for (long i = 0; i <= nx; ++i)
    for (long j = 0; j <= ny; ++j) at(i, j) = ssr(i * coarse, j * coarse, fixes);

  std::vector<detail::Cand> minima;
  for (long i = 0; i <= nx; ++i) {
    for (long j = 0; j <= ny; ++j) {
      const double c = at(i, j);
      bool is_min = true;
      for (long di = -1; di <= 1 && is_min; ++di)
        for (long dj = -1; dj <= 1; ++dj) {
          const long a = i + di, b = j + dj;
          if ((di || dj) && a >= 0 && a <= nx && b >= 0 && b <= ny && at(a, b) < c) {
            is_min = false;
            break;
          }
        }
      if (is_min) minima.push_back({i * coarse, j * coarse, c});
    }
  }
  std::sort(minima.begin(), minima.end(), [](auto& a, auto& b) { return a.v < b.v; });
  if (minima.size() > 5) minima.resize(5);

  detail::Cand best{0, 0, INFINITY};
  for (const auto& m : minima) {
    auto c = detail::search_window(m.x, m.y, 2 * coarse, 0.001, fixes, 0, 0, width, height);
    if (c.v < best.v) best = c;
  }
  GridResult out;
  out.best_1mm = {best.x, best.y};
  out.rms_1mm = rms(best.x, best.y, fixes);

  for (double step = 1e-4; step >= finest * 0.999; step /= 10) {
    best = detail::search_window(best.x, best.y, 20 * step, step, fixes, 0, 0, width, height);
  }
  out.best = {best.x, best.y};
  out.rms_best = rms(best.x, best.y, fixes);
  return out;
}

/// The centroid equation evaluated term by term in long double.
inline Point direct_centroid(std::span<const BeaconFix> fixes, double g) {
  long double num_x = 0, num_y = 0, den = 0;
  for (const auto& f : fixes) {
    const long double w = 1.0L / std::pow(static_cast<long double>(f.estimated_distance),
                                          static_cast<long double>(g));
    num_x += w * f.beacon_position.x;
    num_y += w * f.beacon_position.y;
    den += w;
  }
  return {static_cast<double>(num_x / den), static_cast<double>(num_y / den)};
}

/// True when p lies in the convex hull of the fix positions (with tolerance).
/// Uses the monotone-chain hull and a signed-area test per edge.
inline bool in_convex_hull(Point p, std::span<const BeaconFix> fixes, double tol = 1e-9) {
  std::vector<Point> pts;
  for (const auto& f : fixes) pts.push_back(f.beacon_position);
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == 1) return std::hypot(p.x - pts[0].x, p.y - pts[0].y) <= tol;

  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);

  if (hull.size() == 2) {
    // Degenerate hull: a segment.
    const Point a = hull[0], b = hull[1];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (std::abs(cross(a, b, p)) / len > tol) return false;
    const double t = ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / (len * len);
    return t >= -tol && t <= 1 + tol;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point a = hull[i], b = hull[(i + 1) % hull.size()];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (cross(a, b, p) / len < -tol) return false;
  }
  return true;
}

/// Random fix set with exact distances to `truth`; rejects near-collinear
/// layouts (every triangle under `min_area`).
inline std::vector<BeaconFix> exact_fixes(std::mt19937_64& rng, Point truth, int count, double extent,
                                          double min_area = 1.0) {
  std::uniform_real_distribution<double> u(0.0, extent);
  while (true) {
    std::vector<BeaconFix> fixes;
    for (int i = 0; i < count; ++i) {
      BeaconFix f;
      f.beacon_position = {u(rng), u(rng)};
      f.estimated_distance = distance(f.beacon_position, truth);
      f.source_id = "b" + std::to_string(i);
      fixes.push_back(f);
    }
    bool too_close = false;
    for (const auto& f : fixes) too_close |= f.estimated_distance < 1e-3;
    if (!too_close && max_triangle_area(fixes) >= min_area) return fixes;
  }
}

}  // namespace wsnloc::oracle
