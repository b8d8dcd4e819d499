#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "alexlab/hyperbolic/hyperplane.hpp"
#include "alexlab/surfaces/surface.hpp"

namespace alexlab::stability {

using hyperbolic::Hyperplane;
using hyperbolic::Point;
using hyperbolic::TangentVector;

/// Two of the critical hyperplanes are disjoint, so they have no common
/// point. `first` and `second` index the offending pair; osc_H is attached
/// when known.
class NonIntersectingPlanes : public std::runtime_error {
 public:
  NonIntersectingPlanes(int first, int second, double osc_H = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error("approximate_center: hyperplanes " + std::to_string(first) + " and " +
                           std::to_string(second) + " do not intersect" +
                           (std::isnan(osc_H) ? std::string() : " (osc_H = " + std::to_string(osc_H) + ")")),
        first(first),
        second(second),
        osc_H(osc_H) {}
  int first;
  int second;
  double osc_H;
};

struct CenterResult {
  Point O;
  std::vector<double> residuals;  // d(O, pi_i)
  double max_residual = 0.0;
  int iterations = 0;
};

/// Distance from O to a hyperplane (to its foot point).
inline double plane_distance(const Point& O, const Hyperplane& pi) { return std::abs(pi.signed_distance(O)); }

/// Least-squares point of the hyperplanes: minimizes sum d(O, pi_i)^2 by
/// Gauss-Newton steps in orthonormal coordinates, starting at `start`.
inline CenterResult approximate_center(const std::vector<Hyperplane>& planes, const Point& start) {
  if (planes.empty()) throw std::invalid_argument("approximate_center: no hyperplanes");
  for (std::size_t i = 0; i < planes.size(); ++i)
    for (std::size_t j = i + 1; j < planes.size(); ++j)
      if (!hyperbolic::intersects(planes[i], planes[j])) throw NonIntersectingPlanes(static_cast<int>(i), static_cast<int>(j));
  const int n = start.dim();
  const int m = static_cast<int>(planes.size());
  CenterResult out{start, {}, 0.0, 0};
  for (; out.iterations < 200; ++out.iterations) {
    Eigen::MatrixXd J(m, n);
    Eigen::VectorXd r(m);
    for (int i = 0; i < m; ++i) {
      r(i) = planes[i].signed_distance(out.O);
      const Vec g = planes[i].normal_at(out.O).v / out.O.height();
      for (int k = 0; k < n; ++k) J(i, k) = g[k];
    }
    const Eigen::VectorXd xi = J.colPivHouseholderQr().solve(-r);
    Vec step(n);
    for (int k = 0; k < n; ++k) step[k] = xi(k) * out.O.height();
    out.O = hyperbolic::exp_map(TangentVector{out.O, step});
    if (xi.norm() < 1e-13) break;
  }
  for (const Hyperplane& p : planes) out.residuals.push_back(plane_distance(out.O, p));
  out.max_residual = *std::max_element(out.residuals.begin(), out.residuals.end());
  return out;
}

struct Radii {
  double r = 0.0;
  double R = 0.0;
  double gap() const { return R - r; }
};

/// Inradius and circumradius about O from sampled surface points.
inline Radii radii(const std::vector<surfaces::Sample>& samples, const Point& O) {
  if (samples.empty()) throw std::invalid_argument("radii: empty sample set");
  Radii out{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& s : samples) {
    const double d = hyperbolic::dist(O, s.p);
    out.r = std::min(out.r, d);
    out.R = std::max(out.R, d);
  }
  return out;
}

}  // namespace alexlab::stability
