#pragma once

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "alexlab/core/parallel.hpp"
#include "alexlab/hyperbolic/geodesic.hpp"
#include "alexlab/moving_planes/sample_graph.hpp"
#include "alexlab/surfaces/surface.hpp"

namespace alexlab::stability {

/// A normal ray of the sphere meets the surface more than once.
class NotAGraph : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// S written over the geodesic sphere dB_r(O): F(x) = exp_x(Psi(x) N_x),
/// N_x the outward unit normal (the radial direction from O). Psi(x) is
/// the distance from O to S along the ray through x, minus r.
class SphereGraph {
 public:
  SphereGraph(const surfaces::Surface& s, const Point& O, double r, double horizon)
      : s_(s), O_(O), r_(r), horizon_(horizon) {}

  /// Psi at the point of dB_r(O) in the unit direction u (Euclidean unit
  /// vector at O, scaled to a hyperbolic unit vector internally).
  double operator()(const Vec& u) const {
    const Vec dir = u * (O_.height() / norm(u));
    auto f = [&](double t) { return s_.level(hyperbolic::exp_map(TangentVector{O_, dir * t}).x); };
    const int steps = 400;
    const double dt = horizon_ / steps;
    double prev = f(0.0);
    if (prev >= 0) throw NotAGraph("sphere_graph: O is not inside the surface");
    int crossings = 0;
    double a = 0.0;
    double b = 0.0;
    double fa = 0.0;
    double fb = 0.0;
    for (int k = 1; k <= steps; ++k) {
      const double t = k * dt;
      const double v = f(t);
      if ((prev < 0) != (v < 0)) {
        if (++crossings == 1) {
          a = t - dt;
          b = t;
          fa = prev;
          fb = v;
        }
      }
      prev = v;
    }
    if (crossings != 1) throw NotAGraph("sphere_graph: a normal ray meets the surface " + std::to_string(crossings) + " times");
    std::uintmax_t iters = 100;
    const auto br =
        boost::math::tools::toms748_solve(f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (br.first + br.second) - r_;
  }

  const Point& O() const { return O_; }
  double r() const { return r_; }

 private:
  surfaces::Surface s_;
  Point O_;
  double r_;
  double horizon_;
};

struct SphereGraphReport {
  double sup_norm = 0.0;    // max |Psi|
  double lipschitz = 0.0;   // max |Psi(x) - Psi(y)| / d(x, y) over neighboring x, y
  int count = 0;
};

/// Evaluates Psi on quasi-uniform directions; the Lipschitz estimate uses
/// divided differences between neighboring directions on dB_r(O).
inline SphereGraphReport sphere_graph(const surfaces::Surface& s, const Point& O, double r, int count = 2000,
                                      int threads = 1) {
  const int n = s.dim();
  double reach = 0.0;
  for (const Vec& u : surfaces::sphere_directions(n, 500)) reach = std::max(reach, hyperbolic::dist(O, s.position(u)));
  const SphereGraph psi(s, O, r, 2.0 * reach + 1.0);
  const std::vector<Vec> dirs = surfaces::sphere_directions(n, count);
  std::vector<double> val(dirs.size());
  parallel_for(static_cast<int>(dirs.size()), threads, [&](int i) { val[i] = psi(dirs[i]); });
  const double angular = std::pow(surfaces::unit_sphere_area(n) / count, 1.0 / (n - 1));
  const moving_planes::SampleGraph g(dirs, 2.5 * angular);
  SphereGraphReport out;
  out.count = count;
  for (int i = 0; i < static_cast<int>(dirs.size()); ++i) {
    out.sup_norm = std::max(out.sup_norm, std::abs(val[i]));
    for (int j : g.neighbors(i)) {
      // Distance on dB_r(O) between the two points (chord in H^n).
      const Point xi = hyperbolic::exp_map(TangentVector{O, dirs[i] * (r * O.height())});
      const Point xj = hyperbolic::exp_map(TangentVector{O, dirs[j] * (r * O.height())});
      const double d = hyperbolic::dist(xi, xj);
      if (d > 0) out.lipschitz = std::max(out.lipschitz, std::abs(val[i] - val[j]) / d);
    }
  }
  return out;
}

}  // namespace alexlab::stability
