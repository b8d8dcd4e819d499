#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "alexlab/hyperbolic/hyperplane.hpp"
#include "alexlab/hyperbolic/isometry.hpp"
#include "alexlab/hyperbolic/models.hpp"
#include "alexlab/hyperbolic/transport.hpp"

namespace alexlab::hyperbolic {

/// Horizontal coordinates uniform in [-2, 2], height log-uniform in [e^-2, e^2].
template <class Rng>
Point random_half_space_point(Rng& rng, int n) {
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  Vec x(n);
  for (int i = 0; i + 1 < n; ++i) x[i] = uni(rng);
  x.back() = std::exp(uni(rng));
  return half_space_point(x);
}

template <class Rng>
TangentVector random_tangent(Rng& rng, const Point& at) {
  std::normal_distribution<double> gauss;
  Vec v(at.dim());
  for (auto& c : v) c = gauss(rng) * at.height();
  return TangentVector{at, v};
}

/// Worst scaled residual of one property over randomized cases.
struct PropertyCheck {
  std::string id;
  int cases = 0;
  double worst = 0.0;
  double tol = 0.0;

  bool passed() const { return worst <= tol; }
  void record(double r) {
    ++cases;
    worst = std::max(worst, r);
  }
};

/// Metric axioms, isometry invariance, reflections, model round trip and
/// exp/log, each on `cases` random inputs in dimensions 2..4.
inline std::vector<PropertyCheck> core_properties(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  PropertyCheck nonneg{"metric.nonnegativity", 0, 0.0, 0.0};
  PropertyCheck sym{"metric.symmetry", 0, 0.0, 1e-10};
  PropertyCheck tri{"metric.triangle", 0, 0.0, 1e-10};
  PropertyCheck iso{"isometry.invariance", 0, 0.0, 1e-10};
  PropertyCheck inv{"reflection.involution", 0, 0.0, 1e-12};
  PropertyCheck fix{"reflection.fixes_plane", 0, 0.0, 1e-12};
  PropertyCheck refl{"reflection.isometry", 0, 0.0, 1e-11};
  PropertyCheck trip{"models.round_trip", 0, 0.0, 1e-12};
  PropertyCheck mdist{"models.distance", 0, 0.0, 1e-10};
  PropertyCheck expl{"exp_log.round_trip", 0, 0.0, 1e-9};
  for (int i = 0; i < cases; ++i) {
    const int n = 2 + i % 3;
    const Point a = random_half_space_point(rng, n);
    const Point b = random_half_space_point(rng, n);
    const Point c = random_half_space_point(rng, n);
    const double ab = dist(a, b);
    nonneg.record(std::max(0.0, -ab));
    sym.record(std::abs(ab - dist(b, a)) / (1.0 + ab));
    tri.record(std::max(0.0, dist(a, c) - ab - dist(b, c)));

    const Isometry phi = random_isometry(rng, n);
    iso.record(std::abs(dist(phi(a), phi(b)) - ab) / (1.0 + ab));

    Vec w(n);
    for (auto& x : w) x = gauss(rng);
    if (i % 10 == 0) w.back() = 0.0;
    const Hyperplane pi = Hyperplane::through(c, w);
    inv.record(max_abs_diff(pi.reflect(pi.reflect(a)).x, a.x) / (1.0 + norm(a.x)));
    fix.record(max_abs_diff(pi.reflect(c).x, c.x) / (1.0 + norm(c.x)));
    refl.record(std::abs(dist(pi.reflect(a), pi.reflect(b)) - ab) / (1.0 + ab));

    trip.record(max_abs_diff(to_halfspace(to_ball(a)).x, a.x) / (1.0 + norm2(a.x) / a.height()));
    mdist.record(std::abs(dist(to_ball(a), to_ball(b)) - ab) / (1.0 + ab));

    expl.record(max_abs_diff(exp_map(log_map(a, b)).x, b.x) / (1.0 + norm(b.x)));
  }
  return {nonneg, sym, tri, iso, inv, fix, refl, trip, mdist, expl};
}

/// Differential oracle for parallel transport: closed form against RK4 with
/// `steps` steps, orthonormality of transported frames, and the worked case
/// q = e_{n-1} + e_n, p = e_n, v = e_{n-1} with image 0.6 e_{n-1} + 0.8 e_n.
inline std::vector<PropertyCheck> transport_properties(int cases, std::uint64_t seed, int steps = 400) {
  std::mt19937_64 rng(seed);
  PropertyCheck ode{"transport.ode_discrepancy", 0, 0.0, 1e-6};
  PropertyCheck frame{"transport.frame_orthonormality", 0, 0.0, 1e-8};
  PropertyCheck worked{"transport.worked_case", 0, 0.0, 1e-9};
  for (int i = 0; i < cases; ++i) {
    const int n = 2 + i % 3;
    const Point q = random_half_space_point(rng, n);
    const Point p = random_half_space_point(rng, n);
    const TangentVector v = random_tangent(rng, q);
    const TangentVector a = parallel_transport(q, p, v);
    const TangentVector b = parallel_transport_ode(q, p, v, steps);
    ode.record(hyperbolic_norm(p, a.v - b.v) / hyperbolic_norm(v));
    std::vector<Vec> images;
    for (int k = 0; k < n; ++k) images.push_back(parallel_transport(q, p, TangentVector{q, Vec::unit(n, k) * q.height()}).v);
    double r = 0.0;
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) r = std::max(r, std::abs(inner(p, images[s], images[t]) - (s == t ? 1.0 : 0.0)));
    frame.record(r);
  }
  for (int n = 2; n <= 4; ++n) {
    Vec qx(n);
    qx[n - 2] = 1.0;
    qx[n - 1] = 1.0;
    const Point q = half_space_point(qx);
    const TangentVector v{q, Vec::unit(n, n - 2)};
    Vec expected(n);
    expected[n - 2] = 0.6;
    expected[n - 1] = 0.8;
    worked.record(max_abs_diff(parallel_transport(q, base_point(n), v).v, expected));
    worked.record(max_abs_diff(parallel_transport_ode(q, base_point(n), v, 256).v, expected));
  }
  return {ode, frame, worked};
}

}  // namespace alexlab::hyperbolic
