#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "alexlab/core/parallel.hpp"
#include "alexlab/hyperbolic/geodesic.hpp"
#include "alexlab/surfaces/surface.hpp"

namespace alexlab::stability {

struct CenterOfMassOptions {
  int samples = 100000;
  std::uint64_t seed = 1;
  int max_iterations = 100;
  int threads = 1;
};

struct CenterOfMassResult {
  Point O_cm;
  double gradient_norm = 0.0;   // |grad P| at termination
  double standard_error = 0.0;  // Monte Carlo standard error of grad P
  int iterations = 0;
  int samples = 0;
};

/// Points uniformly distributed in the hyperbolic volume of the region
/// enclosed by a star-shaped surface. In geodesic polar coordinates about
/// the surface center the volume element is sinh^{n-1}(t) dt du, so we draw
/// (u, t) uniformly on S^{n-1} x [0, t_max] and accept with probability
/// [t <= r(u)] sinh^{n-1}(t) / sinh^{n-1}(t_max).
inline std::vector<Point> uniform_interior_points(const surfaces::Surface& s, int count, std::uint64_t seed) {
  if (count <= 0) throw std::invalid_argument("uniform_interior_points: count must be positive");
  const int n = s.dim();
  double tmax = 0.0;
  for (const Vec& u : surfaces::sphere_directions(n, 2000, seed)) tmax = std::max(tmax, s.radial(u));
  tmax *= 1.05;
  const double top = std::pow(std::sinh(tmax), n - 1);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<Point> out;
  out.reserve(count);
  long long attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 1000LL * count) throw std::runtime_error("uniform_interior_points: sampler starvation");
    Vec u(n);
    for (auto& x : u) x = gauss(rng);
    u /= norm(u);
    const double t = tmax * uni(rng);
    const double accept = uni(rng);
    if (t > s.radial(u)) continue;
    if (accept * top > std::pow(std::sinh(t), n - 1)) continue;
    out.push_back(Point{s.from_frame(u * std::tanh(0.5 * t)), hyperbolic::Model::HalfSpace});
  }
  return out;
}

/// Minimizer of P(p) = (2|Omega|)^{-1} int d(p, a)^2 da over the sampled
/// measure: iterate p <- exp_p(-grad P) with grad P = -mean log_p(a),
/// halving the step when P does not decrease. Stops when |grad P| is below
/// 1e-3 of the Monte Carlo standard error (so well inside 3 standard errors).
inline CenterOfMassResult center_of_mass(const std::vector<Point>& pts, const Point& seed, int max_iterations = 100,
                                         int threads = 1) {
  if (pts.empty()) throw std::invalid_argument("center_of_mass: no sample points");
  const int n = seed.dim();
  const int count = static_cast<int>(pts.size());
  auto evaluate = [&](const Point& p, Vec& mean, double& energy, double& se) {
    std::vector<Vec> logs(count);
    parallel_for(count, threads, [&](int i) { logs[i] = hyperbolic::log_map(p, pts[i]).v; });
    mean = Vec(n);
    double sq = 0.0;
    energy = 0.0;
    for (const Vec& v : logs) {
      mean += v;
      const double l2 = hyperbolic::inner(p, v, v);
      sq += l2;
      energy += 0.5 * l2;
    }
    mean /= count;
    energy /= count;
    // Standard error of the mean vector (hyperbolic norm).
    const double var = sq / count - hyperbolic::inner(p, mean, mean);
    se = std::sqrt(std::max(0.0, var) / count);
  };
  CenterOfMassResult out{seed, 0.0, 0.0, 0, count};
  Vec mean;
  double energy = 0.0;
  double se = 0.0;
  evaluate(out.O_cm, mean, energy, se);
  for (; out.iterations < max_iterations; ++out.iterations) {
    out.gradient_norm = hyperbolic::hyperbolic_norm(out.O_cm, mean);
    out.standard_error = se;
    if (out.gradient_norm < 1e-3 * se) break;
    double step = 1.0;
    bool moved = false;
    while (step > 1e-6) {
      const Point trial = hyperbolic::exp_map(TangentVector{out.O_cm, mean * step});
      Vec m2;
      double e2 = 0.0;
      double s2 = 0.0;
      evaluate(trial, m2, e2, s2);
      if (e2 <= energy) {
        out.O_cm = trial;
        mean = m2;
        energy = e2;
        se = s2;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  out.gradient_norm = hyperbolic::hyperbolic_norm(out.O_cm, mean);
  out.standard_error = se;
  if (out.gradient_norm >= 3.0 * se) throw std::runtime_error("center_of_mass: no convergence");
  return out;
}

inline CenterOfMassResult center_of_mass(const surfaces::Surface& s, const Point& seed,
                                         const CenterOfMassOptions& opt = {}) {
  return center_of_mass(uniform_interior_points(s, opt.samples, opt.seed), seed, opt.max_iterations, opt.threads);
}

}  // namespace alexlab::stability
