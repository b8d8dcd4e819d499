#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "alexlab/surfaces/graph.hpp"

namespace alexlab::surfaces {

inline double osc_H(const std::vector<Sample>& samples) {
  if (samples.empty()) throw std::invalid_argument("osc_H: empty sample set");
  double lo = samples.front().H;
  double hi = lo;
  for (const Sample& s : samples) {
    lo = std::min(lo, s.H);
    hi = std::max(hi, s.H);
  }
  return hi - lo;
}

inline double area(const std::vector<Sample>& samples) {
  if (samples.empty()) throw std::invalid_argument("area: empty sample set");
  double a = 0.0;
  for (const Sample& s : samples) a += s.weight;
  return a;
}

/// Largest pairwise distance among the samples (a lower bound for the
/// extrinsic diameter that can only grow when samples are added).
inline double diameter(const std::vector<Sample>& samples, int threads = 1) {
  if (samples.empty()) throw std::invalid_argument("diameter: empty sample set");
  const int n = static_cast<int>(samples.size());
  std::vector<double> row(n, 0.0);
  parallel_for(n, threads, [&](int i) {
    double m = 0.0;
    for (int j = i + 1; j < n; ++j) m = std::max(m, hyperbolic::dist(samples[i].p, samples[j].p));
    row[i] = m;
  });
  return *std::max_element(row.begin(), row.end());
}

struct TouchingRadius {
  double rho = 0.0;             // reported estimate
  double curvature_bound = 0.0;  // arccoth(max |kappa|), infinite if max |kappa| <= 1
  double clearance_bound = 0.0;  // sampled two-ball test
};

/// Touching-ball radius estimate. The curvature part is arccoth(max|kappa|):
/// a hyperbolic ball of radius rho has principal curvatures coth(rho). The
/// global part bisects, at up to `probes` strided samples, the largest
/// radius for which the interior and exterior tangent balls contain no
/// surface sample.
inline TouchingRadius touching_radius(const std::vector<Sample>& samples, int probes = 100, int threads = 1) {
  if (samples.empty()) throw std::invalid_argument("touching_radius: empty sample set");
  double kmax = 0.0;
  for (const Sample& s : samples) {
    if (s.kappa.size() == 0) throw std::invalid_argument("touching_radius: missing curvature data");
    for (double k : s.kappa) {
      if (!std::isfinite(k)) throw std::invalid_argument("touching_radius: non-finite curvature");
      kmax = std::max(kmax, std::abs(k));
    }
  }
  TouchingRadius out;
  out.curvature_bound = kmax > 1.0 ? std::atanh(1.0 / kmax) : std::numeric_limits<double>::infinity();

  const int n = static_cast<int>(samples.size());
  const int count = std::min(probes, n);
  const double cap = std::isfinite(out.curvature_bound) ? out.curvature_bound : 10.0;
  auto clear = [&](const Sample& s, double rho, double side) {
    const Point c = hyperbolic::exp_map(TangentVector{s.p, s.normal.v * (side * rho)});
    const double tol = 1e-9 * (1.0 + rho);
    for (const Sample& q : samples) {
      if (hyperbolic::dist(c, q.p) < rho - tol) return false;
    }
    return true;
  };
  std::vector<double> best(count, cap);
  parallel_for(count, threads, [&](int k) {
    const Sample& s = samples[static_cast<std::size_t>(k) * n / count];
    for (double side : {1.0, -1.0}) {
      double lo = 0.0;
      double hi = best[k];
      if (clear(s, hi, side)) continue;
      while (hi - lo > 1e-9 * hi) {
        const double mid = 0.5 * (lo + hi);
        (clear(s, mid, side) ? lo : hi) = mid;
      }
      best[k] = lo;
    }
  });
  out.clearance_bound = *std::min_element(best.begin(), best.end());
  out.rho = std::min(out.curvature_bound, out.clearance_bound);
  return out;
}

/// Fitted constant c with |B_r(z) cap S| >= c r^{n-1} for r <= delta, from
/// the sampled area inside extrinsic balls around strided sample points.
inline double fitted_ball_constant(const std::vector<Sample>& samples, double delta, int probes = 50) {
  const int n = static_cast<int>(samples.size());
  const int kappa = samples.front().p.dim() - 1;
  double c = std::numeric_limits<double>::infinity();
  for (int k = 0; k < std::min(probes, n); ++k) {
    const Point& z = samples[static_cast<std::size_t>(k) * n / std::min(probes, n)].p;
    for (double f : {0.25, 0.5, 1.0}) {
      const double r = f * delta;
      double a = 0.0;
      for (const Sample& q : samples)
        if (hyperbolic::dist(z, q.p) < r) a += q.weight;
      c = std::min(c, a / std::pow(r, kappa));
    }
  }
  return c;
}

/// Diameter bound delta N_delta with N_delta = max(4, 2^k |M| / (c delta^k)),
/// k = n - 1.
inline double diameter_bound(double surface_area, int n, double c, double delta) {
  const int k = n - 1;
  const double nd = std::max(4.0, std::pow(2.0, k) * surface_area / (c * std::pow(delta, k)));
  return delta * nd;
}

}  // namespace alexlab::surfaces
