#pragma once

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "alexlab/surfaces/surface.hpp"

namespace alexlab::surfaces {

/// Euclidean radius of the hyperbolic ball of radius rho centered at
/// e^{-rho} e_n, i.e. a ball through e_n tangent to the boundary direction.
inline double rho0(double rho) { return std::exp(-rho) * std::sinh(rho); }
inline double rho1(double rho) {
  const double r0 = rho0(rho);
  return (1.0 - r0) * r0;
}

/// Local graph x_n = v(x) over a ball of radius `radius` about the origin of
/// the boundary plane. Points are passed as vectors of length n - 1.
struct GraphPatch {
  int m = 0;
  double radius = 0.0;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  std::function<Mat(const Vec&)> hessian;
};

/// Hyperbolic mean curvature of the graph at (x, v(x)) with respect to the
/// upward normal:
///   H = v/(n-1) div(grad v / W) + 1/W,   W = sqrt(1 + |grad v|^2).
inline double mean_curvature_graph(const GraphPatch& patch, const Vec& x) {
  if (!(norm(x) < patch.radius)) throw std::invalid_argument("mean_curvature_graph: point outside the chart ball");
  const double v = patch.value(x);
  const Vec g = patch.gradient(x);
  const Mat h = patch.hessian(x);
  const int m = patch.m;
  const double w2 = 1.0 + norm2(g);
  const double w = std::sqrt(w2);
  double lap = 0.0;
  double ghg = 0.0;
  for (int i = 0; i < m; ++i) {
    lap += h(i, i);
    for (int j = 0; j < m; ++j) ghg += g[i] * h(i, j) * g[j];
  }
  const double div = lap / w - ghg / (w * w2);
  return v / m * div + 1.0 / w;
}

namespace detail {

/// Central differences of `f` with step h, Richardson-extrapolated with h/2.
inline Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double h) {
  const int m = x.size();
  Vec g(m);
  for (int i = 0; i < m; ++i) {
    auto d = [&](double s) {
      Vec a = x;
      Vec b = x;
      a[i] += s;
      b[i] -= s;
      return (f(a) - f(b)) / (2.0 * s);
    };
    g[i] = (4.0 * d(0.5 * h) - d(h)) / 3.0;
  }
  return g;
}

inline Mat fd_hessian(const std::function<double(const Vec&)>& f, const Vec& x, double h) {
  const int m = x.size();
  Mat out(m, m);
  const double f0 = f(x);
  auto at = [&](int i, double si, int j, double sj) {
    Vec a = x;
    a[i] += si;
    a[j] += sj;
    return f(a);
  };
  for (int i = 0; i < m; ++i) {
    auto d = [&](double s) { return (at(i, s, i, 0.0) - 2.0 * f0 + at(i, -s, i, 0.0)) / (s * s); };
    out(i, i) = (4.0 * d(0.5 * h) - d(h)) / 3.0;
    for (int j = 0; j < i; ++j) {
      auto e = [&](double s) {
        return (at(i, s, j, s) - at(i, s, j, -s) - at(i, -s, j, s) + at(i, -s, j, -s)) / (4.0 * s * s);
      };
      out(i, j) = out(j, i) = (4.0 * e(0.5 * h) - e(h)) / 3.0;
    }
  }
  return out;
}

}  // namespace detail

/// Graph patch whose derivatives come from Richardson-extrapolated central
/// differences with step h.
inline GraphPatch finite_difference_patch(int m, double radius, std::function<double(const Vec&)> value, double h) {
  GraphPatch p;
  p.m = m;
  p.radius = radius;
  p.value = value;
  p.gradient = [value, h](const Vec& x) { return detail::fd_gradient(value, x, h); };
  p.hessian = [value, h](const Vec& x) { return detail::fd_hessian(value, x, h); };
  return p;
}

/// Chart radius rho_1 for a surface, from its curvature radius (capped at 1).
inline double chart_radius(const Surface& s) { return rho1(std::min(1.0, s.curvature_radius())); }

/// Graph of phi(S) near e_n, where phi maps a surface point to e_n and its
/// inward normal to e_n. The value at x solves F(phi^{-1}(x, t)) = 0 for t
/// near 1 with a bracketing root finder.
inline GraphPatch normalized_chart(const Surface& s, const Isometry& phi, double h) {
  const int n = s.dim();
  const Isometry inv = phi.inverse();
  const double radius = chart_radius(s);
  auto value = [&s, inv, n, radius](const Vec& x) {
    auto f = [&](double t) {
      Vec z(n);
      for (int i = 0; i + 1 < n; ++i) z[i] = x[i];
      z.back() = t;
      return s.level(inv.apply(z));
    };
    double w = 0.5 * radius;
    for (int attempt = 0; attempt < 8; ++attempt, w *= 0.5) {
      const double a = 1.0 - w;
      const double b = 1.0 + w;
      const double fa = f(a);
      const double fb = f(b);
      if (fa == 0.0) return a;
      if (fb == 0.0) return b;
      if ((fa > 0) != (fb > 0)) {
        std::uintmax_t iters = 200;
        const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52),
                                                         iters);
        return 0.5 * (r.first + r.second);
      }
    }
    throw std::runtime_error("normalized_chart: no sign change of the level function along the vertical");
  };
  return finite_difference_patch(n - 1, radius, value, h);
}

/// Default finite-difference step for normalized charts.
inline double chart_step(const Surface& s) { return 1e-2 * chart_radius(s); }

/// Mean curvature through a normalized local chart.
inline double mean_curvature_chart(const Surface& s, const Point& p, double tol = 1e-8) {
  if (std::abs(s.level(p.x)) > tol) throw OffSurface("mean_curvature_chart: point is not on the surface");
  const Isometry phi = hyperbolic::normalize_to_standard(s.inward_normal(p));
  const GraphPatch chart = normalized_chart(s, phi, chart_step(s));
  return mean_curvature_graph(chart, Vec(s.dim() - 1));
}

/// Mean curvature from the ambient Euclidean data, with an on-surface check.
inline double mean_curvature(const Surface& s, const Point& p, double tol = 1e-8) {
  if (std::abs(s.level(p.x)) > tol) throw OffSurface("mean_curvature: point is not on the surface");
  return s.mean_curvature(p);
}

}  // namespace alexlab::surfaces
