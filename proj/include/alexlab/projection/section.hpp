#pragma once

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "alexlab/hyperbolic/hyperplane.hpp"
#include "alexlab/surfaces/surface.hpp"

namespace alexlab::projection {

using hyperbolic::Hyperplane;
using hyperbolic::Isometry;
using hyperbolic::Point;
using hyperbolic::TangentVector;
using surfaces::Surface;

/// The hyperplane does not cut the surface transversally (or misses it).
class TransversalityError : public std::runtime_error {
 public:
  TransversalityError(const std::string& what, double margin) : std::runtime_error(what), margin_(margin) {}
  double margin() const { return margin_; }

 private:
  double margin_;
};

/// Data of the closed curve U' = U cap pi at one parameter value.
struct SectionPoint {
  Point q;
  Vec d1;            // d alpha / d phi
  Vec d2;            // d^2 alpha / d phi^2
  TangentVector N;   // inward unit normal of U
  Vec omega;         // unit normal of pi at q
  Vec kappa;         // principal curvatures of U at q
};

/// Closed section curve of a surface in H^3, sampled at equispaced angles
/// around the foot point of the surface center on pi.
struct SectionCurve {
  const Surface* surface = nullptr;
  Hyperplane plane;
  std::vector<SectionPoint> points;
  double min_margin = 0.0;  // min over samples of 1 - g(omega, N)^2
};

namespace detail {

/// Eighth-order periodic central differences of a sampled closed curve.
inline void periodic_derivatives(const std::vector<Vec>& x, double h, std::vector<Vec>& d1, std::vector<Vec>& d2) {
  static constexpr double c1[] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  static constexpr double c2[] = {8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0};
  const int m = static_cast<int>(x.size());
  d1.assign(m, Vec(x[0].size()));
  d2.assign(m, Vec(x[0].size()));
  for (int i = 0; i < m; ++i) {
    Vec a = x[i] * (-205.0 / 72.0);
    Vec b(x[0].size());
    for (int k = 1; k <= 4; ++k) {
      const Vec& p = x[(i + k) % m];
      const Vec& q = x[(i - k + m) % m];
      b += (p - q) * c1[k - 1];
      a += (p + q) * c2[k - 1];
    }
    d1[i] = b / h;
    d2[i] = a / (h * h);
  }
}

/// Hyperbolic-orthonormal pair spanning the tangent plane of pi at z.
inline std::pair<Vec, Vec> plane_frame(const Vec& omega, double height) {
  const Vec w = omega / norm(omega);
  Vec a = std::abs(w[0]) < 0.9 ? Vec{1.0, 0.0, 0.0} : Vec{0.0, 1.0, 0.0};
  a -= w * dot(a, w);
  a /= norm(a);
  const Vec b{w[1] * a[2] - w[2] * a[1], w[2] * a[0] - w[0] * a[2], w[0] * a[1] - w[1] * a[0]};
  return {a * height, b * height};
}

}  // namespace detail

/// Section of a star-shaped surface by a hyperplane (n = 3). Each point is
/// found by a radial root solve inside pi, starting from the foot point of
/// the surface center. Throws TransversalityError if pi misses the interior
/// or the margin 1 - g(omega, N)^2 drops below `margin`.
inline SectionCurve section(const Surface& s, const Hyperplane& pi, int count = 512, double margin = 0.05) {
  if (s.dim() != 3) throw std::invalid_argument("section: only n = 3 is supported");
  if (count < 16) throw std::invalid_argument("section: count must be at least 16");
  const Point c = pi.foot(s.center());
  if (!s.inside(c)) throw TransversalityError("section: plane does not meet the interior around the center", 0.0);
  const TangentVector om = pi.normal_at(c);
  const auto [ea, eb] = detail::plane_frame(om.v, c.height());
  const double step = 0.1 * s.spec().r0;

  std::vector<Vec> pts(count);
  for (int i = 0; i < count; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / count;
    const Vec dir = ea * std::cos(phi) + eb * std::sin(phi);
    auto f = [&](double t) { return s.level(hyperbolic::exp_map(TangentVector{c, dir * t}).x); };
    double lo = 0.0;
    double flo = f(lo);
    double hi = step;
    double fhi = f(hi);
    int guard = 0;
    while (fhi < 0) {
      lo = hi;
      flo = fhi;
      hi += step;
      fhi = f(hi);
      if (++guard > 1000) throw TransversalityError("section: radial ray does not leave the surface", 0.0);
    }
    std::uintmax_t iters = 200;
    const auto r =
        boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), iters);
    pts[i] = hyperbolic::exp_map(TangentVector{c, dir * (0.5 * (r.first + r.second))}).x;
  }

  std::vector<Vec> d1;
  std::vector<Vec> d2;
  detail::periodic_derivatives(pts, 2.0 * std::numbers::pi / count, d1, d2);

  SectionCurve out{&s, pi, {}, 1.0};
  out.points.reserve(count);
  for (int i = 0; i < count; ++i) {
    const Point q{pts[i], hyperbolic::Model::HalfSpace};
    SectionPoint sp{q, d1[i], d2[i], s.inward_normal(q), pi.normal_at(q).v, s.principal_curvatures(q)};
    const double g = hyperbolic::inner(q, sp.omega, sp.N.v);
    out.min_margin = std::min(out.min_margin, 1.0 - g * g);
    out.points.push_back(std::move(sp));
  }
  if (out.min_margin < margin) {
    throw TransversalityError("section: intersection is not transversal (margin " + std::to_string(out.min_margin) + ")",
                              out.min_margin);
  }
  return out;
}

/// Covariant acceleration D_t alpha' of a curve with Euclidean velocity a1
/// and acceleration a2 at x (Levi-Civita connection of the half-space).
inline Vec covariant_acceleration(const Vec& x, const Vec& a1, const Vec& a2) {
  const double xn = x.back();
  Vec d = a2 - a1 * (2.0 * a1.back() / xn);
  d.back() += norm2(a1) / xn;
  return d;
}

/// Unit normal of U' inside pi at q, oriented along N: the component of N
/// tangent to pi, normalized.
inline Vec section_normal(const Point& q, const Vec& N, const Vec& omega) {
  const Vec v = N - omega * hyperbolic::inner(q, N, omega);
  return v / hyperbolic::hyperbolic_norm(q, v);
}

/// The same normal through the Hodge-star construction, in coordinates where
/// pi is the vertical plane {x_1 = 0}: N' = (-1)^n *(*(nu ^ e_1) ^ e_1)
/// normalized, nu = N / q_n. For n = 3 the star of a 2-vector is a cross
/// product.
inline Vec section_normal_hodge(const Point& q, const Vec& N) {
  auto cross = [](const Vec& a, const Vec& b) {
    return Vec{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  };
  const Vec e1{1.0, 0.0, 0.0};
  const Vec nu = N / q.height();
  const Vec v = cross(cross(nu, e1), e1) * -1.0;
  return v / hyperbolic::hyperbolic_norm(q, v);
}

/// Isometry taking pi to the vertical plane {x_1 = 0}: normalize a point of
/// pi and its normal to (e_n, e_n), which sends pi to the unit half-sphere,
/// then invert about -e_1 with radius sqrt 2.
inline Isometry verticalize(const Hyperplane& pi) {
  const Point z = pi.anchor();
  Isometry phi = hyperbolic::normalize_to_standard(pi.normal_at(z));
  phi.then(hyperbolic::Inversion{Vec{-1.0, 0.0, 0.0}, std::sqrt(2.0)});
  return phi;
}

}  // namespace alexlab::projection
