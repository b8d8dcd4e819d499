#pragma once

#include <cmath>
#include <stdexcept>

#include "alexlab/hyperbolic/geodesic.hpp"

namespace alexlab::hyperbolic {

/// Parallel transport of v (based at q) to p along the geodesic from q to p.
///
/// The pair is moved by a horizontal translation and a dilation so that
/// p = e_n; the horizontal offset of q then spans a direction h, and in the
/// plane <h, e_n> the transport is the 2x2 closed-form matrix
///
///   1/(1+a^2) [ a(a-q1)+q2    a-q1-a q2  ]      a = (|q|^2 - 1) / (2 q1),
///             [ a q2-a+q1     a(a-q1)+q2 ]
///
/// with q = q1 h + q2 e_n, followed by the factor 1/q2. Components orthogonal
/// to that plane are only scaled. Translations and dilations act on vectors
/// by scalars that cancel, so the result needs no conjugation back.
inline TangentVector parallel_transport(const Point& q, const Point& p, const TangentVector& v) {
  validate(q);
  validate(p);
  if (q.model != Model::HalfSpace || p.model != Model::HalfSpace) {
    throw std::invalid_argument("parallel_transport: half-space points only");
  }
  if (max_abs_diff(v.base.x, q.x) > 1e-12 * (1.0 + norm(q.x))) {
    throw std::invalid_argument("parallel_transport: vector is not based at q");
  }
  // q in coordinates where p = e_n.
  const Vec hq = horizontal(q.x - p.x) / p.height();
  const double q2 = q.height() / p.height();
  const double q1 = norm(hq);
  if (q1 == 0.0) return TangentVector{p, v.v * (p.height() / q.height())};

  const Vec h = hq / q1;
  const double vh = dot(v.v, h);
  const double vn = v.v.back();
  const Vec perp = horizontal(v.v) - h * vh;

  const double a = (q1 * q1 + q2 * q2 - 1.0) / (2.0 * q1);
  const double diag = a * (a - q1) + q2;
  const double off = a - q1 - a * q2;
  const double s = 1.0 / ((1.0 + a * a) * q2);
  const double th = s * (diag * vh + off * vn);
  const double tn = s * (-off * vh + diag * vn);

  Vec out = perp / q2 + h * th;
  out.back() = tn;
  return TangentVector{p, out};
}

/// Parallel transport by integrating the transport equation
///   X_k' = (1/x_n) (a_k X_n + X_k a_n - delta_kn (a . X)),
/// a = gamma', along the unit-speed geodesic from q to p with classical RK4.
inline TangentVector parallel_transport_ode(const Point& q, const Point& p, const TangentVector& v, int steps) {
  if (steps < 16) throw std::invalid_argument("parallel_transport_ode: steps must be at least 16");
  const double l = dist(q, p);
  if (l < kDegenerateDistance) return TangentVector{p, v.v};
  const Geodesic g(q, direction_towards(q, p));

  const auto rhs = [&](double s, const Vec& x) {
    const Vec pos = g.position(s);
    const Vec a = g.velocity(s);
    const double xn = pos.back();
    Vec d = a * (x.back() / xn) + x * (a.back() / xn);
    d.back() -= dot(a, x) / xn;
    return d;
  };

  Vec x = v.v;
  const double hstep = l / steps;
  for (int i = 0; i < steps; ++i) {
    const double s = i * hstep;
    const Vec k1 = rhs(s, x);
    const Vec k2 = rhs(s + 0.5 * hstep, x + k1 * (0.5 * hstep));
    const Vec k3 = rhs(s + 0.5 * hstep, x + k2 * (0.5 * hstep));
    const Vec k4 = rhs(s + hstep, x + k3 * hstep);
    x += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (hstep / 6.0);
  }
  return TangentVector{p, x};
}

}  // namespace alexlab::hyperbolic
