#pragma once

#include <cmath>
#include <optional>

#include "alexlab/hyperbolic/models.hpp"

namespace alexlab::hyperbolic {

/// Complete unit-speed geodesic of the half-space model through `origin`
/// with initial direction `direction`.
///
/// With p = origin, w the Euclidean unit direction and D(s) = cosh s - w_n sinh s,
///   gamma(s) = pbar + (p_n / D(s)) (sinh(s) wbar + e_n).
/// Vertical lines (wbar = 0) and half-circles are handled by the same formula.
class Geodesic {
 public:
  Geodesic(const Point& origin, const Vec& direction) : origin_(origin) {
    validate(origin);
    if (origin.model != Model::HalfSpace) throw std::invalid_argument("Geodesic: half-space points only");
    const double l = norm(direction);
    if (!(l > 0)) throw std::invalid_argument("Geodesic: zero direction");
    w_ = direction / l;
  }

  const Point& origin() const { return origin_; }
  /// Euclidean unit direction at s = 0.
  const Vec& direction() const { return w_; }
  bool vertical() const { return norm(horizontal(w_)) <= 1e-15; }

  Vec position(double s) const {
    const double ch = std::cosh(s);
    const double sh = std::sinh(s);
    const double d = ch - w_.back() * sh;
    const double pn = origin_.height();
    Vec x = horizontal(origin_.x) + horizontal(w_) * (pn * sh / d);
    x.back() = pn / d;
    return x;
  }

  Point point(double s) const { return Point{position(s), Model::HalfSpace}; }

  /// Euclidean velocity; its hyperbolic norm is 1.
  Vec velocity(double s) const {
    const double ch = std::cosh(s);
    const double sh = std::sinh(s);
    const double d = ch - w_.back() * sh;
    const double dprime = sh - w_.back() * ch;
    const double pn = origin_.height();
    Vec v = horizontal(w_) * (pn / (d * d));
    v.back() = -pn * dprime / (d * d);
    return v;
  }

  TangentVector tangent(double s) const { return TangentVector{point(s), velocity(s)}; }

 private:
  Point origin_;
  Vec w_;
};

/// Circle of a non-vertical geodesic: center on the boundary plane.
struct Circle {
  Vec center;
  double radius;
};

/// Geodesic segment from `start` to `end`, parametrized by arclength on [0, length].
class GeodesicSegment {
 public:
  GeodesicSegment(Geodesic line, double length, Point start, Point end)
      : line_(std::move(line)), length_(length), start_(std::move(start)), end_(std::move(end)) {}

  const Geodesic& line() const { return line_; }
  double length() const { return length_; }
  const Point& start() const { return start_; }
  const Point& end() const { return end_; }
  Point point(double s) const { return line_.point(s); }
  Vec velocity(double s) const { return line_.velocity(s); }
  Point midpoint() const { return line_.point(0.5 * length_); }
  bool vertical() const { return line_.vertical(); }

  /// Supporting circle (center on the boundary plane), or nullopt for a
  /// vertical segment.
  std::optional<Circle> circle() const {
    if (vertical()) return std::nullopt;
    const Vec& w = line_.direction();
    const Vec wbar = horizontal(w);
    const double hb = norm(wbar);
    const double pn = start_.height();
    const double a = pn * w.back() / hb;
    return Circle{horizontal(start_.x) + wbar * (a / hb), std::sqrt(a * a + pn * pn)};
  }

 private:
  Geodesic line_;
  double length_;
  Point start_;
  Point end_;
};

/// Euclidean direction at p of the geodesic from p to q (not normalized).
inline Vec direction_towards(const Point& p, const Point& q) {
  const Vec d = horizontal(q.x - p.x);
  Vec w = d * (2.0 * p.height());
  w.back() = norm2(d) + (q.height() - p.height()) * (q.height() + p.height());
  return w;
}

inline GeodesicSegment geodesic(const Point& p, const Point& q) {
  if (p.model != Model::HalfSpace || q.model != Model::HalfSpace) {
    throw std::invalid_argument("geodesic: half-space points only");
  }
  const double l = dist(p, q);
  if (l < kDegenerateDistance) throw DegenerateSegment("geodesic: endpoints coincide");
  return GeodesicSegment(Geodesic(p, direction_towards(p, q)), l, p, q);
}

namespace detail {

inline Point exp_half_space(const TangentVector& t) {
  const double len = hyperbolic_norm(t);
  if (len == 0.0) return t.base;
  return Geodesic(t.base, t.v).point(len);
}

inline TangentVector log_half_space(const Point& p, const Point& q) {
  const double l = dist(p, q);
  if (l < kDegenerateDistance) return TangentVector{p, Vec(p.dim())};
  const Vec w = direction_towards(p, q);
  return TangentVector{p, w * (l * p.height() / norm(w))};
}

}  // namespace detail

/// Riemannian exponential map. Works in either model.
inline Point exp_map(const TangentVector& t) {
  validate(t.base);
  if (t.base.model == Model::HalfSpace) return detail::exp_half_space(t);
  return to_ball(detail::exp_half_space(to_halfspace(t)));
}

/// Inverse of the exponential map: the tangent vector at p pointing to q with
/// hyperbolic length dist(p, q). Returns the zero vector when p = q.
inline TangentVector log_map(const Point& p, const Point& q) {
  if (p.model != q.model) throw std::invalid_argument("log_map: points use different models");
  if (p.model == Model::HalfSpace) return detail::log_half_space(p, q);
  return to_ball(detail::log_half_space(to_halfspace(p), to_halfspace(q)));
}

}  // namespace alexlab::hyperbolic
