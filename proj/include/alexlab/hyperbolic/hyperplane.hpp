#pragma once

#include <cmath>
#include <optional>
#include <variant>

#include "alexlab/hyperbolic/geodesic.hpp"

namespace alexlab::hyperbolic {

/// Vertical hyperplane {x : x . u = c}, u a unit horizontal vector.
struct VerticalPlane {
  Vec u;
  double c;
};

/// Half-sphere {x : |x - center| = radius}, center on the boundary plane.
struct HalfSphere {
  Vec center;
  double radius;
};

/// Totally geodesic hypersurface of the half-space model.
///
/// `orientation` (+1 or -1) chooses which side has positive signed distance.
/// With +1 the positive side is {x . u > c}, resp. the outside of the
/// half-sphere.
class Hyperplane {
 public:
  Hyperplane(VerticalPlane v, int orientation = 1) : shape_(normalized(std::move(v))), orientation_(orientation) {}
  Hyperplane(HalfSphere h, int orientation = 1) : shape_(checked(std::move(h))), orientation_(orientation) {}

  /// Hyperplane through `x` orthogonal to the tangent direction `normal`;
  /// the positive side is the one `normal` points into.
  static Hyperplane through(const Point& x, const Vec& normal) {
    validate(x);
    const double l = norm(normal);
    if (!(l > 0)) throw std::invalid_argument("Hyperplane::through: zero normal");
    const Vec w = normal / l;
    if (std::abs(w.back()) < 1e-12) {
      const Vec u = horizontal(w) / norm(horizontal(w));
      return Hyperplane(VerticalPlane{u, dot(u, x.x)}, 1);
    }
    Vec c = x.x - w * (x.height() / w.back());
    c.back() = 0.0;
    Hyperplane h(HalfSphere{c, x.height() / std::abs(w.back())}, w.back() > 0 ? 1 : -1);
    h.anchor_ = Anchor{x.x, w.back() > 0 ? w : w * -1.0};
    return h;
  }

  bool vertical() const { return std::holds_alternative<VerticalPlane>(shape_); }
  const VerticalPlane& as_vertical() const { return std::get<VerticalPlane>(shape_); }
  const HalfSphere& as_half_sphere() const { return std::get<HalfSphere>(shape_); }
  int orientation() const { return orientation_; }
  Hyperplane flipped() const {
    Hyperplane h = *this;
    h.orientation_ = -orientation_;
    return h;
  }

  /// Signed hyperbolic distance, positive on the oriented side.
  double signed_distance(const Point& p) const { return orientation_ * std::asinh(ratio(p.x)); }

  /// Templated variant used by jets and by differentiation.
  template <class T>
  T signed_distance(const SmallVec<T>& x) const {
    using std::asinh;
    return T(double(orientation_)) * asinh(ratio(x));
  }

  /// Unit hyperbolic normal at p (Euclidean components), pointing to the
  /// positive side. Equals the gradient of signed_distance.
  TangentVector normal_at(const Point& p) const {
    const Vec& x = p.x;
    const double f = ratio(x);
    Vec grad(x.size());
    if (const auto* v = std::get_if<VerticalPlane>(&shape_)) {
      grad = v->u / x.back();
      grad.back() = -f / x.back();
    } else {
      const auto& h = std::get<HalfSphere>(shape_);
      grad = (x - h.center) / (h.radius * x.back());
      grad.back() -= f / x.back();
    }
    grad *= orientation_ * x.back() * x.back() / std::sqrt(1.0 + f * f);
    return TangentVector{p, grad};
  }

  bool contains(const Point& p, double tol = 1e-12) const { return std::abs(signed_distance(p)) <= tol; }

  /// Closest point of the hyperplane to p.
  Point foot(const Point& p) const {
    const double d = signed_distance(p);
    if (d == 0.0) return p;
    const TangentVector n = normal_at(p);
    return exp_map(TangentVector{p, n.v * (-d)});
  }

  /// Reflection as an isometry (an inversion or a Euclidean reflection).
  Isometry reflection() const {
    Isometry r;
    if (const auto* v = std::get_if<VerticalPlane>(&shape_)) {
      const Vec shift = v->u * v->c;
      r.then(HorizontalTranslation{-shift});
      r.then(HorizontalRotation{householder(horizontal_eigen(v->u))});
      r.then(HorizontalTranslation{shift});
    } else {
      const auto& h = std::get<HalfSphere>(shape_);
      r.then(Inversion{h.center, h.radius});
    }
    return r;
  }

  template <class T>
  SmallVec<T> reflect(SmallVec<T> x) const {
    if (const auto* v = std::get_if<VerticalPlane>(&shape_)) {
      T s(0);
      for (int i = 0; i + 1 < x.size(); ++i) s = s + x[i] * v->u[i];
      s = s - T(v->c);
      for (int i = 0; i + 1 < x.size(); ++i) x[i] = x[i] - T(2.0 * v->u[i]) * s;
      return x;
    }
    return detail::apply(Inversion{std::get<HalfSphere>(shape_).center, std::get<HalfSphere>(shape_).radius}, x);
  }

  /// For hyperplanes built by `through` the inversion is evaluated relative
  /// to the construction point a, with x - c = (x - a) + R u. The error then
  /// scales with |x - a| instead of the radius, which matters for nearly
  /// vertical planes with huge radii.
  Point reflect(const Point& p) const {
    if (!anchor_ || vertical()) return Point{reflect(p.x), Model::HalfSpace};
    const double R = as_half_sphere().radius;
    const Vec d = p.x - anchor_->x;
    const Vec y = d + anchor_->u * R;
    const double excess = dot(d, d) + 2.0 * R * dot(anchor_->u, d);
    return Point{p.x - y * (excess / dot(y, y)), Model::HalfSpace};
  }

  TangentVector reflect(const TangentVector& t) const {
    if (const auto* v = std::get_if<VerticalPlane>(&shape_)) {
      return TangentVector{reflect(t.base), t.v - v->u * (2.0 * dot(v->u, t.v))};
    }
    const auto& h = std::get<HalfSphere>(shape_);
    return TangentVector{reflect(t.base), detail::push(Inversion{h.center, h.radius}, t.base.x, t.v)};
  }

  /// Image under an isometry: push a point of the hyperplane and its normal.
  Hyperplane transformed(const Isometry& phi) const {
    const Point p = anchor();
    const TangentVector n = normal_at(p);
    const TangentVector m = phi.push(n);
    return through(m.base, m.v);
  }

  /// A point on the hyperplane.
  Point anchor() const {
    if (const auto* v = std::get_if<VerticalPlane>(&shape_)) {
      Vec x = v->u * v->c;
      x.back() = 1.0;
      return Point{x, Model::HalfSpace};
    }
    const auto& h = std::get<HalfSphere>(shape_);
    Vec x = h.center;
    x.back() = h.radius;
    return Point{x, Model::HalfSpace};
  }

  int dim() const {
    if (const auto* v = std::get_if<VerticalPlane>(&shape_)) return v->u.size();
    return std::get<HalfSphere>(shape_).center.size();
  }

 private:
  template <class T>
  T ratio(const SmallVec<T>& x) const {
    if (const auto* v = std::get_if<VerticalPlane>(&shape_)) {
      T s(0);
      for (int i = 0; i + 1 < x.size(); ++i) s = s + x[i] * v->u[i];
      return (s - T(v->c)) / x.back();
    }
    const auto& h = std::get<HalfSphere>(shape_);
    T s(0);
    for (int i = 0; i < x.size(); ++i) {
      const T d = x[i] - T(h.center[i]);
      s = s + d * d;
    }
    return (s - T(h.radius * h.radius)) / (T(2.0 * h.radius) * x.back());
  }

  static VerticalPlane normalized(VerticalPlane v) {
    v.u.back() = 0.0;
    const double l = norm(v.u);
    if (!(l > 0)) throw std::invalid_argument("VerticalPlane: zero normal");
    v.u /= l;
    v.c /= l;
    return v;
  }
  static HalfSphere checked(HalfSphere h) {
    if (!(h.radius > 0)) throw std::invalid_argument("HalfSphere: radius must be positive");
    h.center.back() = 0.0;
    return h;
  }

  struct Anchor {
    Vec x;  // construction point
    Vec u;  // Euclidean unit vector (x - center) / radius
  };

  std::variant<VerticalPlane, HalfSphere> shape_;
  int orientation_ = 1;
  std::optional<Anchor> anchor_;
};

/// Whether two hyperplanes meet inside hyperbolic space.
inline bool intersects(const Hyperplane& a, const Hyperplane& b) {
  if (a.vertical() && b.vertical()) {
    const auto& u = a.as_vertical();
    const auto& v = b.as_vertical();
    const double c = dot(u.u, v.u);
    if (std::abs(std::abs(c) - 1.0) > 1e-14) return true;
    return std::abs(u.c - c * v.c) < 1e-14;
  }
  if (a.vertical() != b.vertical()) {
    const auto& v = a.vertical() ? a.as_vertical() : b.as_vertical();
    const auto& h = a.vertical() ? b.as_half_sphere() : a.as_half_sphere();
    return std::abs(dot(v.u, h.center) - v.c) < h.radius;
  }
  const auto& h1 = a.as_half_sphere();
  const auto& h2 = b.as_half_sphere();
  const double d = norm(h1.center - h2.center);
  return std::abs(h1.radius - h2.radius) < d && d < h1.radius + h2.radius;
}

}  // namespace alexlab::hyperbolic
