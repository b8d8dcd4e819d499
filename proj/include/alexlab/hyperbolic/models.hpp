#pragma once

#include <cmath>

#include "alexlab/hyperbolic/isometry.hpp"

namespace alexlab::hyperbolic {

namespace detail {

/// Inversion in the sphere of radius sqrt(2) about -e_n; it exchanges the
/// half-space {x_n > 0} and the unit ball up to the sign of the last
/// coordinate.
inline Inversion model_inversion(int n) {
  Vec c(n);
  c.back() = -1.0;
  return Inversion{c, std::sqrt(2.0)};
}

template <class T>
SmallVec<T> flip_last(SmallVec<T> x) {
  x.back() = -x.back();
  return x;
}

}  // namespace detail

/// Half-space coordinates -> ball coordinates, templated for jets.
/// e_n maps to the origin of the ball.
template <class T>
SmallVec<T> half_space_to_ball(const SmallVec<T>& x) {
  return detail::flip_last(detail::apply(detail::model_inversion(x.size()), x));
}

template <class T>
SmallVec<T> ball_to_half_space(const SmallVec<T>& y) {
  return detail::apply(detail::model_inversion(y.size()), detail::flip_last(y));
}

inline Point to_ball(const Point& p) {
  if (p.model == Model::Ball) return p;
  validate(p);
  Point b{half_space_to_ball(p.x), Model::Ball};
  validate(b);
  return b;
}

inline Point to_halfspace(const Point& p) {
  if (p.model == Model::HalfSpace) return p;
  validate(p);
  Point h{ball_to_half_space(p.x), Model::HalfSpace};
  validate(h);
  return h;
}

inline TangentVector to_ball(const TangentVector& t) {
  if (t.base.model == Model::Ball) return t;
  const Point b = to_ball(t.base);
  return TangentVector{b, detail::flip_last(detail::push(detail::model_inversion(t.base.dim()), t.base.x, t.v))};
}

inline TangentVector to_halfspace(const TangentVector& t) {
  if (t.base.model == Model::HalfSpace) return t;
  const Point h = to_halfspace(t.base);
  const Vec y = detail::flip_last(t.base.x);
  return TangentVector{h, detail::push(detail::model_inversion(t.base.dim()), y, detail::flip_last(t.v))};
}

}  // namespace alexlab::hyperbolic
