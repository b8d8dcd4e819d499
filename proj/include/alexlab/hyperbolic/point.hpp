#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "alexlab/core/vec.hpp"

namespace alexlab::hyperbolic {

enum class Model { HalfSpace, Ball };

/// Raised for points outside the model (non-positive height, or outside the
/// open unit ball).
class InvalidPoint : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when two points are too close to define a geodesic segment.
class DegenerateSegment : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kMinHeight = 1e-300;
inline constexpr double kDegenerateDistance = 1e-14;

/// A point of hyperbolic n-space in model coordinates.
struct Point {
  Vec x;
  Model model = Model::HalfSpace;

  int dim() const { return x.size(); }
  double height() const { return x.back(); }
  double operator[](int i) const { return x[i]; }
};

inline void validate(const Point& p) {
  if (p.dim() < 2) throw InvalidPoint("point dimension must be at least 2");
  for (double c : p.x) {
    if (!std::isfinite(c)) throw InvalidPoint("non-finite coordinate");
  }
  if (p.model == Model::HalfSpace) {
    if (!(p.x.back() > kMinHeight)) {
      throw InvalidPoint("half-space point needs positive height, got " + std::to_string(p.x.back()));
    }
  } else if (!(norm2(p.x) < 1.0)) {
    throw InvalidPoint("ball point must lie in the open unit ball");
  }
}

inline Point half_space_point(Vec x) {
  Point p{std::move(x), Model::HalfSpace};
  validate(p);
  return p;
}

inline Point ball_point(Vec x) {
  Point p{std::move(x), Model::Ball};
  validate(p);
  return p;
}

/// The base point e_n = (0, ..., 0, 1) of the half-space model.
inline Point base_point(int n) { return Point{Vec::unit(n, n - 1), Model::HalfSpace}; }

/// A tangent vector: ambient Euclidean components anchored at a base point.
struct TangentVector {
  Point base;
  Vec v;
};

/// Conformal factor lambda with g = lambda^2 * Euclidean at p.
inline double conformal_factor(const Point& p) {
  if (p.model == Model::HalfSpace) return 1.0 / p.height();
  return 2.0 / (1.0 - norm2(p.x));
}

inline double inner(const Point& at, const Vec& a, const Vec& b) {
  const double l = conformal_factor(at);
  return l * l * dot(a, b);
}

inline double inner(const TangentVector& a, const TangentVector& b) { return inner(a.base, a.v, b.v); }

inline double hyperbolic_norm(const Point& at, const Vec& v) { return conformal_factor(at) * norm(v); }
inline double hyperbolic_norm(const TangentVector& t) { return hyperbolic_norm(t.base, t.v); }

/// Tangent vector at `at` with Euclidean direction `dir` scaled to unit
/// hyperbolic length.
inline TangentVector unit_vector(const Point& at, const Vec& dir) {
  return TangentVector{at, dir / hyperbolic_norm(at, dir)};
}

/// Hyperbolic distance. Both points must use the same model.
///
/// Uses arccosh(1 + |p-q|^2 / (2 p_n q_n)) in the half-space model, written as
/// 2 asinh(|p-q| / (2 sqrt(p_n q_n))) to stay accurate for nearby points.
inline double dist(const Point& p, const Point& q) {
  if (p.model != q.model) throw std::invalid_argument("dist: points use different models");
  validate(p);
  validate(q);
  const double e = norm(p.x - q.x);
  if (p.model == Model::HalfSpace) {
    return 2.0 * std::asinh(e / (2.0 * std::sqrt(p.height() * q.height())));
  }
  const double den = std::sqrt((1.0 - norm2(p.x)) * (1.0 - norm2(q.x)));
  return 2.0 * std::asinh(e / den);
}

}  // namespace alexlab::hyperbolic
