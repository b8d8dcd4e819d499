#pragma once

#include <cmath>
#include <stdexcept>

#include "alexlab/hyperbolic/hyperplane.hpp"

namespace alexlab::moving_planes {

using hyperbolic::Hyperplane;
using hyperbolic::Isometry;
using hyperbolic::Point;
using hyperbolic::TangentVector;

/// Hyperplanes orthogonal to the geodesic through a base point b in the
/// direction omega. After the conjugation g (b -> e_n, omega -> e_n) the
/// family is the set of half-spheres {|p| = e^s} and gamma(s) = e^s e_n.
class PlaneFamily {
 public:
  explicit PlaneFamily(const TangentVector& omega) : omega_(omega) {
    const double l = hyperbolic::hyperbolic_norm(omega);
    if (!(l > 0)) throw std::invalid_argument("PlaneFamily: zero direction");
    omega_.v /= l;
    g_ = hyperbolic::normalize_to_standard(omega_);
    ginv_ = g_.inverse();
  }

  const TangentVector& direction() const { return omega_; }
  const Point& base() const { return omega_.base; }
  const Isometry& conjugation() const { return g_; }
  int dim() const { return omega_.base.dim(); }

  /// s-level of p: log|g(p)|.
  template <class T>
  T side(const SmallVec<T>& x) const {
    using std::log;
    return T(0.5) * log(norm2(g_.apply(x)));
  }
  double side(const Point& p) const { return side(p.x); }

  Point geodesic_point(double s) const {
    return Point{ginv_.apply(Vec::unit(dim(), dim() - 1) * std::exp(s)), hyperbolic::Model::HalfSpace};
  }

  /// Unit velocity of the geodesic at gamma(s).
  TangentVector geodesic_velocity(double s) const {
    const Vec e = Vec::unit(dim(), dim() - 1);
    return ginv_.push(TangentVector{Point{e * std::exp(s), hyperbolic::Model::HalfSpace}, e * std::exp(s)});
  }

  /// pi_{omega,s}; the positive side is {side > s}.
  Hyperplane plane(double s) const {
    return Hyperplane(hyperbolic::HalfSphere{Vec(dim()), std::exp(s)}).transformed(ginv_);
  }

  /// Reflection in pi_{omega,s}: g^{-1}(e^{2s} y / |y|^2) with y = g(x).
  Isometry reflection(double s) const {
    Isometry r = g_;
    r.then(hyperbolic::Inversion{Vec(dim()), std::exp(s)});
    return r.then(ginv_);
  }

 private:
  TangentVector omega_;
  Isometry g_;
  Isometry ginv_;
};

}  // namespace alexlab::moving_planes
