#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "alexlab/core/jet.hpp"
#include "alexlab/core/parallel.hpp"
#include "alexlab/hyperbolic/geodesic.hpp"
#include "alexlab/surfaces/profile.hpp"

namespace alexlab::surfaces {

using hyperbolic::Isometry;
using hyperbolic::Mat;
using hyperbolic::Model;
using hyperbolic::Point;
using hyperbolic::TangentVector;

/// Raised for query points that are not on the surface.
class OffSurface : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PerturbedSphereSpec {
  Point center;
  double r0 = 1.0;
  Profile profile = Profile::Mixed;
  double eps = 0.0;
};

/// One surface sample with its geometric data.
struct Sample {
  Vec u;                 // parameter direction (unit vector)
  Point p;               // point on the surface
  TangentVector normal;  // inward unit normal
  Vec kappa;             // principal curvatures, ascending
  double H = 0.0;        // mean curvature
  double weight = 0.0;   // area quadrature weight
};

/// Closed star-shaped hypersurface {d(c, x) = r0 + eps f(u)}, where u is the
/// direction of x seen from the center c.
///
/// Everything is evaluated through the level function
///   F(x) = 2 atanh|y| - r(y / |y|),   y = ball coordinates of x centered at c,
/// which is negative inside. Principal curvatures come from the exact
/// Hessian of F (second-order jets), the Euclidean shape operator, and the
/// conformal relation kappa = x_n kappa_E + nu_n.
class Surface {
 public:
  static Surface sphere(const Point& c, double r) {
    if (!(r > 0)) throw std::invalid_argument("sphere: radius must be positive");
    return Surface(PerturbedSphereSpec{c, r, Profile::Mixed, 0.0});
  }

  static Surface perturbed_sphere(const PerturbedSphereSpec& spec) { return Surface(spec); }

  /// Image of this surface under an isometry. Inside stays inside, so
  /// curvatures with respect to the inward normal are unchanged.
  Surface transformed(const Isometry& phi) const {
    Surface out = *this;
    out.to_base_ = phi.inverse().then(to_base_);
    out.from_base_ = from_base_.then(phi);
    out.center_ = phi(center_);
    return out;
  }

  int dim() const { return spec_.center.dim(); }
  const Point& center() const { return center_; }
  const PerturbedSphereSpec& spec() const { return spec_; }
  bool is_sphere() const { return spec_.eps == 0.0; }

  /// Radial function r(u) = r0 + eps f(u).
  double radial(const Vec& u) const { return spec_.r0 + spec_.eps * profile_value(spec_.profile, u); }

  /// Ball-frame coordinates (center at the origin) of a half-space point.
  template <class T>
  SmallVec<T> to_frame(SmallVec<T> x) const {
    if (!to_base_.is_identity()) x = to_base_.apply(x);
    const Vec& c = spec_.center.x;
    for (int i = 0; i + 1 < x.size(); ++i) x[i] = x[i] - T(c[i]);
    x /= c.back();
    return hyperbolic::half_space_to_ball(x);
  }

  Vec from_frame(const Vec& y) const {
    const Vec& c = spec_.center.x;
    Vec x = hyperbolic::ball_to_half_space(y) * c.back();
    for (int i = 0; i + 1 < x.size(); ++i) x[i] += c[i];
    return from_base_.is_identity() ? x : from_base_.apply(x);
  }

  /// Level function F in half-space coordinates; negative inside.
  template <class T>
  T level(const SmallVec<T>& x) const {
    using std::atanh;
    using std::sqrt;
    const SmallVec<T> y = to_frame(x);
    const T r = sqrt(norm2(y));
    T f = T(spec_.r0);
    if (spec_.eps != 0.0) f = f + T(spec_.eps) * profile_value(spec_.profile, y / r);
    return T(2.0) * atanh(r) - f;
  }

  /// Positive inside, zero on the surface. For points near the surface this
  /// is the radial offset r(u) - d(c, x).
  double signed_depth(const Point& x) const { return -level(x.x); }
  bool inside(const Point& x) const { return signed_depth(x) > 0.0; }

  /// Parameter direction of x (unit vector in the ball frame).
  Vec direction_of(const Point& x) const {
    const Vec y = to_frame(x.x);
    const double l = norm(y);
    if (l == 0.0) throw std::invalid_argument("direction_of: point is the center");
    return y / l;
  }

  Point position(const Vec& u) const {
    const Vec unit = u / norm(u);
    return Point{from_frame(unit * std::tanh(0.5 * radial(unit))), Model::HalfSpace};
  }

  /// Inward unit normal (Euclidean components of a hyperbolic unit vector).
  TangentVector inward_normal(const Point& p) const {
    const Jet f = level(make_jets(p.x));
    const Vec g = f.gradient(dim());
    return TangentVector{p, g * (-p.height() / norm(g))};
  }

  /// Principal curvatures with respect to the inward normal, ascending.
  Vec principal_curvatures(const Point& p) const {
    const int n = dim();
    const Jet f = level(make_jets(p.x));
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) g(i) = f.grad(i);
    const double gn = g.norm();
    const Eigen::VectorXd nu = -g / gn;
    Eigen::MatrixXd hess(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) hess(i, j) = f.hess(i, j);
    // Orthonormal tangent basis: trailing columns of a Householder basis of nu.
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(nu);
    const Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd t = q.rightCols(n - 1);
    const Eigen::MatrixXd shape = t.transpose() * hess * t / gn;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(shape, Eigen::EigenvaluesOnly);
    Vec k(n - 1);
    for (int i = 0; i < n - 1; ++i) k[i] = p.height() * es.eigenvalues()(i) + nu(n - 1);
    return k;
  }

  /// Mean curvature from the Euclidean shape operator: H = nu_n + x_n H_E.
  double mean_curvature(const Point& p) const {
    const Vec k = principal_curvatures(p);
    double s = 0.0;
    for (double v : k) s += v;
    return s / k.size();
  }

  /// Area element of the radial parametrization relative to the unit sphere:
  /// sinh^{n-1}(r) sqrt(1 + |grad_S r|^2 / sinh^2 r).
  double area_density(const Vec& u) const {
    const int n = dim();
    const double r = radial(u);
    const double sh = std::sinh(r);
    double grad2 = 0.0;
    if (spec_.eps != 0.0) {
      // f(x / |x|) is 0-homogeneous, so its gradient at a unit vector is tangential.
      SmallVec<Jet> x = make_jets(u);
      const Jet l = sqrt(norm2(x));
      const Jet f = profile_value(spec_.profile, x / l);
      for (int i = 0; i < n; ++i) grad2 += spec_.eps * spec_.eps * f.grad(i) * f.grad(i);
    }
    return std::pow(sh, n - 1) * std::sqrt(1.0 + grad2 / (sh * sh));
  }

  Sample sample_at(const Vec& u, double weight) const {
    Sample s;
    s.u = u / norm(u);
    s.p = position(s.u);
    s.normal = inward_normal(s.p);
    s.kappa = principal_curvatures(s.p);
    double h = 0.0;
    for (double v : s.kappa) h += v;
    s.H = h / s.kappa.size();
    s.weight = weight * area_density(s.u);
    return s;
  }

  /// Quasi-uniform sample set with area quadrature weights.
  std::vector<Sample> samples(int count, int threads = 1, std::uint64_t seed = 1) const {
    const std::vector<Vec> dirs = sphere_directions(dim(), count, seed);
    const double w = unit_sphere_area(dim()) / count;
    std::vector<Sample> out(dirs.size());
    parallel_for(static_cast<int>(dirs.size()), threads, [&](int i) { out[i] = sample_at(dirs[i], w); });
    return out;
  }

  /// Curvature radius arccoth(max|kappa|) over a fixed probe set (infinite
  /// when every |kappa| <= 1). Used to size local charts.
  double curvature_radius() const { return curvature_radius_; }

 private:
  explicit Surface(const PerturbedSphereSpec& spec) : spec_(spec), center_(spec.center) {
    hyperbolic::validate(spec_.center);
    if (!(spec_.r0 > 0)) throw std::invalid_argument("surface: base radius must be positive");
    if (!(spec_.eps >= 0) || !std::isfinite(spec_.eps)) throw std::invalid_argument("surface: eps must be >= 0");
    const int n = dim();
    const std::vector<Vec> probe = sphere_directions(n, n == 2 ? 720 : 4000, 7);
    if (spec_.eps > 0) {
      double sup = 0.0;
      for (const Vec& u : probe) sup = std::max(sup, std::abs(profile_value(spec_.profile, u)));
      // Radial graphs are embedded as long as the radius stays positive; keep
      // a factor 2 margin so that the star-shaped structure is robust.
      if (spec_.eps * sup >= 0.5 * spec_.r0) {
        throw std::invalid_argument("perturbed sphere: eps * sup|f| must stay below r0 / 2");
      }
    }
    double kmax = 1.0 / std::tanh(spec_.r0);
    if (spec_.eps > 0) {
      kmax = 0.0;
      for (const Vec& u : probe) {
        for (double k : principal_curvatures(position(u))) kmax = std::max(kmax, std::abs(k));
      }
    }
    curvature_radius_ = kmax > 1.0 ? std::atanh(1.0 / kmax) : std::numeric_limits<double>::infinity();
  }

  PerturbedSphereSpec spec_;
  Point center_;
  Isometry to_base_;    // current coordinates -> coordinates of the family
  Isometry from_base_;  // inverse of to_base_
  double curvature_radius_ = 0.0;
};

}  // namespace alexlab::surfaces
