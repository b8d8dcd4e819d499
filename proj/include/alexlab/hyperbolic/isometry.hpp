#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <variant>
#include <vector>

#include "alexlab/hyperbolic/point.hpp"

namespace alexlab::hyperbolic {

/// Small dense matrix with stack storage (at most kMaxDim x kMaxDim).
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

/// x -> x + t, with t in the boundary plane.
struct HorizontalTranslation {
  Vec t;
};

/// x -> lambda x, lambda > 0.
struct Dilation {
  double lambda;
};

/// Orthogonal map of the first n-1 coordinates; fixes the e_n axis.
struct HorizontalRotation {
  Mat q;
};

/// Euclidean inversion in the sphere |x - center| = radius, center on the
/// boundary plane. It is the reflection in the corresponding half-sphere.
struct Inversion {
  Vec center;
  double radius;
};

using Generator = std::variant<HorizontalTranslation, Dilation, HorizontalRotation, Inversion>;

namespace detail {

template <class T>
SmallVec<T> apply(const HorizontalTranslation& g, SmallVec<T> x) {
  for (int i = 0; i + 1 < x.size(); ++i) x[i] = x[i] + g.t[i];
  return x;
}

template <class T>
SmallVec<T> apply(const Dilation& g, SmallVec<T> x) {
  return x *= g.lambda;
}

template <class T>
SmallVec<T> apply(const HorizontalRotation& g, const SmallVec<T>& x) {
  SmallVec<T> y = x;
  const int m = x.size() - 1;
  for (int i = 0; i < m; ++i) {
    T acc(0);
    for (int j = 0; j < m; ++j) acc = acc + g.q(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

template <class T>
SmallVec<T> apply(const Inversion& g, SmallVec<T> x) {
  for (int i = 0; i < x.size(); ++i) x[i] = x[i] - g.center[i];
  const T s = T(g.radius * g.radius) / norm2(x);
  for (int i = 0; i < x.size(); ++i) x[i] = g.center[i] + s * x[i];
  return x;
}

inline Vec push(const HorizontalTranslation&, const Vec&, const Vec& v) { return v; }
inline Vec push(const Dilation& g, const Vec&, const Vec& v) { return v * g.lambda; }
inline Vec push(const HorizontalRotation& g, const Vec&, const Vec& v) { return apply(g, v); }
inline Vec push(const Inversion& g, const Vec& x, const Vec& v) {
  const Vec w = x - g.center;
  const double w2 = norm2(w);
  const double s = g.radius * g.radius / w2;
  return (v - w * (2.0 * dot(w, v) / w2)) * s;
}

inline Generator inverse(const HorizontalTranslation& g) { return HorizontalTranslation{-g.t}; }
inline Generator inverse(const Dilation& g) { return Dilation{1.0 / g.lambda}; }
inline Generator inverse(const HorizontalRotation& g) { return HorizontalRotation{g.q.transpose()}; }
inline Generator inverse(const Inversion& g) { return g; }

inline int parity(const HorizontalTranslation&) { return 1; }
inline int parity(const Dilation&) { return 1; }
inline int parity(const HorizontalRotation& g) { return g.q.size() == 0 || g.q.determinant() > 0 ? 1 : -1; }
inline int parity(const Inversion&) { return -1; }

}  // namespace detail

/// Ordered composition of generator moves. The first generator added is the
/// first one applied.
class Isometry {
 public:
  Isometry() = default;

  Isometry& then(Generator g) {
    gens_.push_back(std::move(g));
    return *this;
  }

  /// Composition: apply *this, then `after`.
  Isometry then(const Isometry& after) const {
    Isometry r = *this;
    r.gens_.insert(r.gens_.end(), after.gens_.begin(), after.gens_.end());
    return r;
  }

  template <class T>
  SmallVec<T> apply(SmallVec<T> x) const {
    for (const auto& g : gens_) {
      x = std::visit([&](const auto& gg) { return detail::apply(gg, x); }, g);
    }
    return x;
  }

  Point operator()(const Point& p) const {
    if (p.model != Model::HalfSpace) throw std::invalid_argument("Isometry acts on half-space points");
    return Point{apply(p.x), Model::HalfSpace};
  }

  TangentVector push(const TangentVector& t) const {
    Vec x = t.base.x;
    Vec v = t.v;
    for (const auto& g : gens_) {
      std::visit(
          [&](const auto& gg) {
            v = detail::push(gg, x, v);
            x = detail::apply(gg, x);
          },
          g);
    }
    return TangentVector{Point{x, Model::HalfSpace}, v};
  }

  Isometry inverse() const {
    Isometry r;
    for (auto it = gens_.rbegin(); it != gens_.rend(); ++it) {
      r.gens_.push_back(std::visit([](const auto& gg) { return detail::inverse(gg); }, *it));
    }
    return r;
  }

  /// +1 orientation preserving, -1 reversing.
  int parity() const {
    int p = 1;
    for (const auto& g : gens_) p *= std::visit([](const auto& gg) { return detail::parity(gg); }, g);
    return p;
  }

  const std::vector<Generator>& generators() const { return gens_; }
  bool is_identity() const { return gens_.empty(); }

 private:
  std::vector<Generator> gens_;
};

/// Householder reflection of R^m in the hyperplane orthogonal to `a`.
inline Mat householder(const Eigen::VectorXd& a) {
  const long m = a.size();
  Mat h = Mat::Identity(m, m);
  const double a2 = a.squaredNorm();
  if (a2 > 0) h -= (2.0 / a2) * (a * a.transpose());
  return h;
}

/// Orthogonal matrix of R^m taking unit vector `from` to unit vector `to`.
/// It is a rotation (det +1) whenever m >= 2.
inline Mat rotation_taking(const Eigen::VectorXd& from, const Eigen::VectorXd& to) {
  const long m = from.size();
  if (m == 1) return Mat::Constant(1, 1, from(0) * to(0) >= 0 ? 1.0 : -1.0);
  const Eigen::VectorXd s = from + to;
  if (s.norm() > 1e-8) return householder(to) * householder(s);
  // from ~ -to: reflect `from` onto `to`, then reflect in a direction orthogonal to both.
  Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
  long k = 0;
  from.cwiseAbs().minCoeff(&k);
  e(k) = 1.0;
  e -= e.dot(to) * to;
  return householder(e) * householder(from - to);
}

inline Eigen::VectorXd horizontal_eigen(const Vec& v) {
  Eigen::VectorXd out(v.size() - 1);
  for (int i = 0; i + 1 < v.size(); ++i) out(i) = v[i];
  return out;
}

/// Orientation-preserving isometry phi with phi(p) = e_n whose differential
/// maps the unit normal `normal` (based at p) to e_n. Unique up to a rotation
/// about the e_n axis.
inline Isometry normalize_to_standard(const TangentVector& normal) {
  const Point& p = normal.base;
  validate(p);
  const int n = p.dim();
  const double nn = norm(normal.v);
  if (!(nn > 0)) throw std::invalid_argument("normalize_to_standard: zero normal");

  Isometry phi;
  const Vec shift = -horizontal(p.x);
  if (norm(shift) > 0) phi.then(HorizontalTranslation{shift});
  if (p.height() != 1.0) phi.then(Dilation{1.0 / p.height()});

  // Euclidean unit direction of the normal at e_n (translations and dilations
  // do not change directions).
  const Vec w = normal.v / nn;
  const Vec wbar = horizontal(w);
  const double hb = norm(wbar);
  if (hb > 1e-15 || w.back() < 0) {
    // The half-sphere through e_n with normal (w - e_n) at e_n reflects w to e_n.
    // Its center c satisfies e_n - c parallel to w - e_n.
    const double one_minus_wn = w.back() > 0 ? hb * hb / (1.0 + w.back()) : 1.0 - w.back();
    Vec c = wbar / one_minus_wn;
    const double radius = std::sqrt(norm2(c) + 1.0);
    phi.then(Inversion{c, radius});
    // Fix orientation with a reflection of the boundary plane through the axis.
    Mat flip = Mat::Identity(n - 1, n - 1);
    flip(0, 0) = -1.0;
    phi.then(HorizontalRotation{flip});
  }
  return phi;
}

/// Random isometry composed of all four generator kinds.
template <class Rng>
Isometry random_isometry(Rng& rng, int n) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::normal_distribution<double> gauss;
  Isometry phi;
  Vec t(n);
  for (int i = 0; i + 1 < n; ++i) t[i] = uni(rng);
  phi.then(HorizontalTranslation{t});
  phi.then(Dilation{std::exp(0.7 * uni(rng))});
  Mat a(n - 1, n - 1);
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Mat> qr(a);
  phi.then(HorizontalRotation{Mat(qr.householderQ())});
  Vec c(n);
  for (int i = 0; i + 1 < n; ++i) c[i] = 2.0 * uni(rng);
  phi.then(Inversion{c, std::exp(0.5 * uni(rng))});
  return phi;
}

}  // namespace alexlab::hyperbolic
