#pragma once

#include <array>
#include <cmath>

#include "alexlab/core/vec.hpp"

namespace alexlab {

/// Second-order forward-mode jet: value, gradient and Hessian with respect to
/// up to kMaxDim seeded variables. Used to get exact first and second
/// derivatives of implicit surface functions.
class Jet {
 public:
  Jet() = default;
  Jet(double value) : v_(value) {}  // NOLINT(google-explicit-constructor)

  static Jet variable(double value, int n, int index) {
    Jet j(value);
    j.n_ = n;
    j.g_[index] = 1.0;
    return j;
  }

  double value() const { return v_; }
  int vars() const { return n_; }
  double grad(int i) const { return g_[i]; }
  double hess(int i, int j) const { return h_[i * kMaxDim + j]; }

  Vec gradient(int n) const {
    Vec g(n);
    for (int i = 0; i < n; ++i) g[i] = g_[i];
    return g;
  }

  Jet operator-() const {
    Jet r = *this;
    r.v_ = -v_;
    for (int i = 0; i < n_; ++i) r.g_[i] = -g_[i];
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.h_[i * kMaxDim + j] = -h_[i * kMaxDim + j];
    return r;
  }

  Jet& operator+=(const Jet& o) {
    widen(o);
    v_ += o.v_;
    for (int i = 0; i < n_; ++i) g_[i] += o.g_[i];
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) h_[i * kMaxDim + j] += o.h_[i * kMaxDim + j];
    return *this;
  }
  Jet& operator-=(const Jet& o) { return *this += -o; }

  Jet& operator*=(const Jet& o) {
    widen(o);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        const int k = i * kMaxDim + j;
        h_[k] = v_ * o.h_[k] + o.v_ * h_[k] + g_[i] * o.g_[j] + o.g_[i] * g_[j];
      }
    for (int i = 0; i < n_; ++i) g_[i] = v_ * o.g_[i] + o.v_ * g_[i];
    v_ *= o.v_;
    return *this;
  }
  Jet& operator/=(const Jet& o) { return *this *= reciprocal(o); }

  /// Applies a scalar function given its value and first two derivatives at
  /// the current value.
  Jet chain(double f, double df, double d2f) const {
    Jet r;
    r.n_ = n_;
    r.v_ = f;
    for (int i = 0; i < n_; ++i) r.g_[i] = df * g_[i];
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        const int k = i * kMaxDim + j;
        r.h_[k] = df * h_[k] + d2f * g_[i] * g_[j];
      }
    return r;
  }

  friend Jet reciprocal(const Jet& x) {
    const double v = x.v_;
    return x.chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
  }

 private:
  void widen(const Jet& o) {
    if (o.n_ > n_) n_ = o.n_;
  }

  double v_ = 0.0;
  int n_ = 0;
  std::array<double, kMaxDim> g_{};
  std::array<double, kMaxDim * kMaxDim> h_{};
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }

inline Jet sqrt(const Jet& x) {
  const double s = std::sqrt(x.value());
  return x.chain(s, 0.5 / s, -0.25 / (s * x.value()));
}
inline Jet exp(const Jet& x) {
  const double e = std::exp(x.value());
  return x.chain(e, e, e);
}
inline Jet log(const Jet& x) {
  const double v = x.value();
  return x.chain(std::log(v), 1.0 / v, -1.0 / (v * v));
}
inline Jet atanh(const Jet& x) {
  const double v = x.value();
  const double d = 1.0 / (1.0 - v * v);
  return x.chain(std::atanh(v), d, 2.0 * v * d * d);
}
inline Jet asinh(const Jet& x) {
  const double v = x.value();
  const double w = 1.0 / std::sqrt(1.0 + v * v);
  return x.chain(std::asinh(v), w, -v * w * w * w);
}

/// Seeds a point as n independent jet variables.
inline SmallVec<Jet> make_jets(const Vec& x) {
  SmallVec<Jet> out(x.size());
  for (int i = 0; i < x.size(); ++i) out[i] = Jet::variable(x[i], x.size(), i);
  return out;
}

}  // namespace alexlab
