#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <concepts>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace alexlab {

/// Largest ambient dimension supported by the fixed-capacity vector types.
inline constexpr int kMaxDim = 6;

/// Stack-allocated vector with runtime length <= kMaxDim.
///
/// Templated on the scalar so that the same geometric maps can be evaluated
/// on plain doubles and on second-order jets (see jet.hpp).
template <class T>
class SmallVec {
 public:
  SmallVec() = default;

  explicit SmallVec(int n, const T& fill = T(0)) : n_(n) {
    if (n < 0 || n > kMaxDim) {
      throw std::length_error("SmallVec: dimension " + std::to_string(n) + " out of range");
    }
    for (int i = 0; i < n; ++i) d_[i] = fill;
  }

  SmallVec(std::initializer_list<T> xs) : n_(static_cast<int>(xs.size())) {
    if (n_ > kMaxDim) throw std::length_error("SmallVec: initializer too long");
    int i = 0;
    for (const T& x : xs) d_[i++] = x;
  }

  static SmallVec unit(int n, int i) {
    SmallVec v(n);
    v[i] = T(1);
    return v;
  }

  int size() const { return n_; }
  T& operator[](int i) {
    assert(i >= 0 && i < n_);
    return d_[i];
  }
  const T& operator[](int i) const {
    assert(i >= 0 && i < n_);
    return d_[i];
  }
  T& back() { return d_[n_ - 1]; }
  const T& back() const { return d_[n_ - 1]; }

  T* begin() { return d_.data(); }
  T* end() { return d_.data() + n_; }
  const T* begin() const { return d_.data(); }
  const T* end() const { return d_.data() + n_; }

  SmallVec& operator+=(const SmallVec& o) {
    for (int i = 0; i < n_; ++i) d_[i] += o.d_[i];
    return *this;
  }
  SmallVec& operator-=(const SmallVec& o) {
    for (int i = 0; i < n_; ++i) d_[i] -= o.d_[i];
    return *this;
  }
  template <class S>
  SmallVec& operator*=(const S& s) {
    for (int i = 0; i < n_; ++i) d_[i] = d_[i] * s;
    return *this;
  }
  template <class S>
  SmallVec& operator/=(const S& s) {
    for (int i = 0; i < n_; ++i) d_[i] = d_[i] / s;
    return *this;
  }

 private:
  std::array<T, kMaxDim> d_{};
  int n_ = 0;
};

using Vec = SmallVec<double>;

template <class T>
SmallVec<T> operator+(SmallVec<T> a, const SmallVec<T>& b) {
  return a += b;
}
template <class T>
SmallVec<T> operator-(SmallVec<T> a, const SmallVec<T>& b) {
  return a -= b;
}
template <class T>
SmallVec<T> operator-(SmallVec<T> a) {
  for (auto& x : a) x = -x;
  return a;
}
template <class T>
SmallVec<T> operator*(SmallVec<T> a, const T& s) {
  return a *= s;
}
template <class T>
SmallVec<T> operator*(const T& s, SmallVec<T> a) {
  return a *= s;
}
template <class T>
  requires(!std::same_as<T, double>)
SmallVec<T> operator*(double s, SmallVec<T> a) {
  return a *= s;
}
template <class T>
  requires(!std::same_as<T, double>)
SmallVec<T> operator*(SmallVec<T> a, double s) {
  return a *= s;
}
template <class T, class S>
SmallVec<T> operator/(SmallVec<T> a, const S& s) {
  return a /= s;
}

template <class T>
T dot(const SmallVec<T>& a, const SmallVec<T>& b) {
  T acc(0);
  for (int i = 0; i < a.size(); ++i) acc = acc + a[i] * b[i];
  return acc;
}

template <class T>
T norm2(const SmallVec<T>& a) {
  return dot(a, a);
}

inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline double max_abs_diff(const Vec& a, const Vec& b) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Copy of `a` with the last coordinate set to zero (projection onto the
/// boundary plane of the half-space model).
template <class T>
SmallVec<T> horizontal(SmallVec<T> a) {
  a.back() = T(0);
  return a;
}

}  // namespace alexlab
