#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "alexlab/core/vec.hpp"

namespace alexlab::moving_planes {

/// Neighbor graph of unit parameter directions: i ~ j when |u_i - u_j| is
/// below `radius`. Cells of a uniform grid of side `radius` bucket the
/// points, so neighbors are found in the 3^n surrounding cells.
class SampleGraph {
 public:
  SampleGraph() = default;

  SampleGraph(const std::vector<Vec>& u, double radius) : u_(u), radius_(radius) {
    for (int i = 0; i < static_cast<int>(u_.size()); ++i) cells_[key(u_[i])].push_back(i);
    adj_.resize(u_.size());
    for (int i = 0; i < static_cast<int>(u_.size()); ++i) {
      visit(u_[i], [&](int j) {
        if (j != i && norm(u_[i] - u_[j]) < radius_) adj_[i].push_back(j);
      });
      std::sort(adj_[i].begin(), adj_[i].end());
    }
  }

  const std::vector<int>& neighbors(int i) const { return adj_[i]; }
  int size() const { return static_cast<int>(u_.size()); }
  double radius() const { return radius_; }

  /// Index of the sample direction closest to u (searching outward if the
  /// surrounding cells are empty).
  int nearest(const Vec& u) const {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    visit(u, [&](int j) {
      const double d = norm2(u - u_[j]);
      if (d < bd) {
        bd = d;
        best = j;
      }
    });
    if (best >= 0) return best;
    for (int j = 0; j < size(); ++j) {
      const double d = norm2(u - u_[j]);
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    return best;
  }

  /// Connected component of `seed` inside the node subset `allowed`.
  std::vector<char> component(int seed, const std::vector<char>& allowed) const {
    std::vector<char> in(u_.size(), 0);
    if (seed < 0 || !allowed[seed]) return in;
    std::vector<int> stack{seed};
    in[seed] = 1;
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      for (int j : adj_[i]) {
        if (allowed[j] && !in[j]) {
          in[j] = 1;
          stack.push_back(j);
        }
      }
    }
    return in;
  }

  /// Number of connected components of the subset.
  int component_count(const std::vector<char>& allowed) const {
    std::vector<char> seen(u_.size(), 0);
    int count = 0;
    for (int i = 0; i < size(); ++i) {
      if (!allowed[i] || seen[i]) continue;
      ++count;
      const std::vector<char> c = component(i, allowed);
      for (int j = 0; j < size(); ++j) seen[j] |= c[j];
    }
    return count;
  }

 private:
  using Key = std::array<int, kMaxDim>;

  Key key(const Vec& u) const {
    Key k{};
    for (int i = 0; i < u.size(); ++i) k[i] = static_cast<int>(std::floor(u[i] / radius_));
    return k;
  }

  template <class F>
  void visit(const Vec& u, F&& f) const {
    const Key base = key(u);
    const int n = u.size();
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (int c = 0; c < total; ++c) {
      Key k = base;
      int r = c;
      for (int i = 0; i < n; ++i) {
        k[i] += r % 3 - 1;
        r /= 3;
      }
      const auto it = cells_.find(k);
      if (it == cells_.end()) continue;
      for (int j : it->second) f(j);
    }
  }

  std::vector<Vec> u_;
  double radius_ = 0.0;
  std::map<Key, std::vector<int>> cells_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace alexlab::moving_planes
