#pragma once

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "alexlab/core/parallel.hpp"
#include "alexlab/hyperbolic/transport.hpp"
#include "alexlab/moving_planes/plane_family.hpp"
#include "alexlab/moving_planes/sample_graph.hpp"
#include "alexlab/surfaces/surface.hpp"

namespace alexlab::moving_planes {

using surfaces::Sample;
using surfaces::Surface;

/// Containment scan as a list of (s, margin) pairs, from the top down.
using MarginProfile = std::vector<std::pair<double, double>>;

/// The containment predicate never failed, or the bracket could not be
/// established. Carries the margin profile for diagnostics.
class EngineFailure : public std::runtime_error {
 public:
  EngineFailure(const std::string& what, MarginProfile profile)
      : std::runtime_error(what), profile_(std::move(profile)) {}
  const MarginProfile& profile() const { return profile_; }

 private:
  MarginProfile profile_;
};

/// The sample set is too coarse to resolve a cap around the tangency point.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EngineOptions {
  double tol_s = 1e-9;            // bisection width for the critical value
  double containment_tol = 1e-8;  // relative to the base radius r0
  int scan_steps = 64;            // coarse downward scan before bisection
  int threads = 1;
};

struct Containment {
  bool contained = true;
  bool vacuous = false;  // empty cap
  double margin = std::numeric_limits<double>::infinity();
  int cap_size = 0;
};

enum class Tangency { Interior, Boundary };

inline const char* to_string(Tangency t) { return t == Tangency::Interior ? "interior" : "boundary"; }

struct CriticalResult {
  PlaneFamily family;
  double m = 0.0;
  double lo = 0.0;  // containment fails here
  double hi = 0.0;  // containment holds here
  Point p0;
  Tangency kind = Tangency::Interior;
  double p0_plane_distance = 0.0;
  MarginProfile profile;
  bool monotone = true;
  double margin_min = 0.0;  // smallest margin among the contained scan levels

  Hyperplane plane() const { return family.plane(m); }
};

struct Cap {
  int side = 1;  // +1: reflected cap side, -1: remaining side
  double level = 0.0;
  std::vector<int> indices;     // sample indices
  std::vector<Point> reflected; // reflections of the + samples (empty for -1)
};

struct CapPair {
  Cap sigma;      // component of the reflected cap containing p0
  Cap sigma_hat;  // component of the remaining side containing p0
  int plus_components = 0;
  int minus_components = 0;
};

struct Defects {
  double sup_defect = 0.0;
  double neighborhood_defect = 0.0;
  double max_distance = 0.0;     // max d(p, p_hat)
  double max_normal_term = 0.0;  // max |N_p - tau N_phat|
  int evaluated = 0;
  int flagged = 0;  // geodesic missed Sigma_hat within the horizon
};

struct DirectionReport {
  CriticalResult critical;
  int sigma_size = 0;
  int sigma_hat_size = 0;
  Defects defects;
};

/// Moving-planes engine on a fixed sample set of a star-shaped surface.
class Engine {
 public:
  Engine(const Surface& s, std::vector<Sample> samples, EngineOptions opt = {})
      : surface_(s), samples_(std::move(samples)), opt_(opt) {
    if (samples_.empty()) throw std::invalid_argument("Engine: empty sample set");
    const int n = s.dim();
    const double count = static_cast<double>(samples_.size());
    double area = 0.0;
    double reach = 0.0;
    for (const Sample& x : samples_) {
      area += x.weight;
      reach = std::max(reach, hyperbolic::dist(s.center(), x.p));
    }
    spacing_ = std::pow(area / count, 1.0 / (n - 1));
    angular_ = std::pow(surfaces::unit_sphere_area(n) / count, 1.0 / (n - 1));
    diameter_ = 2.0 * reach;
    std::vector<Vec> u;
    u.reserve(samples_.size());
    for (const Sample& x : samples_) u.push_back(x.u);
    graph_ = SampleGraph(u, 2.5 * angular_);
  }

  Engine(const Surface& s, int count, EngineOptions opt = {}) : Engine(s, s.samples(count, opt.threads), opt) {}

  const Surface& surface() const { return surface_; }
  const std::vector<Sample>& samples() const { return samples_; }
  const EngineOptions& options() const { return opt_; }
  const SampleGraph& graph() const { return graph_; }
  /// Typical hyperbolic distance between neighboring samples.
  double spacing() const { return spacing_; }
  double containment_tol() const { return opt_.containment_tol * surface_.spec().r0; }

  std::vector<double> sides(const PlaneFamily& f) const {
    std::vector<double> out(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) out[i] = f.side(samples_[i].p);
    return out;
  }

  /// Does the reflection of the cap {side >= s} lie in the closed interior
  /// (within the containment tolerance)? The margin is the smallest signed
  /// depth of a reflected cap sample.
  Containment cap_contained(const PlaneFamily& f, double s, const std::vector<double>& side) const {
    Containment c;
    const Isometry r = f.reflection(s);
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      if (side[i] < s) continue;
      ++c.cap_size;
      c.margin = std::min(c.margin, surface_.signed_depth(r(samples_[i].p)));
    }
    c.vacuous = c.cap_size == 0;
    c.contained = c.vacuous || c.margin >= -containment_tol();
    return c;
  }

  Containment cap_contained(const PlaneFamily& f, double s) const { return cap_contained(f, s, sides(f)); }

  /// Critical value m = inf{s : reflected cap contained}, by a downward scan
  /// from the top of the surface followed by bisection to tol_s.
  CriticalResult critical_value(const PlaneFamily& f) const {
    const std::vector<double> side = sides(f);
    const double smax = *std::max_element(side.begin(), side.end());
    const double smin = *std::min_element(side.begin(), side.end());
    const double step = (smax - smin) / opt_.scan_steps;
    MarginProfile profile;
    int first_fail = -1;
    bool monotone = true;
    double margin_min = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= opt_.scan_steps; ++k) {
      const double s = smax - k * step;
      const Containment c = cap_contained(f, s, side);
      profile.emplace_back(s, c.margin);
      if (!c.contained && first_fail < 0) first_fail = k;
      if (c.contained && first_fail >= 0) monotone = false;
      if (c.contained && first_fail < 0) margin_min = std::min(margin_min, c.margin);
    }
    if (first_fail < 0) throw EngineFailure("critical_value: containment never fails", profile);
    if (first_fail == 0) throw EngineFailure("critical_value: containment fails at the top level", profile);
    double lo = smax - first_fail * step;
    double hi = smax - (first_fail - 1) * step;
    while (hi - lo > opt_.tol_s) {
      const double mid = 0.5 * (lo + hi);
      (cap_contained(f, mid, side).contained ? hi : lo) = mid;
    }
    CriticalResult out{f, 0.5 * (lo + hi), lo, hi, {}, Tangency::Interior, 0.0, std::move(profile), monotone, margin_min};
    locate_tangency(out, side);
    return out;
  }

  /// True/false pair of the bracket certificate: containment at m + tol_s
  /// and at m - tol_s.
  std::pair<bool, bool> certificate(const CriticalResult& c) const {
    const std::vector<double> side = sides(c.family);
    return {cap_contained(c.family, c.m + opt_.tol_s, side).contained,
            cap_contained(c.family, c.m - opt_.tol_s, side).contained};
  }

  /// Sigma and Sigma_hat by flood fill on the sample graph, seeded at p0.
  CapPair caps_sigma(const CriticalResult& c) const {
    const std::vector<double> side = sides(c.family);
    const int count = static_cast<int>(samples_.size());
    std::vector<char> plus(count);
    std::vector<char> minus(count);
    for (int i = 0; i < count; ++i) {
      plus[i] = side[i] >= c.m;
      minus[i] = side[i] <= c.m;
    }
    const Isometry r = c.family.reflection(c.m);
    const int seed_plus = seed_index(surface_.direction_of(r(c.p0)), plus);
    const int seed_minus = seed_index(surface_.direction_of(c.p0), minus);
    CapPair out;
    out.plus_components = graph_.component_count(plus);
    out.minus_components = graph_.component_count(minus);
    const std::vector<char> sp = graph_.component(seed_plus, plus);
    const std::vector<char> sm = graph_.component(seed_minus, minus);
    out.sigma = Cap{1, c.m, {}, {}};
    out.sigma_hat = Cap{-1, c.m, {}, {}};
    for (int i = 0; i < count; ++i) {
      if (sp[i]) {
        out.sigma.indices.push_back(i);
        out.sigma.reflected.push_back(r(samples_[i].p));
      }
      if (sm[i]) out.sigma_hat.indices.push_back(i);
    }
    return out;
  }

  /// sup over Sigma of d(p, p_hat) + |N_p - tau_{p_hat}^p N_{p_hat}|_p, where
  /// p_hat is the first point of Sigma_hat on the geodesic from p in the
  /// direction -N_p; and the largest distance from a sample of the
  /// remaining side to the reflected surface (first-order distance
  /// |F| / |grad F|_g).
  Defects symmetry_defect(const CriticalResult& c, const CapPair& caps, int threads = 1) const {
    const Isometry r = c.family.reflection(c.m);
    const int count = static_cast<int>(samples_.size());
    std::vector<char> in_hat(count, 0);
    for (int i : caps.sigma_hat.indices) in_hat[i] = 1;
    const double tol = 10.0 * containment_tol();
    const double horizon = 4.0 * diameter_;
    const double dt = 0.25 * spacing_;

    struct Item {
      double defect = 0.0;
      double distance = 0.0;
      double normal = 0.0;
      bool ok = false;
    };
    const int m = static_cast<int>(caps.sigma.indices.size());
    std::vector<Item> items(m);
    parallel_for(m, threads, [&](int k) {
      const Sample& y = samples_[caps.sigma.indices[k]];
      const Point& p = caps.sigma.reflected[k];
      const TangentVector np = r.push(y.normal);
      const Vec dir = np.v * -1.0;
      auto f = [&](double t) { return surface_.signed_depth(hyperbolic::exp_map(TangentVector{p, dir * t})); };
      double t_hit = 0.0;
      const double f0 = f(0.0);
      if (f0 > tol) {
        double a = 0.0;
        double fa = f0;
        double b = dt;
        double fb = f(b);
        while (fb > 0 && b < horizon) {
          a = b;
          fa = fb;
          b += dt;
          fb = f(b);
        }
        if (fb > 0) return;
        std::uintmax_t iters = 100;
        const auto br = boost::math::tools::toms748_solve(f, a, b, fa, fb,
                                                          boost::math::tools::eps_tolerance<double>(50), iters);
        t_hit = 0.5 * (br.first + br.second);
      } else if (f0 < -tol) {
        return;
      }
      const Point ph = t_hit > 0 ? hyperbolic::exp_map(TangentVector{p, dir * t_hit}) : p;
      if (c.family.side(ph) > c.m + spacing_) return;
      const int j = graph_.nearest(surface_.direction_of(ph));
      bool member = in_hat[j];
      for (int q : graph_.neighbors(j)) member = member || in_hat[q];
      if (!member) return;
      Item it;
      it.distance = t_hit > 0 ? hyperbolic::dist(p, ph) : 0.0;
      const TangentVector nh = surface_.inward_normal(ph);
      const Vec moved = t_hit > 0 ? hyperbolic::parallel_transport(ph, p, nh).v : nh.v;
      it.normal = hyperbolic::hyperbolic_norm(p, np.v - moved);
      it.defect = it.distance + it.normal;
      it.ok = true;
      items[k] = it;
    });

    Defects d;
    for (const Item& it : items) {
      if (!it.ok) {
        ++d.flagged;
        continue;
      }
      ++d.evaluated;
      d.sup_defect = std::max(d.sup_defect, it.defect);
      d.max_distance = std::max(d.max_distance, it.distance);
      d.max_normal_term = std::max(d.max_normal_term, it.normal);
    }

    std::vector<double> nb(count, 0.0);
    const std::vector<double> side = sides(c.family);
    parallel_for(count, threads, [&](int i) {
      if (side[i] > c.m) return;
      nb[i] = surface_distance(r(samples_[i].p));
    });
    d.neighborhood_defect = *std::max_element(nb.begin(), nb.end());
    return d;
  }

  DirectionReport analyze(const TangentVector& omega, int threads = 1) const {
    DirectionReport rep{critical_value(PlaneFamily(omega)), 0, 0, {}};
    const CapPair caps = caps_sigma(rep.critical);
    rep.sigma_size = static_cast<int>(caps.sigma.indices.size());
    rep.sigma_hat_size = static_cast<int>(caps.sigma_hat.indices.size());
    rep.defects = symmetry_defect(rep.critical, caps, threads);
    return rep;
  }

  /// Independent directions in parallel; results are ordered as the input.
  std::vector<DirectionReport> analyze_all(const std::vector<TangentVector>& directions) const {
    std::vector<std::optional<DirectionReport>> tmp(directions.size());
    parallel_for(static_cast<int>(directions.size()), opt_.threads,
                 [&](int i) { tmp[i] = analyze(directions[i]); });
    std::vector<DirectionReport> out;
    out.reserve(tmp.size());
    for (auto& r : tmp) out.push_back(std::move(*r));
    return out;
  }

  /// First-order distance from x to the surface, |F| / |grad F|_g.
  double surface_distance(const Point& x) const {
    const Jet f = surface_.level(make_jets(x.x));
    return std::abs(f.value()) / (x.height() * norm(f.gradient(x.dim())));
  }

 private:
  /// p0 maximizes tangency: the reflected cap sample minimizing
  /// depth / max(d(x, pi), spacing), refined by a pattern search over the
  /// parameter sphere.
  void locate_tangency(CriticalResult& c, const std::vector<double>& side) const {
    const Isometry r = c.family.reflection(c.hi);
    const Hyperplane pi = c.family.plane(c.hi);
    auto ratio = [&](const Point& y) {
      const Point x = r(y);
      return surface_.signed_depth(x) / std::max(std::abs(pi.signed_distance(x)), spacing_);
    };
    int best = -1;
    double bv = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      if (side[i] < c.hi) continue;
      const double v = ratio(samples_[i].p);
      if (v < bv) {
        bv = v;
        best = static_cast<int>(i);
      }
    }
    Vec u = samples_[best].u;
    const int n = u.size();
    auto objective = [&](const Vec& w) {
      const Point y = surface_.position(w);
      if (c.family.side(y) < c.hi) return std::numeric_limits<double>::infinity();
      return ratio(y);
    };
    double step = angular_;
    while (step > 1e-6 * angular_) {
      bool moved = false;
      for (int j = 0; j < n && !moved; ++j) {
        Vec t = Vec::unit(n, j);
        t -= u * dot(t, u);
        if (norm(t) < 0.3) continue;
        t /= norm(t);
        for (double sign : {1.0, -1.0}) {
          Vec w = u + t * (sign * step);
          w /= norm(w);
          const double v = objective(w);
          if (v < bv) {
            bv = v;
            u = w;
            moved = true;
            break;
          }
        }
      }
      if (!moved) step *= 0.5;
    }
    c.p0 = r(surface_.position(u));
    c.p0_plane_distance = std::abs(pi.signed_distance(c.p0));
    c.kind = c.p0_plane_distance <= spacing_ ? Tangency::Boundary : Tangency::Interior;
  }

  int seed_index(const Vec& u, const std::vector<char>& allowed) const {
    int j = graph_.nearest(u);
    if (!allowed[j]) {
      int best = -1;
      double bd = std::numeric_limits<double>::infinity();
      for (int q : graph_.neighbors(j)) {
        if (!allowed[q]) continue;
        const double d = norm2(u - samples_[q].u);
        if (d < bd) {
          bd = d;
          best = q;
        }
      }
      if (best < 0) throw ResolutionError("caps_sigma: no cap sample near p0; increase the sample count");
      j = best;
    }
    bool linked = false;
    for (int q : graph_.neighbors(j)) linked = linked || allowed[q];
    if (!linked) throw ResolutionError("caps_sigma: p0 is isolated in the sample graph; increase the sample count");
    return j;
  }

  Surface surface_;
  std::vector<Sample> samples_;
  EngineOptions opt_;
  SampleGraph graph_;
  double spacing_ = 0.0;
  double angular_ = 0.0;
  double diameter_ = 0.0;
};

/// Quasi-uniform unit directions at a base point.
inline std::vector<TangentVector> quasi_uniform_directions(const Point& base, int k) {
  std::vector<TangentVector> out;
  for (const Vec& u : surfaces::sphere_directions(base.dim(), k)) out.push_back(TangentVector{base, u * base.height()});
  return out;
}

template <class Rng>
std::vector<TangentVector> random_directions(Rng& rng, const Point& base, int k) {
  std::normal_distribution<double> gauss;
  std::vector<TangentVector> out;
  for (int i = 0; i < k; ++i) {
    Vec u(base.dim());
    for (auto& x : u) x = gauss(rng);
    out.push_back(TangentVector{base, u * (base.height() / norm(u))});
  }
  return out;
}

/// e_1, ..., e_n at the base point.
inline std::vector<TangentVector> coordinate_directions(const Point& base) {
  std::vector<TangentVector> out;
  for (int i = 0; i < base.dim(); ++i) out.push_back(TangentVector{base, Vec::unit(base.dim(), i) * base.height()});
  return out;
}

}  // namespace alexlab::moving_planes
