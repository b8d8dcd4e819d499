#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "alexlab/core/parallel.hpp"
#include "alexlab/projection/section.hpp"

namespace alexlab::projection {

/// Outcome of checking one inequality over all samples of a curve (or a
/// batch of curves). Slack is (bound - value), so negative means violated.
struct BoundReport {
  std::string bound;
  int samples = 0;
  int violations = 0;
  double worst_slack = std::numeric_limits<double>::infinity();

  bool violated() const { return violations > 0; }

  void record(double slack, double value, double rel_tol) {
    ++samples;
    worst_slack = std::min(worst_slack, slack);
    if (slack < -rel_tol * (1.0 + std::abs(value))) ++violations;
  }

  void merge(const BoundReport& o) {
    samples += o.samples;
    violations += o.violations;
    worst_slack = std::min(worst_slack, o.worst_slack);
  }
};

struct CheckOptions {
  double rel_tol = 1e-6;
  /// Negative control: rotate N toward the curve tangent by this angle
  /// before evaluating the bounds.
  double tilt = 0.0;
  /// Points with |nu' . e_n| >= c are checked against the simplified
  /// projected-curvature bound.
  double c = 0.2;
};

/// Geometric quantities of the section curve at one sample.
struct LocalFrame {
  Vec T;         // unit tangent of U'
  Vec N;         // (possibly tilted) unit normal of U
  Vec Np;        // unit normal of U' inside pi, oriented along N
  Vec accel;     // covariant acceleration of the phi-parametrization
  double speed2; // |alpha'|_g^2
};

inline Vec cross3(const Vec& a, const Vec& b) {
  return Vec{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline LocalFrame local_frame(const SectionPoint& sp, double tilt = 0.0) {
  const Point& q = sp.q;
  LocalFrame f;
  f.speed2 = hyperbolic::inner(q, sp.d1, sp.d1);
  // The tangent line of U' is T_qU cap T_q pi, spanned by omega x N.
  f.T = cross3(sp.omega, sp.N.v);
  f.T /= hyperbolic::hyperbolic_norm(q, f.T);
  if (dot(f.T, sp.d1) < 0) f.T *= -1.0;
  f.N = sp.N.v;
  if (tilt != 0.0) {
    Vec t = f.T - f.N * hyperbolic::inner(q, f.T, f.N);
    t /= hyperbolic::hyperbolic_norm(q, t);
    f.N = f.N * std::cos(tilt) + t * std::sin(tilt);
  }
  // Normal of the curve inside pi: orthogonal to omega and T.
  f.Np = cross3(sp.omega, f.T);
  f.Np /= hyperbolic::hyperbolic_norm(q, f.Np);
  if (hyperbolic::inner(q, f.Np, f.N) < 0) f.Np *= -1.0;
  f.accel = covariant_acceleration(q.x, sp.d1, sp.d2);
  return f;
}

struct SectionBoundReports {
  BoundReport normal_ratio{"section curvature between kappa_1/g(N,N') and kappa_{n-1}/g(N,N')"};
  BoundReport angle_form{"section curvature between kappa_1/b and kappa_{n-1}/b, b = sqrt(1 - g(omega,N)^2)"};
};

/// Curvature kappa' of U' inside pi against the principal curvatures of U,
/// with the denominator written as g(N, N') and as sqrt(1 - g(omega, N)^2).
inline SectionBoundReports check_section_bound(const SectionCurve& c, const CheckOptions& opt = {}) {
  SectionBoundReports r;
  for (const SectionPoint& sp : c.points) {
    const LocalFrame f = local_frame(sp, opt.tilt);
    const Point& q = sp.q;
    const double kp = hyperbolic::inner(q, f.accel, f.Np) / f.speed2;
    const double k1 = sp.kappa[0];
    const double k2 = sp.kappa[sp.kappa.size() - 1];
    const double b1 = hyperbolic::inner(q, f.N, f.Np);
    const double g = hyperbolic::inner(q, sp.omega, f.N);
    const double b2 = std::sqrt(std::max(0.0, 1.0 - g * g));
    r.normal_ratio.record(std::min(kp - k1 / b1, k2 / b1 - kp), kp, opt.rel_tol);
    r.angle_form.record(std::min(kp - k1 / b2, k2 / b2 - kp), kp, opt.rel_tol);
  }
  return r;
}

/// Geodesic curvature of U' inside U: |kappa_check'| <= |g(omega,N)| /
/// sqrt(1 - g(omega,N)^2) max|kappa|.
inline BoundReport check_in_surface_bound(const SectionCurve& c, const CheckOptions& opt = {}) {
  BoundReport r{"in-surface curvature <= |g(omega,N)| / sqrt(1 - g(omega,N)^2) max|kappa|"};
  for (const SectionPoint& sp : c.points) {
    const LocalFrame f = local_frame(sp, opt.tilt);
    const Point& q = sp.q;
    // Curvature vector of U' with the components along T and N removed; it
    // is parallel to the in-surface normal, and its length is |kappa_check'|.
    Vec k = f.accel / f.speed2;
    k -= f.T * hyperbolic::inner(q, k, f.T);
    k -= f.N * hyperbolic::inner(q, k, f.N);
    const double kc = hyperbolic::hyperbolic_norm(q, k);
    const double g = hyperbolic::inner(q, sp.omega, f.N);
    double kmax = 0.0;
    for (double k : sp.kappa) kmax = std::max(kmax, std::abs(k));
    const double bound = std::abs(g) / std::sqrt(std::max(1e-300, 1.0 - g * g)) * kmax;
    r.record(bound - std::abs(kc), kc, opt.rel_tol);
  }
  return r;
}

struct ProjectionReports {
  BoundReport general{"projected curvature <= ((nu'.e_n)^2 + q_n^2/R^2)^{-3/2} (max|kappa'| + 3) / R"};
  BoundReport simplified{"projected curvature <= (max|kappa'| + 2) / (c^3 R) where nu'.e_n >= c"};
  double max_kappa_prime = 0.0;
  double orientation_residual = 0.0;  // | |nu''| - 1 | and |nu'' . tangent|
  bool trivial = false;               // vertical plane: the projection is flat
};

/// Curvature of the vertical projection of U' onto the boundary plane, as a
/// planar curve, with pi a half-sphere of Euclidean radius R. For a vertical
/// plane the projection is a segment, kappa'' = 0, and the report is marked
/// trivial.
inline ProjectionReports project_and_check(const SectionCurve& c, const CheckOptions& opt = {}) {
  ProjectionReports r;
  if (c.plane.vertical()) {
    r.trivial = true;
    return r;
  }
  const double R = c.plane.as_half_sphere().radius;
  std::vector<LocalFrame> frames;
  frames.reserve(c.points.size());
  for (const SectionPoint& sp : c.points) {
    frames.push_back(local_frame(sp, opt.tilt));
    const double kp = hyperbolic::inner(sp.q, frames.back().accel, frames.back().Np) / frames.back().speed2;
    r.max_kappa_prime = std::max(r.max_kappa_prime, std::abs(kp));
  }
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const SectionPoint& sp = c.points[i];
    const LocalFrame& f = frames[i];
    const double qn = sp.q.height();
    const double b1 = sp.d1[0];
    const double b2 = sp.d1[1];
    const double speed = std::hypot(b1, b2);
    if (!(speed > 0)) throw std::runtime_error("project_and_check: projection is not regular");
    const double kpp = (b1 * sp.d2[1] - b2 * sp.d2[0]) / (speed * speed * speed);
    // nu'': unit normal of the projected curve, on the side of nu'.
    double m1 = -b2 / speed;
    double m2 = b1 / speed;
    if (m1 * f.Np[0] + m2 * f.Np[1] < 0) {
      m1 = -m1;
      m2 = -m2;
    }
    r.orientation_residual = std::max({r.orientation_residual, std::abs(std::hypot(m1, m2) - 1.0),
                                       std::abs(m1 * b1 + m2 * b2) / speed});
    const double nun = f.Np.back() / qn;
    const double w = std::sqrt(nun * nun + qn * qn / (R * R));
    r.general.record((r.max_kappa_prime + 3.0) / (R * w * w * w) - std::abs(kpp), kpp, opt.rel_tol);
    if (std::abs(nun) >= opt.c) {
      r.simplified.record((r.max_kappa_prime + 2.0) / (opt.c * opt.c * opt.c * R) - std::abs(kpp), kpp, opt.rel_tol);
    }
  }
  return r;
}

/// Residuals of the Hodge-star section normal, evaluated in coordinates where
/// pi is vertical and compared with the normal computed directly.
struct HodgeResiduals {
  double unit = 0.0;         // | |N'|_g - 1 |
  double tangent = 0.0;      // |g(N', T)|
  double in_plane = 0.0;     // |g(N', omega)|
  double plane_offset = 0.0; // |x_1| of the conjugated curve points
  double agreement = 0.0;    // |N'_hodge - N'_direct|_g after pulling back
  double projection = 0.0;   // |N'_direct - normalized projection of N|_g

  double max() const { return std::max({unit, tangent, in_plane, plane_offset, agreement, projection}); }
};

inline HodgeResiduals hodge_normal_check(const SectionCurve& c) {
  const Isometry psi = verticalize(c.plane);
  const Isometry back = psi.inverse();
  HodgeResiduals r;
  for (const SectionPoint& sp : c.points) {
    const LocalFrame f = local_frame(sp);
    const TangentVector Nt = psi.push(sp.N);
    const TangentVector Tt = psi.push(TangentVector{sp.q, f.T});
    const Point& qt = Nt.base;
    const Vec hn = section_normal_hodge(qt, Nt.v);
    const Vec e1{qt.height(), 0.0, 0.0};
    r.unit = std::max(r.unit, std::abs(hyperbolic::hyperbolic_norm(qt, hn) - 1.0));
    r.tangent = std::max(r.tangent, std::abs(hyperbolic::inner(qt, hn, Tt.v)));
    r.in_plane = std::max(r.in_plane, std::abs(hyperbolic::inner(qt, hn, e1)));
    r.plane_offset = std::max(r.plane_offset, std::abs(qt.x[0]) / qt.height());
    const TangentVector pulled = back.push(TangentVector{qt, hn});
    r.agreement = std::max(r.agreement, hyperbolic::hyperbolic_norm(sp.q, pulled.v - f.Np));
    const Vec proj = section_normal(sp.q, sp.N.v, sp.omega);
    r.projection = std::max(r.projection, hyperbolic::hyperbolic_norm(sp.q, proj - f.Np));
  }
  return r;
}

/// Reports of one (surface, plane) configuration.
struct ConfigRecord {
  int id = 0;
  double margin = 0.0;
  SectionBoundReports section;
  BoundReport in_surface{"in-surface curvature"};
  ProjectionReports projected;
  double hodge_residual = 0.0;
};

/// Aggregated result of the randomized check over surface/plane pairs.
struct BatchReport {
  int accepted = 0;
  int skipped = 0;  // non-transversal or missing intersections
  std::vector<ConfigRecord> configs;
  SectionBoundReports section;
  BoundReport in_surface{"in-surface curvature"};
  ProjectionReports projected;
  double hodge_residual = 0.0;
  double min_margin = 1.0;

  bool any_violation() const {
    return section.normal_ratio.violated() || section.angle_form.violated() || in_surface.violated() ||
           projected.general.violated() || projected.simplified.violated();
  }
};

struct RandomConfig {
  surfaces::PerturbedSphereSpec spec;
  Point through;
  Vec normal;
};

/// Perturbed sphere in H^3 and a hyperplane through a point near its center.
template <class Rng>
RandomConfig random_config(Rng& rng, int index) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> gauss;
  static constexpr surfaces::Profile profiles[] = {surfaces::Profile::Zonal2, surfaces::Profile::Cubic,
                                                   surfaces::Profile::Tesseral, surfaces::Profile::Mixed};
  const Point c =
      hyperbolic::half_space_point({2.0 * uni(rng) - 1.0, 2.0 * uni(rng) - 1.0, std::exp(2.0 * uni(rng) - 1.0)});
  const double r0 = 0.4 + 1.1 * uni(rng);
  const double eps = 0.1 * r0 * uni(rng);
  Vec d{gauss(rng), gauss(rng), gauss(rng)};
  d *= 0.6 * r0 * uni(rng) / norm(d) * c.height();
  const Point z = hyperbolic::exp_map(TangentVector{c, d});
  const Vec nrm{gauss(rng), gauss(rng), gauss(rng)};
  return RandomConfig{{c, r0, profiles[index % 4], eps}, z, nrm};
}

/// Runs all checks on `count` transversal random configurations. Candidates
/// whose transversality margin is below `margin` are skipped and counted.
/// Configurations are drawn sequentially from `seed` and evaluated in
/// parallel; the result does not depend on the thread count.
inline BatchReport random_batch(int count, std::uint64_t seed, const CheckOptions& opt = {}, int points = 512,
                                double margin = 0.05, int threads = 1) {
  std::mt19937_64 rng(seed);
  BatchReport out;
  int drawn = 0;
  while (out.accepted < count) {
    if (drawn > 20 * count + 100) throw std::runtime_error("random_batch: too many skipped configurations");
    const int want = count - out.accepted;
    std::vector<RandomConfig> cfg;
    for (int i = 0; i < want; ++i) cfg.push_back(random_config(rng, drawn + i));
    std::vector<std::optional<ConfigRecord>> rec(want);
    parallel_for(want, threads, [&](int i) {
      const Surface s = Surface::perturbed_sphere(cfg[i].spec);
      const Hyperplane pi = Hyperplane::through(cfg[i].through, cfg[i].normal);
      try {
        const SectionCurve curve = section(s, pi, points, margin);
        ConfigRecord r;
        r.margin = curve.min_margin;
        r.section = check_section_bound(curve, opt);
        r.in_surface = check_in_surface_bound(curve, opt);
        r.projected = project_and_check(curve, opt);
        if (opt.tilt == 0.0) r.hodge_residual = hodge_normal_check(curve).max();
        rec[i] = std::move(r);
      } catch (const TransversalityError&) {
      }
    });
    drawn += want;
    for (auto& r : rec) {
      if (!r) {
        ++out.skipped;
        continue;
      }
      r->id = out.accepted++;
      out.min_margin = std::min(out.min_margin, r->margin);
      out.section.normal_ratio.merge(r->section.normal_ratio);
      out.section.angle_form.merge(r->section.angle_form);
      out.in_surface.merge(r->in_surface);
      out.projected.general.merge(r->projected.general);
      out.projected.simplified.merge(r->projected.simplified);
      out.projected.max_kappa_prime = std::max(out.projected.max_kappa_prime, r->projected.max_kappa_prime);
      out.projected.orientation_residual = std::max(out.projected.orientation_residual, r->projected.orientation_residual);
      out.hodge_residual = std::max(out.hodge_residual, r->hodge_residual);
      out.configs.push_back(std::move(*r));
    }
  }
  return out;
}

}  // namespace alexlab::projection
