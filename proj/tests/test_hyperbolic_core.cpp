#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "alexlab/hyperbolic/hyperplane.hpp"
#include "alexlab/hyperbolic/transport.hpp"
#include "testing.hpp"

namespace {

using namespace alexlab;
using namespace alexlab::hyperbolic;
using alexlab::test_support::random_half_space_point;

TEST(Distance, UnitHeightRatio) {
  const Point a = half_space_point({0.0, 0.0, 1.0});
  const Point b = half_space_point({0.0, 0.0, std::exp(1.0)});
  EXPECT_NEAR(dist(a, b), 1.0, 1e-14);
}

TEST(Distance, SelfIsZero) {
  const Point a = half_space_point({0.3, -2.0, 0.7});
  EXPECT_EQ(dist(a, a), 0.0);
}

TEST(Distance, ArccoshFormula) {
  const Point a = half_space_point({0.0, 0.0, 1.0});
  const Point b = half_space_point({1.0, 0.0, 1.0});
  EXPECT_NEAR(dist(a, b), std::acosh(1.5), 1e-14);
  EXPECT_NEAR(dist(a, b), 0.96242365011920689, 1e-12);
}

TEST(Distance, RejectsNonPositiveHeight) {
  EXPECT_THROW(half_space_point({0.0, 0.0, 0.0}), InvalidPoint);
  EXPECT_THROW(half_space_point({0.0, -1.0}), InvalidPoint);
  EXPECT_THROW(ball_point({0.6, 0.8}), InvalidPoint);
  const Point bad{Vec{0.0, -1.0}, Model::HalfSpace};
  EXPECT_THROW(dist(bad, base_point(2)), InvalidPoint);
}

TEST(Distance, MetricAxioms) {
  std::mt19937_64 rng(7);
  for (int n = 2; n <= 4; ++n) {
    for (int i = 0; i < 2000; ++i) {
      const Point a = random_half_space_point(rng, n);
      const Point b = random_half_space_point(rng, n);
      const Point c = random_half_space_point(rng, n);
      const double ab = dist(a, b);
      const double bc = dist(b, c);
      const double ac = dist(a, c);
      EXPECT_GE(ab, 0.0);
      EXPECT_NEAR(ab, dist(b, a), 1e-10 * (1.0 + ab));
      EXPECT_LE(ac, ab + bc + 1e-10);
    }
  }
}

TEST(Distance, LocalComparabilityNearBase) {
  // dist(q, e_n) and |q - e_n| are comparable on B_1(e_n).
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const Point e = base_point(3);
  double lo = 1e300;
  double hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    Vec dir{gauss(rng), gauss(rng), gauss(rng)};
    dir /= norm(dir);
    const Point q = exp_map(TangentVector{e, dir * uni(rng)});
    const double d = dist(q, e);
    if (d < 1e-12) continue;
    const double ratio = d / norm(q.x - e.x);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  EXPECT_GT(lo, std::exp(-0.5) / (2.0 * std::sqrt(2.0 * 2.0)));
  EXPECT_LT(hi, 10.0);
}

TEST(Geodesic, VerticalSegment) {
  const GeodesicSegment g = geodesic(half_space_point({0.0, 0.0, 1.0}), half_space_point({0.0, 0.0, 2.0}));
  EXPECT_TRUE(g.vertical());
  EXPECT_NEAR(g.length(), std::log(2.0), 1e-15);
  EXPECT_FALSE(g.circle().has_value());
  EXPECT_NEAR(g.midpoint().height(), std::sqrt(2.0), 1e-14);
}

TEST(Geodesic, SymmetricArc) {
  const double h = 0.6;
  const GeodesicSegment g = geodesic(half_space_point({1.0, h}), half_space_point({-1.0, h}));
  const auto c = g.circle();
  ASSERT_TRUE(c.has_value());
  EXPECT_NEAR(c->center[0], 0.0, 1e-14);
  EXPECT_NEAR(c->radius, std::sqrt(1.0 + h * h), 1e-14);
  EXPECT_NEAR(g.midpoint()[0], 0.0, 1e-13);
}

TEST(Geodesic, CircleThroughEndpoints) {
  const Point p = half_space_point({0.0, 0.0, 1.0});
  const Point q = half_space_point({1.0, 0.0, 2.0});
  const auto c = geodesic(p, q).circle();
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->center.back(), 0.0);
  EXPECT_NEAR(norm(p.x - c->center), c->radius, 1e-12);
  EXPECT_NEAR(norm(q.x - c->center), c->radius, 1e-12);
  // Independent solve: center (x, 0, 0) with x^2 + 1 = (1 - x)^2 + 4 gives x = 2.
  EXPECT_NEAR(c->center[0], 2.0, 1e-12);
  EXPECT_NEAR(c->radius, std::sqrt(5.0), 1e-12);
}

TEST(Geodesic, MidpointAndUnitSpeed) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const Point p = random_half_space_point(rng, 3);
    const Point q = random_half_space_point(rng, 3);
    const GeodesicSegment g = geodesic(p, q);
    EXPECT_LT(max_abs_diff(g.point(g.length()).x, q.x), 1e-9 * (1.0 + norm(q.x)));
    const Point m = g.midpoint();
    EXPECT_NEAR(dist(p, m), 0.5 * g.length(), 1e-9);
    EXPECT_NEAR(dist(m, q), 0.5 * g.length(), 1e-9);
    for (double t : {0.0, 0.3, 0.77}) {
      const double s = t * g.length();
      EXPECT_NEAR(hyperbolic_norm(g.point(s), g.velocity(s)), 1.0, 1e-12);
    }
  }
}

TEST(Geodesic, DegenerateThrows) {
  const Point p = half_space_point({0.5, 1.0});
  EXPECT_THROW(geodesic(p, p), DegenerateSegment);
}

TEST(ExpLog, VerticalExp) {
  const Point e = base_point(3);
  for (double s : {-2.0, 0.5, 3.0}) {
    const Point q = exp_map(TangentVector{e, Vec{0.0, 0.0, s}});
    EXPECT_NEAR(q.height(), std::exp(s), 1e-13 * std::exp(s));
    EXPECT_NEAR(q[0], 0.0, 1e-15);
  }
}

TEST(ExpLog, ZeroVectorAndCoincidentPoints) {
  const Point p = half_space_point({1.0, 2.0, 0.5});
  EXPECT_EQ(max_abs_diff(exp_map(TangentVector{p, Vec(3)}).x, p.x), 0.0);
  EXPECT_EQ(norm(log_map(p, p).v), 0.0);
}

TEST(ExpLog, BallLogAtOrigin) {
  const Point o = ball_point({0.0, 0.0, 0.0});
  const Point p = ball_point({0.3, -0.2, 0.4});
  const TangentVector v = log_map(o, p);
  const double r = norm(p.x);
  // Hyperbolic length and direction; the conformal factor at the origin is 2,
  // so in an orthonormal frame the components are 2 atanh|p| p/|p|.
  EXPECT_NEAR(hyperbolic_norm(v), 2.0 * std::atanh(r), 1e-12);
  const Vec orthonormal = v.v * conformal_factor(o);
  const Vec expected = p.x * (2.0 * std::atanh(r) / r);
  EXPECT_LT(max_abs_diff(orthonormal, expected), 1e-12);
  EXPECT_LT(max_abs_diff(exp_map(v).x, p.x), 1e-12);
}

TEST(ExpLog, RoundTripRandomPairs) {
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + i % 3;
    const Point p = random_half_space_point(rng, n);
    const Point q = random_half_space_point(rng, n);
    const TangentVector v = log_map(p, q);
    EXPECT_NEAR(hyperbolic_norm(v), dist(p, q), 1e-10 * (1.0 + dist(p, q)));
    worst = std::max(worst, max_abs_diff(exp_map(v).x, q.x) / (1.0 + norm(q.x)));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Isometry, InvariancePerGeneratorAndComposite) {
  std::mt19937_64 rng(17);
  for (int n = 2; n <= 4; ++n) {
    for (int k = 0; k < 50; ++k) {
      const Isometry phi = random_isometry(rng, n);
      for (const Generator& g : phi.generators()) {
        Isometry single;
        single.then(g);
        const Point a = random_half_space_point(rng, n);
        const Point b = random_half_space_point(rng, n);
        EXPECT_NEAR(dist(single(a), single(b)), dist(a, b), 1e-10 * (1.0 + dist(a, b)));
      }
      for (int i = 0; i < 20; ++i) {
        const Point a = random_half_space_point(rng, n);
        const Point b = random_half_space_point(rng, n);
        EXPECT_NEAR(dist(phi(a), phi(b)), dist(a, b), 1e-10 * (1.0 + dist(a, b)));
        EXPECT_LT(max_abs_diff(phi.inverse()(phi(a)).x, a.x), 1e-10 * (1.0 + norm(a.x)));
      }
    }
  }
}

TEST(Isometry, ParityAndPushforwardNorm) {
  std::mt19937_64 rng(19);
  const Isometry phi = random_isometry(rng, 3);
  int expected = 1;
  for (const Generator& g : phi.generators()) {
    Isometry single;
    single.then(g);
    expected *= single.parity();
  }
  EXPECT_EQ(phi.parity(), expected);
  Isometry inv;
  inv.then(Inversion{Vec{0.0, 0.0, 0.0}, 1.0});
  EXPECT_EQ(inv.parity(), -1);
  EXPECT_EQ(inv.then(inv).parity(), 1);
  const TangentVector t{half_space_point({0.2, 0.1, 0.7}), Vec{0.3, -0.1, 0.2}};
  EXPECT_NEAR(hyperbolic_norm(phi.push(t)), hyperbolic_norm(t), 1e-12);
}

TEST(Normalize, IdentityAtBase) {
  const Isometry phi = normalize_to_standard(TangentVector{base_point(3), Vec{0.0, 0.0, 1.0}});
  EXPECT_TRUE(phi.is_identity());
}

TEST(Normalize, DilationForVerticalNormal) {
  const Isometry phi = normalize_to_standard(TangentVector{half_space_point({0.0, 0.0, 2.0}), Vec{0.0, 0.0, 2.0}});
  ASSERT_EQ(phi.generators().size(), 1u);
  ASSERT_TRUE(std::holds_alternative<Dilation>(phi.generators()[0]));
  EXPECT_DOUBLE_EQ(std::get<Dilation>(phi.generators()[0]).lambda, 0.5);
}

TEST(Normalize, RandomConfigurations) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + i % 4;
    const Point p = random_half_space_point(rng, n);
    Vec w(n);
    for (auto& c : w) c = gauss(rng);
    const TangentVector nrm = unit_vector(p, w);
    const Isometry phi = normalize_to_standard(nrm);
    const TangentVector img = phi.push(nrm);
    EXPECT_LT(max_abs_diff(img.base.x, base_point(n).x), 1e-12 * (1.0 + norm(p.x) / p.height()));
    EXPECT_LT(max_abs_diff(img.v, Vec::unit(n, n - 1)), 1e-10);
    EXPECT_EQ(phi.parity(), 1);
  }
  EXPECT_THROW(normalize_to_standard(TangentVector{base_point(3), Vec(3)}), std::invalid_argument);
}

TEST(Reflection, HalfSphereInversion) {
  const Hyperplane pi(HalfSphere{Vec{0.0, 0.0, 0.0}, 1.0});
  const Point r = pi.reflect(half_space_point({0.0, 0.0, 2.0}));
  EXPECT_NEAR(r.height(), 0.5, 1e-15);
}

TEST(Reflection, VerticalFlip) {
  const Hyperplane pi(VerticalPlane{Vec{1.0, 0.0, 0.0}, 0.0});
  const Point r = pi.reflect(half_space_point({0.4, -0.3, 0.9}));
  EXPECT_DOUBLE_EQ(r[0], -0.4);
  EXPECT_DOUBLE_EQ(r[1], -0.3);
  EXPECT_DOUBLE_EQ(r[2], 0.9);
}

TEST(Reflection, IsometricInvolutiveFixing) {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + i % 3;
    const Point x = random_half_space_point(rng, n);
    Vec w(n);
    for (auto& c : w) c = gauss(rng);
    if (i % 10 == 0) w.back() = 0.0;
    const Hyperplane pi = Hyperplane::through(x, w);
    const Point a = random_half_space_point(rng, n);
    const Point b = random_half_space_point(rng, n);
    EXPECT_NEAR(dist(pi.reflect(a), pi.reflect(b)), dist(a, b), 1e-11 * (1.0 + dist(a, b)));
    EXPECT_LT(max_abs_diff(pi.reflect(pi.reflect(a)).x, a.x), 1e-12 * (1.0 + norm(a.x)));
    EXPECT_LT(max_abs_diff(pi.reflect(x).x, x.x), 1e-12 * (1.0 + norm(x.x)));
    EXPECT_NEAR(pi.signed_distance(x), 0.0, 1e-12);
    EXPECT_NEAR(pi.signed_distance(pi.reflect(a)), -pi.signed_distance(a), 1e-9 * (1.0 + std::abs(pi.signed_distance(a))));
    const Isometry r = pi.reflection();
    EXPECT_LT(max_abs_diff(r(a).x, pi.reflect(a).x), 1e-11 * (1.0 + norm(a.x)));
  }
}

TEST(Hyperplane, TotallyGeodesic) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const Hyperplane pi(HalfSphere{Vec{0.3, -0.2, 0.0}, 1.7});
  for (int i = 0; i < 100; ++i) {
    auto on_plane = [&]() {
      Vec d{uni(rng), uni(rng), std::abs(uni(rng)) + 0.1};
      d /= norm(d);
      return half_space_point(Vec{0.3, -0.2, 0.0} + d * 1.7);
    };
    const Point a = on_plane();
    const Point b = on_plane();
    if (dist(a, b) < 1e-6) continue;
    const GeodesicSegment g = geodesic(a, b);
    for (double t : {0.25, 0.5, 0.75}) EXPECT_NEAR(pi.signed_distance(g.point(t * g.length())), 0.0, 1e-10);
  }
}

TEST(Hyperplane, FootAndDistance) {
  const Hyperplane pi(HalfSphere{Vec{0.0, 0.0, 0.0}, 1.0});
  for (double t : {-1.5, 0.0, 0.7}) {
    const Point o = half_space_point({0.0, 0.0, std::exp(t)});
    EXPECT_NEAR(std::abs(pi.signed_distance(o)), std::abs(t), 1e-14);
    EXPECT_LT(max_abs_diff(pi.foot(o).x, base_point(3).x), 1e-12);
  }
  std::mt19937_64 rng(37);
  for (int i = 0; i < 200; ++i) {
    const Point p = random_half_space_point(rng, 3);
    const Point f = pi.foot(p);
    EXPECT_NEAR(pi.signed_distance(f), 0.0, 1e-10);
    EXPECT_NEAR(dist(p, f), std::abs(pi.signed_distance(p)), 1e-9);
    const TangentVector nrm = pi.normal_at(p);
    EXPECT_NEAR(hyperbolic_norm(nrm), 1.0, 1e-12);
  }
}

TEST(Hyperplane, ThroughPointAndNormal) {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < 200; ++i) {
    const Point x = random_half_space_point(rng, 3);
    const Vec w{gauss(rng), gauss(rng), gauss(rng)};
    const Hyperplane pi = Hyperplane::through(x, w);
    const TangentVector nrm = pi.normal_at(x);
    const TangentVector unit = unit_vector(x, w);
    EXPECT_LT(max_abs_diff(nrm.v, unit.v), 1e-10 * x.height());
  }
}

TEST(Hyperplane, PairwiseIntersection) {
  const Hyperplane a(HalfSphere{Vec{0.0, 0.0}, 1.0});
  EXPECT_TRUE(intersects(a, Hyperplane(HalfSphere{Vec{1.0, 0.0}, 1.0})));
  EXPECT_FALSE(intersects(a, Hyperplane(HalfSphere{Vec{3.0, 0.0}, 1.0})));
  EXPECT_FALSE(intersects(a, Hyperplane(HalfSphere{Vec{0.0, 0.0}, 2.0})));
  EXPECT_TRUE(intersects(a, Hyperplane(VerticalPlane{Vec{1.0, 0.0}, 0.5})));
  EXPECT_FALSE(intersects(a, Hyperplane(VerticalPlane{Vec{1.0, 0.0}, 1.5})));
  const Hyperplane v(VerticalPlane{Vec{1.0, 0.0, 0.0}, 0.0});
  EXPECT_FALSE(intersects(v, Hyperplane(VerticalPlane{Vec{1.0, 0.0, 0.0}, 1.0})));
  EXPECT_TRUE(intersects(v, Hyperplane(VerticalPlane{Vec{0.0, 1.0, 0.0}, 1.0})));
}

TEST(Models, BaseMapsToOrigin) {
  const Point o = to_ball(base_point(3));
  EXPECT_LT(norm(o.x), 1e-15);
  EXPECT_EQ(o.model, Model::Ball);
}

TEST(Models, RoundTripAndDistance) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 2000; ++i) {
    const int n = 2 + i % 3;
    const Point a = random_half_space_point(rng, n);
    const Point b = random_half_space_point(rng, n);
    EXPECT_LT(max_abs_diff(to_halfspace(to_ball(a)).x, a.x), 1e-12 * (1.0 + norm2(a.x) / a.height()));
    EXPECT_NEAR(dist(to_ball(a), to_ball(b)), dist(a, b), 1e-10 * (1.0 + dist(a, b)));
  }
  EXPECT_THROW(to_halfspace(Point{Vec{0.0, 1.0}, Model::Ball}), InvalidPoint);
}

TEST(Models, TangentPushforwardPreservesNorm) {
  std::mt19937_64 rng(47);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < 200; ++i) {
    const Point a = random_half_space_point(rng, 3);
    const TangentVector t{a, Vec{gauss(rng), gauss(rng), gauss(rng)}};
    const TangentVector b = to_ball(t);
    EXPECT_NEAR(hyperbolic_norm(b), hyperbolic_norm(t), 1e-10 * hyperbolic_norm(t));
    EXPECT_LT(max_abs_diff(to_halfspace(b).v, t.v), 1e-10 * norm(t.v));
  }
}

}  // namespace
