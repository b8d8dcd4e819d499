#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "alexlab/moving_planes/engine.hpp"
#include "alexlab/surfaces/metrics.hpp"
#include "testing.hpp"

namespace {

using namespace alexlab;
using namespace alexlab::moving_planes;
using hyperbolic::base_point;
using hyperbolic::half_space_point;
using surfaces::PerturbedSphereSpec;
using surfaces::Profile;
using alexlab::test_support::random_half_space_point;

TangentVector unit_at(const Point& b, Vec v) { return TangentVector{b, v * (b.height() / norm(v))}; }

TEST(PlaneFamily, VerticalDirectionGivesCenteredHalfSpheres) {
  const PlaneFamily f(unit_at(base_point(3), Vec{0.0, 0.0, 1.0}));
  for (double s : {-1.0, 0.0, 0.7}) {
    const Hyperplane pi = f.plane(s);
    ASSERT_FALSE(pi.vertical());
    EXPECT_NEAR(pi.as_half_sphere().radius, std::exp(s), 1e-12);
    EXPECT_LT(norm(pi.as_half_sphere().center), 1e-12);
  }
}

TEST(PlaneFamily, PlaneAtZeroPassesThroughBase) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const Point b = random_half_space_point(rng, 3);
    const PlaneFamily f(unit_at(b, Vec{rng() % 7 - 3.0, rng() % 5 - 2.0, 1.5}));
    const Hyperplane pi = f.plane(0.0);
    EXPECT_LT(std::abs(pi.signed_distance(b)), 1e-10);
    EXPECT_LT(hyperbolic::hyperbolic_norm(b, pi.normal_at(b).v - f.direction().v), 1e-10);
  }
}

TEST(PlaneFamily, PlanesOrthogonalToGeodesic) {
  std::mt19937_64 rng(13);
  const Point b = random_half_space_point(rng, 3);
  const PlaneFamily f(unit_at(b, Vec{0.3, -0.8, 0.2}));
  for (int k = 0; k < 10; ++k) {
    const double s = -2.0 + 0.4 * k;
    const Point g = f.geodesic_point(s);
    const TangentVector v = f.geodesic_velocity(s);
    const Hyperplane pi = f.plane(s);
    EXPECT_LT(std::abs(pi.signed_distance(g)), 1e-10);
    EXPECT_LT(hyperbolic::hyperbolic_norm(g, pi.normal_at(g).v - v.v), 1e-10);
    EXPECT_NEAR(hyperbolic::hyperbolic_norm(v), 1.0, 1e-10);
    EXPECT_NEAR(f.side(g), s, 1e-10);
  }
}

TEST(PlaneFamily, SideCoordinateIdentities) {
  std::mt19937_64 rng(17);
  const Point b = random_half_space_point(rng, 3);
  const PlaneFamily f(unit_at(b, Vec{1.0, 0.5, -0.4}));
  EXPECT_NEAR(f.side(f.geodesic_point(1.5)), 1.5, 1e-10);
  double prev = -1e300;
  for (double s = -3.0; s <= 3.0; s += 0.25) {
    const double v = f.side(f.geodesic_point(s));
    EXPECT_GT(v, prev);
    prev = v;
  }
  for (int i = 0; i < 200; ++i) {
    const Point p = random_half_space_point(rng, 3);
    EXPECT_NEAR(f.side(p), std::log(norm(f.conjugation()(p).x)), 1e-12);
    const double s = 0.5 * (i % 5) - 1.0;
    const Point q = f.reflection(s)(p);
    EXPECT_NEAR(f.side(q), 2.0 * s - f.side(p), 1e-9);
  }
}

TEST(PlaneFamily, ReflectionIsInvolution) {
  std::mt19937_64 rng(19);
  const Point b = random_half_space_point(rng, 4);
  const PlaneFamily f(unit_at(b, Vec{1.0, 0.5, -0.4, 0.2}));
  const Isometry r = f.reflection(0.3);
  for (int i = 0; i < 200; ++i) {
    const Point p = random_half_space_point(rng, 4);
    EXPECT_LT(hyperbolic::dist(r(r(p)), p), 1e-10);
    EXPECT_LT(hyperbolic::dist(r(p), f.plane(0.3).reflect(p)), 1e-9);
  }
}

TEST(PlaneFamily, RejectsZeroDirection) {
  EXPECT_THROW(PlaneFamily(TangentVector{base_point(3), Vec(3)}), std::invalid_argument);
}

class SphereEngine : public ::testing::Test {
 protected:
  Surface sphere = Surface::sphere(base_point(3), 1.0);
  Engine engine{sphere, 4000};
};

TEST_F(SphereEngine, ContainmentAboveAndBelowCenter) {
  const PlaneFamily f(unit_at(base_point(3), Vec{0.0, 0.0, 1.0}));
  EXPECT_TRUE(engine.cap_contained(f, 0.01).contained);
  EXPECT_FALSE(engine.cap_contained(f, -0.1).contained);
  const Containment top = engine.cap_contained(f, 5.0);
  EXPECT_TRUE(top.vacuous);
  EXPECT_TRUE(top.contained);
  // Above the center the exact margin is 0 (points of the plane reflect to
  // themselves); the sampled margin sits in [0, spacing^2]. Below it the
  // margin decreases strictly and continuously.
  const double h2 = engine.spacing() * engine.spacing();
  for (double s = 0.2; s > 0.0; s -= 0.05) {
    const double m = engine.cap_contained(f, s).margin;
    EXPECT_GE(m, -1e-12);
    EXPECT_LE(m, h2);
  }
  double prev = engine.cap_contained(f, 0.0).margin;
  for (double s = -0.01; s > -0.2; s -= 0.01) {
    const double m = engine.cap_contained(f, s).margin;
    EXPECT_LT(m, prev);
    EXPECT_LT(prev - m, 0.05);
    prev = m;
  }
}

TEST_F(SphereEngine, VerticalDirectionCriticalValueIsZero) {
  const CriticalResult c = engine.critical_value(PlaneFamily(unit_at(base_point(3), Vec{0.0, 0.0, 1.0})));
  EXPECT_NEAR(c.m, 0.0, 1e-8);
  EXPECT_TRUE(c.monotone);
  const auto [above, below] = engine.certificate(c);
  EXPECT_TRUE(above);
  EXPECT_FALSE(below);
}

TEST_F(SphereEngine, CriticalPlanesContainCenter) {
  std::mt19937_64 rng(23);
  const Point b = half_space_point({0.4, -0.3, 0.6});
  for (const TangentVector& w : random_directions(rng, b, 6)) {
    const CriticalResult c = engine.critical_value(PlaneFamily(w));
    EXPECT_LT(std::abs(c.plane().signed_distance(sphere.center())), 1e-8);
  }
}

TEST_F(SphereEngine, CapsAreHemispheres) {
  const CriticalResult c = engine.critical_value(PlaneFamily(unit_at(base_point(3), Vec{1.0, 0.2, 0.1})));
  const CapPair caps = engine.caps_sigma(c);
  const std::vector<double> side = engine.sides(c.family);
  int plus = 0;
  int minus = 0;
  for (double s : side) {
    plus += s >= c.m;
    minus += s <= c.m;
  }
  EXPECT_EQ(static_cast<int>(caps.sigma.indices.size()), plus);
  EXPECT_EQ(static_cast<int>(caps.sigma_hat.indices.size()), minus);
  EXPECT_EQ(caps.plus_components, 1);
  EXPECT_EQ(caps.minus_components, 1);
  const Isometry r = c.family.reflection(c.m);
  for (std::size_t k = 0; k < caps.sigma.indices.size(); ++k) {
    const Point& p = engine.samples()[caps.sigma.indices[k]].p;
    EXPECT_EQ(caps.sigma.reflected[k].x[0], r(p).x[0]);
  }
}

TEST_F(SphereEngine, DefectsVanish) {
  const DirectionReport rep = engine.analyze(unit_at(base_point(3), Vec{0.3, 0.9, -0.2}));
  EXPECT_LT(rep.defects.sup_defect, 1e-7);
  EXPECT_LT(rep.defects.neighborhood_defect, 1e-7);
  EXPECT_EQ(rep.defects.flagged, 0);
  EXPECT_GT(rep.defects.evaluated, 1000);
}

Surface perturbed(double eps, Profile prof = Profile::Mixed) {
  return Surface::perturbed_sphere(PerturbedSphereSpec{base_point(3), 1.0, prof, eps});
}

TEST(PerturbedEngine, CertificateAndTangency) {
  const Surface s = perturbed(1e-2);
  const Engine e(s, 4000);
  for (const TangentVector& w : coordinate_directions(base_point(3))) {
    const CriticalResult c = e.critical_value(PlaneFamily(w));
    EXPECT_TRUE(std::isfinite(c.m));
    const auto [above, below] = e.certificate(c);
    EXPECT_TRUE(above);
    EXPECT_FALSE(below);
    EXPECT_LT(c.hi - c.lo, 1e-9);
    // p0 lies on the surface (touching point of the reflected cap).
    EXPECT_LT(std::abs(s.signed_depth(c.p0)), 1e-3);
    const CapPair caps = e.caps_sigma(c);
    EXPECT_GT(caps.sigma.indices.size(), 0u);
    double dmin_sigma = 1e300;
    for (const Point& p : caps.sigma.reflected) dmin_sigma = std::min(dmin_sigma, hyperbolic::dist(p, c.p0));
    double dmin_hat = 1e300;
    for (int i : caps.sigma_hat.indices) dmin_hat = std::min(dmin_hat, hyperbolic::dist(e.samples()[i].p, c.p0));
    EXPECT_LT(dmin_sigma, 2.0 * e.spacing());
    EXPECT_LT(dmin_hat, 2.0 * e.spacing());
  }
}

TEST(PerturbedEngine, ComponentCountStableUnderRefinement) {
  const Surface s = perturbed(2e-2, Profile::Tesseral);
  const TangentVector w = unit_at(base_point(3), Vec{0.6, 0.0, 0.8});
  const Engine coarse(s, 2000);
  const Engine fine(s, 4000);
  const CapPair a = coarse.caps_sigma(coarse.critical_value(PlaneFamily(w)));
  const CapPair b = fine.caps_sigma(fine.critical_value(PlaneFamily(w)));
  EXPECT_EQ(a.plus_components, b.plus_components);
  EXPECT_EQ(a.minus_components, b.minus_components);
}

TEST(PerturbedEngine, DefectsScaleWithOscillation) {
  const TangentVector w = unit_at(base_point(3), Vec{0.2, 0.3, 1.0});
  double ratio[2];
  int k = 0;
  for (double eps : {0.04, 0.02}) {
    const Surface s = perturbed(eps);
    const Engine e(s, 4000);
    const double osc = surfaces::osc_H(e.samples());
    const DirectionReport rep = e.analyze(w);
    EXPECT_GT(rep.defects.evaluated, 0);
    EXPECT_GE(rep.defects.max_normal_term, 0.0);
    EXPECT_LT(rep.defects.flagged, rep.defects.evaluated / 10 + 1);
    ratio[k++] = rep.defects.sup_defect / osc;
  }
  EXPECT_TRUE(std::isfinite(ratio[0]));
  EXPECT_LT(std::abs(ratio[1] - ratio[0]), 0.5 * ratio[0]);
}

TEST(PerturbedEngine, EquivariantUnderIsometries) {
  std::mt19937_64 rng(29);
  const Surface s = perturbed(1e-2);
  const hyperbolic::Isometry phi = hyperbolic::random_isometry(rng, 3);
  const Surface t = s.transformed(phi);
  const Engine e1(s, 3000);
  const Engine e2(t, 3000);
  const TangentVector w = unit_at(base_point(3), Vec{0.5, -0.4, 0.3});
  const CriticalResult c1 = e1.critical_value(PlaneFamily(w));
  const CriticalResult c2 = e2.critical_value(PlaneFamily(phi.push(w)));
  const Hyperplane p1 = c1.plane();
  const Hyperplane p2 = c2.plane();
  // Points of pi_1 map onto pi_2.
  const Point z = p1.foot(s.center());
  const TangentVector n = p1.normal_at(z);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    Vec v = Vec::unit(3, i);
    v -= n.v * (hyperbolic::inner(z, v, n.v) / hyperbolic::inner(z, n.v, n.v));
    const Point q = hyperbolic::exp_map(TangentVector{z, v * (0.5 * z.height() / norm(v))});
    ASSERT_LT(std::abs(p1.signed_distance(q)), 1e-10);
    worst = std::max(worst, std::abs(p2.signed_distance(phi(q))));
  }
  worst = std::max(worst, std::abs(p2.signed_distance(phi(z))));
  EXPECT_LT(worst, 1e-8);
}

TEST(SampleGraph, NeighborsAndComponents) {
  const std::vector<Vec> u = surfaces::sphere_directions(3, 1000);
  const SampleGraph g(u, 2.5 * std::sqrt(4.0 * M_PI / 1000));
  std::vector<char> all(u.size(), 1);
  EXPECT_EQ(g.component_count(all), 1);
  std::vector<char> caps(u.size(), 0);
  for (std::size_t i = 0; i < u.size(); ++i) caps[i] = std::abs(u[i][2]) > 0.5;
  EXPECT_EQ(g.component_count(caps), 2);
  for (int i = 0; i < 1000; i += 37) EXPECT_EQ(g.nearest(u[i]), i);
}

}  // namespace
