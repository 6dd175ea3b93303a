#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "../fixtures.hpp"
#include "isoforge/error.hpp"

using namespace isoforge;
using fixtures::kPi;

namespace {

// Independent length oracle: adaptive quadrature of |gamma'| from the closed form.
double knot_length_oracle(int m) {
  const int n = 2 * m - 1;
  auto speed = [n](double t) {
    const double r = 2.0 + std::cos(n * t);
    const double dr = -n * std::sin(n * t);
    const Vec3 d(dr * std::cos(2 * t) - 2 * r * std::sin(2 * t), dr * std::sin(2 * t) + 2 * r * std::cos(2 * t),
                 n * std::cos(n * t));
    return d.norm();
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(speed, 0.0, 2.0 * kPi, 20, 1e-14);
}

void check_frame(const FrenetFrame& f) {
  CHECK(std::abs(f.e.dot(f.n)) < 1e-10);
  CHECK(std::abs(f.e.dot(f.b)) < 1e-10);
  CHECK(std::abs(f.n.dot(f.b)) < 1e-10);
  Mat3 m;
  m << f.e, f.n, f.b;
  CHECK(m.determinant() == doctest::Approx(1.0).epsilon(1e-10));
}

}  // namespace

TEST_CASE("circle reparametrizes to period 2 pi r with kappa = 1/r, tau = 0") {
  const auto c = ClosedCurve::from_function(2.0 * kPi, [](double t) { return Vec3(3.0 * std::cos(t), 3.0 * std::sin(t), 0.0); }, 16);
  CurveOptions o;
  o.samples = 64;
  const auto u = arclength_reparametrize(c, o);
  CHECK(u.period() == doctest::Approx(6.0 * kPi).epsilon(1e-12));
  CHECK(u.unit_speed());
  for (double t : {0.0, 1.0, 7.5}) {
    const auto fr = frenet(u, t);
    CHECK(fr.kappa == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(std::abs(fr.tau) < 1e-10);
    check_frame(fr.frame);
  }
}

TEST_CASE("circular helix Frenet data: kappa = tau = 1/2") {
  const double s = 1.0 / std::sqrt(2.0);
  for (double t : {0.0, 0.4, 2.0}) {
    const Vec3 d1(-s * std::sin(s * t), s * std::cos(s * t), s);
    const Vec3 d2(-0.5 * std::cos(s * t), -0.5 * std::sin(s * t), 0.0);
    const Vec3 d3(0.5 * s * std::sin(s * t), -0.5 * s * std::cos(s * t), 0.0);
    const auto fr = frenet_from_derivatives(d1, d2, d3);
    CHECK(fr.kappa == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(fr.tau == doctest::Approx(0.5).epsilon(1e-14));
    check_frame(fr.frame);
  }
}

TEST_CASE("torus knot closed form, length and unit-speed round trip") {
  const auto k1 = torus_knot(1);
  const Vec3 p0 = k1.position(0.0);
  CHECK(p0.x() == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(std::abs(p0.y()) < 1e-13);
  CHECK(std::abs(p0.z()) < 1e-13);
  for (int m : {1, 2, 3}) {
    const auto k = torus_knot(m);
    CHECK((k.position(0.7) - k.position(0.7 + 2.0 * kPi)).norm() < 1e-12);
    const double L = knot_length_oracle(m);
    CHECK(curve_length(k) == doctest::Approx(L).epsilon(1e-12));
    const auto u = fixtures::unit_speed(k);
    CHECK(u.period() == doctest::Approx(L).epsilon(1e-12));
    CHECK(u.unit_speed());
    CHECK((u.position(0.0) - k.position(0.0)).norm() < 1e-12);
    const auto kap = u.curvature().sample(512);
    CHECK(*std::max_element(kap.begin(), kap.end()) - *std::min_element(kap.begin(), kap.end()) > 0.1);
  }
}

TEST_CASE("trefoil image is embedded") {
  const auto k2 = fixtures::unit_speed(torus_knot(2));
  CHECK(is_embedded(k2));
  CHECK(min_self_distance(k2, 0.5) > 0.1);
}

TEST_CASE("arc-length reparametrization is idempotent and keeps orientation") {
  const auto u = fixtures::unit_speed(torus_knot(1));
  const auto v = fixtures::unit_speed(u);
  for (double t : {0.0, 1.3, 10.0, 20.0}) CHECK((u.position(t) - v.position(t)).norm() < 1e-9);
  Vec3 d[2];
  u.derivatives(0.0, d);
  const Vec3 before = torus_knot(1).sample(4, 1)[0].normalized();
  CHECK(d[1].dot(before) > 0.99);
}

TEST_CASE("kappa from the Frenet formulas matches |gamma''| by finite differences") {
  const auto u = fixtures::unit_speed(torus_knot(2));
  const double h = 1e-3;
  for (double t : {0.1, 5.0, 17.3}) {
    const Vec3 dd = (u.position(t + h) - 2.0 * u.position(t) + u.position(t - h)) / (h * h);
    CHECK(frenet(u, t).kappa == doctest::Approx(dd.norm()).epsilon(1e-6));
    check_frame(frenet(u, t).frame);
  }
}

TEST_CASE("ellipse curvature against the closed form, tau = 0") {
  const double a = 2.0, b = 1.0;
  const auto e = fixtures::ellipse(a, b);
  for (double t : {0.0, 0.5, 2.0}) {
    const double oracle = a * b / std::pow(a * a * std::sin(t) * std::sin(t) + b * b * std::cos(t) * std::cos(t), 1.5);
    const auto fr = frenet(e, t);
    CHECK(fr.kappa == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(std::abs(fr.tau) < 1e-12);
    CHECK(e.curvature()(t) == doctest::Approx(oracle).epsilon(1e-10));
  }
  const auto c = curve_from_fourier({std::vector<FourierTerm>{{1, 1.0, 0.0}}, std::vector<FourierTerm>{{1, 0.0, 1.0}}, {}}, 2.0 * kPi);
  CHECK(c.curvature()(0.3) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("curve_from_fourier rejects vanishing curvature, accepts a perturbed circle") {
  CHECK_THROWS_AS(curve_from_fourier({std::vector<FourierTerm>{{1, 1.0, 0.0}}, {}, {}}, 2.0 * kPi), Error);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(-0.02, 0.02);
  std::array<std::vector<FourierTerm>, 3> coeffs{std::vector<FourierTerm>{{1, 1.0, 0.0}}, std::vector<FourierTerm>{{1, 0.0, 1.0}},
                                                 std::vector<FourierTerm>{}};
  for (auto& c : coeffs) {
    for (int k = 2; k <= 4; ++k) c.push_back({k, d(rng), d(rng)});
  }
  const auto c = curve_from_fourier(coeffs, 2.0 * kPi);
  CHECK(is_embedded(c));
}

TEST_CASE("non-regular input is rejected") {
  // gamma(t) = (cos^3 t, sin^3 t, 0) (astroid) has |gamma'| = 0 at t = 0.
  const auto c = ClosedCurve::from_function(2.0 * kPi, [](double t) { return Vec3(std::pow(std::cos(t), 3), std::pow(std::sin(t), 3), 0.0); }, 32);
  CHECK_THROWS_AS(arclength_reparametrize(c), Error);
}

TEST_CASE("spherical deformation: sphere before rescale, small-u limit, total length") {
  const auto planar = fixtures::unit_speed(fixtures::asymmetric_planar(), 512);
  const double u = 0.05;
  const auto lift = spherical_lift(planar, u);
  const Vec3 centre(0.0, 0.0, 1.0 / (2.0 * u));
  for (const auto& p : lift.sample(256)) CHECK(std::abs((p - centre).norm() - 1.0 / (2.0 * u)) < 1e-9);
  const auto g = spherical_deform(planar, u);
  CHECK(curve_length(g) == doctest::Approx(planar.period()).epsilon(1e-12));
  const auto near = spherical_deform(planar, 1e-3);
  double sup = 0.0;
  for (double t = 0.0; t < planar.period(); t += 0.05) sup = std::max(sup, (near.position(t) - planar.position(t)).norm());
  CHECK(sup <= 1e-2 * curve_diameter(planar));
  CHECK_THROWS_AS(spherical_deform(planar, 0.0), Error);
}

TEST_CASE("rigid motions preserve kappa and flip tau under reflections") {
  const auto u = fixtures::unit_speed(torus_knot(1));
  Mat3 refl = Mat3::Identity();
  refl(2, 2) = -1.0;
  const auto r = u.transformed(refl, Vec3(1.0, 2.0, 3.0));
  for (double t : {0.2, 4.0}) {
    CHECK(frenet(r, t).kappa == doctest::Approx(frenet(u, t).kappa).epsilon(1e-10));
    CHECK(frenet(r, t).tau == doctest::Approx(-frenet(u, t).tau).epsilon(1e-9));
    CHECK(r.torsion()(t) == doctest::Approx(-u.torsion()(t)).epsilon(1e-9));
  }
}
