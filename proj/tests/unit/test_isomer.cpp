#include "doctest.h"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "../fixtures.hpp"
#include "isoforge/error.hpp"
#include "isoforge/isomer.hpp"

using namespace isoforge;
using fixtures::kPi;

namespace {

// Jets of (t, v) -> f(t + psi(t) v^2, v) by least-squares polynomial fits of
// evaluated positions in the Frenet frame at t.
JetSeries fitted_jets(const CuspidalEdge& f, const std::function<double(double)>& psi, std::size_t n) {
  const auto& carrier = f.carrier();
  std::vector<std::array<std::vector<double>, 3>> s(5);
  for (auto& tr : s) {
    for (auto& v : tr) v.resize(n);
  }
  const auto t = uniform_grid(carrier.period(), n);
  Eigen::MatrixXd V(41, 11);
  for (int i = 0; i < 41; ++i) {
    for (int k = 0; k < 11; ++k) V(i, k) = std::pow(-0.1 + 0.005 * i, k);
  }
  const auto qr = V.colPivHouseholderQr();
  for (std::size_t j = 0; j < n; ++j) {
    const auto fr = frenet(carrier, t[j]).frame;
    Mat3 frame;
    frame << fr.e, fr.n, fr.b;
    Eigen::MatrixXd Y(41, 3);
    for (int i = 0; i < 41; ++i) {
      const double v = -0.1 + 0.005 * i;
      Y.row(i) = (frame.transpose() * (f.position(t[j] + psi(t[j]) * v * v, v) - carrier.position(t[j]))).transpose();
    }
    const Eigen::MatrixXd coef = qr.solve(Y);
    for (std::size_t k = 0; k <= 4; ++k) {
      for (int r = 0; r < 3; ++r) s[k][r][j] = coef(static_cast<int>(k), r);
    }
  }
  return JetSeries::from_samples(carrier, s, f.epsilon());
}

int nu_sign(const CuspidalEdge& e) { return invariants_from_edge(e).kappa_nu(0.0) > 0.0 ? 1 : -1; }

double sup_diff(const PeriodicScalarFn& a, const std::function<double(double)>& b, std::size_t n = 512) {
  double err = 0.0;
  for (double t : uniform_grid(a.period(), n)) err = std::max(err, std::abs(a(t) - b(t)));
  return err;
}

}  // namespace

TEST_CASE("isomer sign table") {
  const int sig[4] = {1, 1, -1, -1}, sigp[4] = {1, -1, 1, -1};
  for (int i = 1; i <= 4; ++i) {
    CHECK(IsomerSpec{i, 0.0}.sigma() == sig[i - 1]);
    CHECK(IsomerSpec{i, 0.0}.sigma_prime() == sigp[i - 1]);
  }
  CHECK_THROWS_AS(validate(IsomerSpec{5, 0.0}), Error);
}

TEST_CASE("isomer angle inverts kappa_s = kappa cos(theta)") {
  const auto k = fixtures::unit_speed(torus_knot(1));
  const double th0 = fixtures::kTheta;
  const auto ks = PeriodicScalarFn::from_samples(k.period(), [&] {
    auto s = k.curvature().sample(512);
    for (auto& x : s) x *= std::cos(th0);
    return s;
  }());
  CHECK(sup_diff(isomer_angle(ks, k.curvature(), {1, 0.0}), [&](double) { return th0; }) < 1e-10);
  CHECK(sup_diff(isomer_angle(ks, k.curvature(), {2, 0.0}), [&](double) { return -th0; }) < 1e-10);
  // Constant-kappa carrier: family 3 keeps the angle.
  const auto c = fixtures::unit_speed(fixtures::circle(2.0), 64);
  const auto kc = PeriodicScalarFn::constant(c.period(), 0.5 * std::cos(0.9));
  CHECK(sup_diff(isomer_angle(kc, c.curvature(), {3, 1.0}), [](double) { return 0.9; }) < 1e-10);
  CHECK(sup_diff(isomer_angle(kc, c.curvature(), {4, 1.0}), [](double) { return -0.9; }) < 1e-10);
  // Not admissible: kappa_s exceeds kappa somewhere after the shift.
  const auto kap = k.curvature().sample(512);
  const auto big = PeriodicScalarFn::constant(k.period(), 1.01 * *std::min_element(kap.begin(), kap.end()));
  CHECK_THROWS_AS(isomer_angle(big, k.curvature(), {3, 0.5}), Error);
}

TEST_CASE("normal form is idempotent and undoes v-rescaling") {
  const auto corpus = fixtures::corpus();
  int used = 0;
  for (const auto& c : corpus) {
    if (!c.normal_form || used == 5) continue;
    ++used;
    const auto jets = c.edge.to_jets(4, 512);
    const auto nf = normal_form(c.edge, 0.0, 4, 512);
    const auto back = normal_form(CuspidalEdge(jets.v_scaled(2.0)), 0.0, 4, 512);
    for (int k = 2; k <= 4; ++k) {
      CHECK_MESSAGE(jet_difference(nf, jets, k) < 1e-9, c.name << " order " << k);
      CHECK_MESSAGE(jet_difference(back, jets, k) < 1e-8, c.name << " order " << k);
    }
  }
  CHECK(used == 5);
}

TEST_CASE("normal form removes a tangential reparametrization and fixes the base point") {
  const auto c = fixtures::corpus();
  const auto& f = c[1].edge;  // varying angle and profile
  const double l = f.period();
  const auto g = fitted_jets(f, [l](double t) { return 0.3 * std::sin(2.0 * kPi * t / l); }, 256);
  CHECK(std::abs(g.coeff(2)[0](l / 4.0)) > 0.1);  // g is not in normal form
  const auto nf = normal_form(CuspidalEdge(g), 0.0, 4, 256);
  const auto ref = f.to_jets(4, 256);
  for (int k = 2; k <= 4; ++k) CHECK_MESSAGE(jet_difference(nf, ref, k, 256) < 1e-6, "order " << k);

  const double a = 0.3 * l;
  const auto shifted = normal_form(f, a, 4, 512);
  CHECK((shifted.position(0.0, 0.0) - f.carrier().position(a)).norm() < 1e-12);
  CHECK((shifted.position(1.0, 0.05) - f.position(1.0 + a, 0.05)).norm() < 1e-7);
}

TEST_CASE("normal form fixes the v orientation") {
  const auto c = fixtures::corpus();
  const auto jets = c[0].edge.to_jets(4, 512);
  const auto flipped = jets.v_scaled(-1.0);
  const auto nf = normal_form(CuspidalEdge(flipped), 0.0, 4, 512);
  for (int k = 2; k <= 4; ++k) CHECK(jet_difference(nf, jets, k) < 1e-9);
}

TEST_CASE("jet reconstruction round trip and the dual") {
  for (const auto& c : fixtures::corpus()) {
    const auto m = first_fundamental_form(c.edge, 4, 512);
    const auto jets = c.edge.to_jets(4, 512);
    const int s = nu_sign(c.edge);
    const auto rec = jet_reconstruct(m, c.edge.carrier(), s);
    for (int k = 2; k <= 4; ++k) CHECK_MESSAGE(jet_difference(rec, jets, k) < 1e-7, c.name << " order " << k);
    // Coefficients close up over the period.
    for (int k = 2; k <= 4; ++k) {
      for (int r = 0; r < 3; ++r) CHECK(std::abs(rec.coeff(k)[r](m.period()) - rec.coeff(k)[r](0.0)) < 1e-8);
    }
    const auto dual = jet_reconstruct(m, c.edge.carrier(), -s);
    const auto a = invariants_from_edge(c.edge), b = invariants_from_edge(CuspidalEdge(dual));
    CHECK_MESSAGE(sup_diff(b.kappa_nu, [&](double t) { return -a.kappa_nu(t); }) < 1e-8, c.name);
    CHECK_MESSAGE(sup_diff(b.kappa_s, [&](double t) { return a.kappa_s(t); }) < 1e-8, c.name);
    // Sign flip twice on the same metric is the identity, bit for bit.
    const auto twice = jet_reconstruct(m, c.edge.carrier(), -(-s));
    for (int k = 2; k <= 4; ++k) CHECK(jet_difference(twice, rec, k) == 0.0);
    // Through the dual's own metric: two fits and two spectral derivative passes, so looser.
    const auto again = jet_reconstruct(first_fundamental_form(CuspidalEdge(dual), 4, 512), c.edge.carrier(), s);
    for (int k = 2; k <= 4; ++k) CHECK_MESSAGE(jet_difference(again, jets, k) < 5e-7, c.name << " order " << k);
  }
}

TEST_CASE("helix-type coil: reconstructed metric jets of both signs match") {
  const auto c = fixtures::corpus();
  const auto& e = c[6].edge;
  const auto m = first_fundamental_form(e, 4, 512);
  for (int s : {1, -1}) {
    const auto r = first_fundamental_form(CuspidalEdge(jet_reconstruct(m, e.carrier(), s)), 4, 512);
    for (std::size_t k = 0; k <= 4; ++k) {
      CHECK(sup_diff(r.E()[k], [&](double t) { return m.E()[k](t); }) < 1e-7);
      CHECK(sup_diff(r.G()[k], [&](double t) { return m.G()[k](t); }) < 1e-7);
      if (k < 4) CHECK(sup_diff(r.F()[k], [&](double t) { return m.F()[k](t); }) < 1e-7);
    }
  }
}

TEST_CASE("reconstruction rejects pointwise non-admissible and singular metrics") {
  const auto circle = fixtures::unit_speed(fixtures::circle(2.0), 64);
  const double l = circle.period();
  auto c = [l](double x) { return PeriodicScalarFn::constant(l, x); };
  // kappa = 1/2, kappa_s = -E_2 = 0.6 > kappa.
  const KossowskiMetric over({c(1.0), c(0.0), c(-0.6)}, {c(0.0), c(0.0), c(0.0)}, {c(0.0), c(0.0), c(1.0)}, 64);
  try {
    jet_reconstruct(over, circle, 1);
    FAIL("expected PointwiseAdmissibilityViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PointwiseAdmissibilityViolation);
  }
  // kappa_s = kappa exactly: the flat-angle boundary.
  const KossowskiMetric flat({c(1.0), c(0.0), c(-0.5)}, {c(0.0), c(0.0), c(0.0)}, {c(0.0), c(0.0), c(1.0)}, 64);
  CHECK_THROWS_AS(jet_reconstruct(flat, circle, 1), Error);
  // |c_2| ~ 1e-11: the per-order system is numerically singular.
  const KossowskiMetric thin({c(1.0), c(0.0), c(0.0)}, {c(0.0), c(0.0), c(0.0)}, {c(0.0), c(0.0), c(4e-22)}, 64);
  try {
    jet_reconstruct(thin, circle, 1);
    FAIL("expected JetSolveFailure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::JetSolveFailure);
  }
}

TEST_CASE("isomers: metric agreement and the sign law for all four families") {
  const auto c = fixtures::corpus();
  const auto& g = c[1].edge;
  const auto m = first_fundamental_form(g, 4, 512);
  const auto ks = singular_curvature(m);
  const auto& kappa = g.carrier().curvature();
  for (int i = 1; i <= 4; ++i) {
    for (double a : {0.0, 0.37 * g.period()}) {
      const IsomerSpec spec{i, a};
      const CuspidalEdge f(build_isomer(g, spec, 4, 512));
      CHECK((f.carrier().position(0.3) - g.carrier().position(spec.sigma() * 0.3 + a)).norm() < 1e-12);
      const auto mf = first_fundamental_form(f, 4, 512);
      for (std::size_t k = 0; k <= 4; ++k) {
        CHECK(sup_diff(mf.E()[k], [&](double t) { return m.E()[k](t); }) < 1e-7);
        CHECK(sup_diff(mf.G()[k], [&](double t) { return m.G()[k](t); }) < 1e-7);
        if (k < 4) CHECK(sup_diff(mf.F()[k], [&](double t) { return m.F()[k](t); }) < 1e-7);
      }
      const auto inv = invariants_from_edge(f);
      const double err = sup_diff(inv.kappa_nu, [&](double t) {
        const double kk = kappa(spec.sigma() * t + a);
        return spec.sigma_prime() * std::sqrt(kk * kk - ks(t) * ks(t));
      });
      CHECK_MESSAGE(err < 1e-7, "family " << i << " shift " << a);
    }
  }
  // Family 1 at a = 0 returns g itself, family 2 its dual.
  const auto jets = g.to_jets(4, 512);
  const auto f1 = build_isomer(g, {1, 0.0}, 4, 512);
  for (int k = 2; k <= 4; ++k) CHECK(jet_difference(f1, jets, k) < 1e-7);
  const auto f2 = build_isomer(g, {2, 0.0}, 4, 512);
  CHECK(jet_difference(f2, jets, 2) > 0.1);
  CHECK(f2.coeff(2)[2](1.0) == doctest::Approx(-jets.coeff(2)[2](1.0)).epsilon(1e-7));
}

TEST_CASE("build_isomer refuses a non-admissible edge") {
  const auto k = fixtures::unit_speed(torus_knot(1));
  const auto e = fukui_edge(k, fixtures::const_fn(k.period(), kPi / 4.0), fixtures::unit_section());
  try {
    build_isomer(e, {3, 0.0});
    FAIL("expected AdmissibilityViolation");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::AdmissibilityViolation);
  }
}

TEST_CASE("uniqueness check: plus, minus, v-flip and a perturbed jet") {
  const auto c = fixtures::corpus();
  const auto& g = c[0].edge;
  const auto m = first_fundamental_form(g, 4, 512);
  const auto& carrier = g.carrier();
  CHECK(uniqueness_check(g, m, carrier).branch == Branch::Plus);
  const auto jets = g.to_jets(4, 512);
  CHECK(uniqueness_check(CuspidalEdge(jets.v_scaled(-1.0)), m, carrier).branch == Branch::Plus);
  const auto dual = jet_reconstruct(m, carrier, -1);
  CHECK(uniqueness_check(CuspidalEdge(dual), m, carrier).branch == Branch::Minus);
  auto c4 = jets.coeff(4);
  c4[1] = PeriodicScalarFn::from_samples(jets.period(), [&] {
    auto s = c4[1].sample(512);
    for (auto& x : s) x += 1e-3;
    return s;
  }());
  const auto r = uniqueness_check(CuspidalEdge(jets.with_coeff(4, c4)), m, carrier);
  CHECK(r.branch == Branch::Neither);
  CHECK(r.mismatch_order == 4);
}
