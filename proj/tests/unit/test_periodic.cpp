#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "isoforge/periodic.hpp"
#include "isoforge/series.hpp"

using namespace isoforge;

namespace {

double sample_fn(double t) { return std::exp(std::sin(t)) + 0.3 * std::cos(3.0 * t); }

}  // namespace

TEST_CASE("fit reproduces a trigonometric polynomial exactly") {
  const double l = 5.0;
  PeriodicScalarFn f(l, {0.5, 1.0, 0.0, -0.25}, {0.0, 0.2, 0.7, 0.0});
  const auto g = PeriodicScalarFn::from_samples(l, f.sample(32));
  for (double t : {0.0, 0.3, 1.7, 4.9}) CHECK(g(t) == doctest::Approx(f(t)).epsilon(1e-13));
  CHECK(f(0.37) == doctest::Approx(f(0.37 + l)).epsilon(1e-13));
}

TEST_CASE("analytic derivatives agree with central differences at midpoints") {
  const double l = 2.0 * std::numbers::pi;
  const auto f = PeriodicScalarFn::from_function(l, sample_fn, 64);
  const std::size_t n = 64;
  for (std::size_t j = 0; j < n; ++j) {
    const double t = (static_cast<double>(j) + 0.5) * l / n;
    const double h = 1e-4;
    const double fd = (f(t + h) - f(t - h)) / (2.0 * h);
    CHECK(std::abs(f.derivative(t, 1) - fd) <= 1e-6 * (1.0 + std::abs(fd)));
    const double fd2 = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
    CHECK(std::abs(f.derivative(t, 2) - fd2) <= 1e-5 * (1.0 + std::abs(fd2)));
  }
}

TEST_CASE("grid sampling of derivatives matches pointwise evaluation") {
  const double l = 3.0;
  const auto f = PeriodicScalarFn::from_function(l, [](double t) { return std::cos(2.0 * std::numbers::pi * t / 3.0) + std::sin(4.0 * std::numbers::pi * t / 3.0); }, 16);
  for (int order = 0; order <= 3; ++order) {
    const auto s = f.sample(16, order);
    const auto t = uniform_grid(l, 16);
    for (std::size_t j = 0; j < 16; ++j) CHECK(s[j] == doctest::Approx(f.derivative(t[j], order)).epsilon(1e-11).scale(1.0));
  }
}

TEST_CASE("reparametrization is exact on coefficients") {
  const double l = 2.0 * std::numbers::pi;
  const auto f = PeriodicScalarFn::from_function(l, sample_fn, 64);
  for (int sigma : {1, -1}) {
    const auto g = f.reparametrized(sigma, 0.8);
    for (double t : {0.0, 1.1, 2.5}) CHECK(g(t) == doctest::Approx(f(sigma * t + 0.8)).epsilon(1e-13));
  }
}

TEST_CASE("series square root, reciprocal and reversion") {
  const std::vector<double> a{4.0, 1.0, -2.0, 0.5};
  const auto r = series::sqrt(a, 3);
  const auto rr = series::mul(r, r, 3);
  for (std::size_t k = 0; k < 4; ++k) CHECK(rr[k] == doctest::Approx(a[k]).epsilon(1e-14));
  const auto inv = series::reciprocal(a, 3);
  const auto one = series::mul(a, inv, 3);
  CHECK(one[0] == doctest::Approx(1.0));
  for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(one[k]) < 1e-14);
  // w = v + v^2  =>  v(w) = w - w^2 + 2 w^3 - 5 w^4
  const auto v = series::revert({0.0, 1.0, 1.0}, 4);
  CHECK(v[1] == doctest::Approx(1.0));
  CHECK(v[2] == doctest::Approx(-1.0));
  CHECK(v[3] == doctest::Approx(2.0));
  CHECK(v[4] == doctest::Approx(-5.0));
}

TEST_CASE("series sin and cos carry t-derivatives through dual numbers") {
  // lambda(v) = m v with m = m(t), dm/dt = 0.5 at m = 2.
  const std::vector<Dual> lam{Dual(0.0), Dual(2.0, 0.5)};
  std::vector<Dual> s, c;
  series::sin_cos(lam, 3, s, c);
  // sin(m v) = m v - m^3 v^3 / 6: coefficient of v^3 is -m^3/6, derivative -m^2 m'/2.
  CHECK(s[3].v == doctest::Approx(-8.0 / 6.0));
  CHECK(s[3].d == doctest::Approx(-4.0 * 0.5 / 2.0));
  CHECK(c[2].v == doctest::Approx(-2.0));
  CHECK(c[2].d == doctest::Approx(-2.0 * 0.5));
}
