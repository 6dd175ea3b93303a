#include "isoforge/cusp.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "isoforge/error.hpp"

namespace isoforge {

namespace {

double horner(const std::vector<double>& c, double v) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * v + c[i];
  return acc;
}

std::vector<double> antiderivative(const std::vector<double>& p) {
  std::vector<double> q(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) q[i + 1] = p[i] / static_cast<double>(i + 1);
  return q;
}

// int_0^v w g(w) dw. The integrand is entire, so fixed Gauss-Legendre on
// unit-width panels reaches round-off without adaptive recursion.
template <class G>
double weighted_integral(G&& g, double v) {
  if (v == 0.0) return 0.0;
  using boost::math::quadrature::gauss;
  auto integrand = [&](double w) { return w * g(w); };
  const double lo = std::min(0.0, v), hi = std::max(0.0, v);
  const int panels = std::max(1, static_cast<int>(std::ceil(hi - lo)));
  const double width = (hi - lo) / panels;
  double r = 0.0;
  for (int k = 0; k < panels; ++k) r += gauss<double, 30>::integrate(integrand, lo + k * width, lo + (k + 1) * width);
  return v < 0.0 ? -r : r;
}

}  // namespace

CuspProfile::CuspProfile(PeriodicScalarFn mu, std::vector<double> poly_v) : mu_(std::move(mu)), poly_(std::move(poly_v)) {
  if (poly_.empty()) throw Error(ErrorCode::InvalidInput, "profile polynomial in v is empty");
}

CuspProfile CuspProfile::constant(double c, double period) {
  return CuspProfile(PeriodicScalarFn::constant(period, c), {1.0});
}

double CuspProfile::operator()(double t, double v) const { return mu_(t) * horner(poly_, v); }

double CuspProfile::at_edge(double t) const { return mu_(t) * poly_[0]; }

CuspProfile CuspProfile::with_period(double period) const { return CuspProfile(mu_.with_period(period), poly_); }

CuspProfile CuspProfile::reparametrized(int sigma, double shift) const {
  return CuspProfile(mu_.reparametrized(sigma, shift), poly_);
}

SectionalCusp SectionalCusp::half_arc_length(CuspProfile profile, double epsilon) {
  SectionalCusp s;
  s.kind_ = Kind::HalfArcLength;
  s.q_ = antiderivative(profile.poly_v());
  s.profile_ = std::move(profile);
  s.epsilon_ = epsilon;
  return s;
}

SectionalCusp SectionalCusp::polynomial(std::vector<double> a, std::vector<double> b, double epsilon) {
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  for (std::size_t k = 0; k < std::min<std::size_t>(n, 2); ++k) {
    if (a[k] != 0.0 || b[k] != 0.0) {
      throw Error(ErrorCode::InvalidInput, "polynomial section must vanish to second order at v = 0");
    }
  }
  const double a2 = n > 2 ? a[2] : 0.0;
  const double b2 = n > 2 ? b[2] : 0.0;
  const double b3 = n > 3 ? b[3] : 0.0;
  if (std::abs(a2) < 1e-6 || std::abs(b2) > 1e-12 || std::abs(b3) < 1e-6) {
    // Non-degeneracy: A_vv != 0, B_vv = 0, B_vvv != 0.
    throw Error(ErrorCode::VanishingHalfCurvature, "polynomial section violates A_vv != 0, B_vv = 0, B_vvv != 0");
  }
  SectionalCusp s;
  s.kind_ = Kind::Polynomial;
  s.poly_a_ = std::move(a);
  s.poly_b_ = std::move(b);
  s.epsilon_ = epsilon;
  return s;
}

double SectionalCusp::lambda(double t, double v) const {
  if (kind_ == Kind::Polynomial) return 0.0;
  return profile_.mu()(t) * horner(q_, v);
}

std::pair<double, double> SectionalCusp::eval(double t, double v) const {
  if (kind_ == Kind::Polynomial) return {horner(poly_a_, v), horner(poly_b_, v)};
  const double mu = profile_.mu()(t);
  const double a = weighted_integral([&](double w) { return std::cos(mu * horner(q_, w)); }, v);
  const double b = weighted_integral([&](double w) { return std::sin(mu * horner(q_, w)); }, v);
  return {a, b};
}

void SectionalCusp::taylor(double t, std::size_t order, std::vector<Dual>& a, std::vector<Dual>& b) const {
  a.assign(order + 1, Dual(0.0));
  b.assign(order + 1, Dual(0.0));
  if (kind_ == Kind::Polynomial) {
    for (std::size_t k = 0; k <= order && k < poly_a_.size(); ++k) {
      a[k] = Dual(poly_a_[k]);
      b[k] = Dual(poly_b_[k]);
    }
    return;
  }
  if (order < 2) return;
  std::array<double, 2> mu{};
  profile_.mu().eval_derivs(t, mu);
  const Dual m(mu[0], mu[1]);
  std::vector<Dual> lam(q_.size(), Dual(0.0));
  for (std::size_t k = 0; k < q_.size(); ++k) lam[k] = m * Dual(q_[k]);
  std::vector<Dual> s, c;
  series::sin_cos(lam, order - 2, s, c);
  // A_v = v cos(lambda), B_v = v sin(lambda)  =>  A_k = [cos]_{k-2} / k.
  for (std::size_t k = 2; k <= order; ++k) {
    a[k] = c[k - 2] / Dual(static_cast<double>(k));
    b[k] = s[k - 2] / Dual(static_cast<double>(k));
  }
}

SectionalCusp SectionalCusp::with_period(double period) const {
  SectionalCusp s = *this;
  if (kind_ == Kind::HalfArcLength) s.profile_ = profile_.with_period(period);
  return s;
}

SectionalCusp SectionalCusp::reparametrized(int sigma, double shift) const {
  SectionalCusp s = *this;
  if (kind_ == Kind::HalfArcLength) s.profile_ = profile_.reparametrized(sigma, shift);
  return s;
}

SectionalCusp build_sectional_cusp(const CuspProfile& profile, const SectionalCuspOptions& opts) {
  if (!(opts.epsilon > 0.0)) throw Error(ErrorCode::InvalidInput, "epsilon must be positive");
  const std::size_t n = std::max<std::size_t>(opts.check_grid, 4 * static_cast<std::size_t>(profile.mu().degree() + 1));
  const auto mu = profile.mu().sample(n);
  const auto t = uniform_grid(profile.mu().period(), n);
  for (std::size_t j = 0; j < n; ++j) {
    const double m0 = mu[j] * profile.poly_v()[0];
    if (!(std::abs(m0) >= opts.min_half_curvature)) {
      throw Error(ErrorCode::VanishingHalfCurvature, "|m(t,0)| = " + std::to_string(std::abs(m0)) +
                                                          " at t = " + std::to_string(t[j]));
    }
  }
  return SectionalCusp::half_arc_length(profile, opts.epsilon);
}

std::array<double, 3> StandardCusp::first_fundamental_form(double u, double v) const {
  const auto fu = d_u(u, v);
  const auto fv = d_v(u, v);
  auto dot = [](const std::array<double, 3>& x, const std::array<double, 3>& y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
  };
  return {dot(fu, fu), dot(fu, fv), dot(fv, fv)};
}

StandardCusp standard_cusp() { return {}; }

}  // namespace isoforge
