#include "isoforge/curves.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>
#include <boost/math/tools/minima.hpp>
#include <boost/numeric/odeint.hpp>

#include "isoforge/error.hpp"

namespace isoforge {

namespace {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::size_t cache_grid(int degree) {
  return std::max<std::size_t>(256, next_pow2(4 * static_cast<std::size_t>(degree + 1)));
}

std::array<std::vector<double>, 3> split(std::span<const Vec3> pts) {
  std::array<std::vector<double>, 3> out;
  for (auto& v : out) v.resize(pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    for (int c = 0; c < 3; ++c) out[static_cast<std::size_t>(c)][j] = pts[j][c];
  }
  return out;
}

}  // namespace

ClosedCurve::ClosedCurve(std::array<PeriodicScalarFn, 3> components) : components_(std::move(components)) {
  const double l = components_[0].period();
  for (const auto& c : components_) {
    if (std::abs(c.period() - l) > 1e-12 * l) throw Error(ErrorCode::InvalidInput, "curve components must share one period");
  }
  build_cache();
}

ClosedCurve ClosedCurve::from_samples(double period, std::span<const Vec3> samples) {
  auto cols = split(samples);
  return ClosedCurve({PeriodicScalarFn::from_samples(period, cols[0]),
                      PeriodicScalarFn::from_samples(period, cols[1]),
                      PeriodicScalarFn::from_samples(period, cols[2])});
}

ClosedCurve ClosedCurve::from_function(double period, const std::function<Vec3(double)>& fn,
                                       std::size_t samples) {
  std::vector<Vec3> pts(samples);
  const auto t = uniform_grid(period, samples);
  for (std::size_t j = 0; j < samples; ++j) pts[j] = fn(t[j]);
  return from_samples(period, pts);
}

int ClosedCurve::degree() const {
  return std::max({components_[0].degree(), components_[1].degree(), components_[2].degree()});
}

void ClosedCurve::build_cache() {
  const std::size_t n = cache_grid(degree());
  std::array<std::array<std::vector<double>, 3>, 3> d;  // d[order-1][component]
  for (int o = 1; o <= 3; ++o) {
    for (int c = 0; c < 3; ++c) d[o - 1][c] = components_[c].sample(n, o);
  }
  std::vector<double> kappa(n), tau(n);
  double max_dev = 0.0;
  min_speed_ = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    const Vec3 d1(d[0][0][j], d[0][1][j], d[0][2][j]);
    const Vec3 d2(d[1][0][j], d[1][1][j], d[1][2][j]);
    const Vec3 d3(d[2][0][j], d[2][1][j], d[2][2][j]);
    const double speed = d1.norm();
    min_speed_ = std::min(min_speed_, speed);
    max_dev = std::max(max_dev, std::abs(speed - 1.0));
    const Vec3 c = d1.cross(d2);
    const double cn2 = c.squaredNorm();
    kappa[j] = speed > 0.0 ? std::sqrt(cn2) / (speed * speed * speed) : 0.0;
    tau[j] = cn2 > 1e-300 ? c.dot(d3) / cn2 : 0.0;
  }
  unit_speed_ = max_dev <= 1e-8;
  kappa_ = PeriodicScalarFn::from_samples(period(), kappa);
  tau_ = PeriodicScalarFn::from_samples(period(), tau);
}

Vec3 ClosedCurve::position(double t) const {
  return {components_[0](t), components_[1](t), components_[2](t)};
}

void ClosedCurve::derivatives(double t, std::span<Vec3> out) const {
  std::array<double, 8> buf{};
  const std::size_t D = out.size();
  std::vector<double> big;
  std::span<double> tmp = D <= buf.size() ? std::span<double>(buf.data(), D) : std::span<double>();
  if (D > buf.size()) {
    big.resize(D);
    tmp = big;
  }
  for (int c = 0; c < 3; ++c) {
    components_[c].eval_derivs(t, tmp);
    for (std::size_t k = 0; k < D; ++k) out[k][c] = tmp[k];
  }
}

std::vector<Vec3> ClosedCurve::sample(std::size_t n, int order) const {
  std::vector<Vec3> out(n);
  for (int c = 0; c < 3; ++c) {
    const auto s = components_[c].sample(n, order);
    for (std::size_t j = 0; j < n; ++j) out[j][c] = s[j];
  }
  return out;
}

ClosedCurve ClosedCurve::reparametrized(int sigma, double shift) const {
  ClosedCurve out;
  for (int c = 0; c < 3; ++c) out.components_[c] = components_[c].reparametrized(sigma, shift);
  out.kappa_ = kappa_.reparametrized(sigma, shift);
  out.tau_ = tau_.reparametrized(sigma, shift);
  out.unit_speed_ = unit_speed_;
  out.min_speed_ = min_speed_;
  return out;
}

ClosedCurve ClosedCurve::transformed(const Mat3& rotation, const Vec3& translation) const {
  const std::size_t K = static_cast<std::size_t>(degree()) + 1;
  std::array<std::vector<double>, 3> a, b;
  for (int r = 0; r < 3; ++r) {
    a[r].assign(K, 0.0);
    b[r].assign(K, 0.0);
    for (int c = 0; c < 3; ++c) {
      const auto& ac = components_[c].cos_coeffs();
      const auto& bc = components_[c].sin_coeffs();
      for (std::size_t k = 0; k < ac.size(); ++k) {
        a[r][k] += rotation(r, c) * ac[k];
        b[r][k] += rotation(r, c) * bc[k];
      }
    }
    a[r][0] += translation[r];
  }
  ClosedCurve out;
  for (int r = 0; r < 3; ++r) out.components_[r] = PeriodicScalarFn(period(), a[r], b[r]);
  out.kappa_ = kappa_;
  out.tau_ = rotation.determinant() < 0.0 ? tau_.scaled(-1.0) : tau_;
  out.unit_speed_ = unit_speed_;
  out.min_speed_ = min_speed_;
  return out;
}

FrenetData frenet_from_derivatives(const Vec3& d1, const Vec3& d2, const Vec3& d3, double min_curvature) {
  const double speed = d1.norm();
  const Vec3 c = d1.cross(d2);
  const double cn = c.norm();
  FrenetData out;
  out.kappa = speed > 0.0 ? cn / (speed * speed * speed) : 0.0;
  if (!(out.kappa >= min_curvature)) {
    throw Error(ErrorCode::VanishingCurvature, "curvature " + std::to_string(out.kappa) + " below threshold");
  }
  out.frame.e = d1 / speed;
  out.frame.b = c / cn;
  out.frame.n = out.frame.b.cross(out.frame.e);
  out.tau = c.dot(d3) / (cn * cn);
  return out;
}

FrenetData frenet(const ClosedCurve& curve, double t, double min_curvature) {
  std::array<Vec3, 4> d;
  curve.derivatives(t, d);
  return frenet_from_derivatives(d[1], d[2], d[3], min_curvature);
}

double curve_length(const ClosedCurve& curve) {
  std::size_t n = std::max<std::size_t>(64, next_pow2(4 * static_cast<std::size_t>(curve.degree() + 1)));
  auto trapezoid = [&](std::size_t m) {
    const auto d1 = curve.sample(m, 1);
    double acc = 0.0;
    for (const auto& v : d1) acc += v.norm();
    return acc * curve.period() / static_cast<double>(m);
  };
  double prev = trapezoid(n);
  for (int it = 0; it < 12; ++it) {
    n *= 2;
    const double next = trapezoid(n);
    if (std::abs(next - prev) <= 1e-14 * std::abs(next)) return next;
    prev = next;
  }
  return prev;
}

ClosedCurve arclength_reparametrize(const ClosedCurve& curve, const CurveOptions& opts) {
  if (!is_power_of_two(opts.samples)) throw Error(ErrorCode::InvalidInput, "sample count must be a power of two");
  if (curve.min_speed() < opts.min_speed) {
    throw Error(ErrorCode::NonRegularCurve, "min |gamma'| = " + std::to_string(curve.min_speed()));
  }
  const double T = curve.period();
  const double L = curve_length(curve);
  const std::size_t M = opts.samples;

  using State = std::array<double, 1>;
  namespace odeint = boost::numeric::odeint;
  auto rhs = [&curve](const State& x, State& dxdt, double /*s*/) {
    std::array<Vec3, 2> d;
    curve.derivatives(x[0], d);
    dxdt[0] = 1.0 / d[1].norm();
  };
  std::vector<double> s_nodes(M + 1), t_nodes;
  t_nodes.reserve(M + 1);
  for (std::size_t j = 0; j <= M; ++j) s_nodes[j] = L * static_cast<double>(j) / static_cast<double>(M);
  State x{0.0};
  auto stepper = odeint::make_controlled(opts.ode_tolerance, opts.ode_tolerance,
                                         odeint::runge_kutta_dopri5<State>());
  odeint::integrate_times(stepper, rhs, x, s_nodes.begin(), s_nodes.end(), L / static_cast<double>(M),
                          [&t_nodes](const State& st, double) { t_nodes.push_back(st[0]); });
  if (t_nodes.size() != M + 1) throw Error(ErrorCode::NonRegularCurve, "arc-length integration did not reach closure");

  // Closure correction: t(L) must equal the input period.
  const double defect = T - t_nodes[M];
  std::vector<Vec3> pts(M);
  for (std::size_t j = 0; j < M; ++j) {
    const double t = t_nodes[j] + defect * s_nodes[j] / L;
    pts[j] = curve.position(t);
  }
  return ClosedCurve::from_samples(L, pts);
}

double curve_diameter(const ClosedCurve& curve, std::size_t samples) {
  const auto p = curve.sample(samples);
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) d = std::max(d, (p[i] - p[j]).squaredNorm());
  }
  return std::sqrt(d);
}

double min_self_distance(const ClosedCurve& curve, double exclusion, std::size_t samples) {
  const auto p = curve.sample(samples);
  const auto d1 = curve.sample(samples, 1);
  const double l = curve.period();
  const double h = l / static_cast<double>(samples);
  std::vector<double> s(samples + 1, 0.0);
  for (std::size_t j = 0; j < samples; ++j) {
    s[j + 1] = s[j] + 0.5 * h * (d1[j].norm() + d1[(j + 1) % samples].norm());
  }
  const double L = s[samples];
  const double skip = std::max(exclusion, 3.0 * L / static_cast<double>(samples));
  double best = std::numeric_limits<double>::infinity();
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    for (std::size_t j = i + 1; j < samples; ++j) {
      const double gap = std::min(s[j] - s[i], L - (s[j] - s[i]));
      if (gap < skip) continue;
      const double dist = (p[i] - p[j]).squaredNorm();
      if (dist < best) {
        best = dist;
        bi = i;
        bj = j;
      }
    }
  }
  if (!std::isfinite(best)) return best;
  // Local refinement by alternating Brent searches; brackets stay fixed around the grid pair.
  const double c1 = h * static_cast<double>(bi), c2 = h * static_cast<double>(bj);
  double t1 = c1, t2 = c2;
  const int bits = std::numeric_limits<double>::digits / 2;
  for (int it = 0; it < 6; ++it) {
    const Vec3 q2 = curve.position(t2);
    t1 = boost::math::tools::brent_find_minima(
             [&](double t) { return (curve.position(t) - q2).squaredNorm(); }, c1 - h, c1 + h, bits)
             .first;
    const Vec3 q1 = curve.position(t1);
    auto r2 = boost::math::tools::brent_find_minima(
        [&](double t) { return (curve.position(t) - q1).squaredNorm(); }, c2 - h, c2 + h, bits);
    t2 = r2.first;
    best = std::min(best, r2.second);
  }
  return std::sqrt(best);
}

bool is_embedded(const ClosedCurve& curve, double rel_threshold) {
  const double diam = curve_diameter(curve);
  // Arcs shorter than 1/kappa_max cannot close up on themselves; exclude them.
  const auto kap = curve.curvature().sample(512);
  const double kmax = *std::max_element(kap.begin(), kap.end());
  const double exclusion = std::min(curve_length(curve) / 4.0, kmax > 0.0 ? 1.0 / kmax : curve_length(curve) / 4.0);
  return min_self_distance(curve, exclusion) > rel_threshold * diam;
}

ClosedCurve torus_knot(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidInput, "torus knot index m must be >= 1");
  const int n = 2 * m - 1;
  const std::size_t samples = std::max<std::size_t>(64, next_pow2(4 * static_cast<std::size_t>(n + 3)));
  return ClosedCurve::from_function(
      2.0 * std::numbers::pi,
      [n](double t) {
        const double r = 2.0 + std::cos(n * t);
        return Vec3(r * std::cos(2.0 * t), r * std::sin(2.0 * t), std::sin(n * t));
      },
      samples);
}

ClosedCurve torus_coil(int turns, double R, double r) {
  if (turns < 1 || !(R > r) || !(r > 0.0)) throw Error(ErrorCode::InvalidInput, "torus coil needs turns >= 1 and R > r > 0");
  const std::size_t samples = std::max<std::size_t>(64, next_pow2(16 * static_cast<std::size_t>(turns + 2)));
  return ClosedCurve::from_function(
      2.0 * std::numbers::pi,
      [=](double t) {
        const double q = turns * t;
        return Vec3((R + r * std::cos(q)) * std::cos(t), (R + r * std::cos(q)) * std::sin(t), r * std::sin(q));
      },
      samples);
}

ClosedCurve asymmetric_planar() {
  return ClosedCurve::from_function(
      2.0 * std::numbers::pi,
      [](double t) {
        const double r = 1.0 + 0.04 * std::cos(2.0 * t + 0.3) + 0.02 * std::sin(3.0 * t) + 0.008 * std::cos(5.0 * t + 1.1);
        return Vec3(r * std::cos(t), r * std::sin(t), 0.0);
      },
      64);
}

PeriodicScalarFn fourier_fn(const std::vector<FourierTerm>& terms, double period) {
  int K = 0;
  for (const auto& term : terms) {
    if (term.k < 0) throw Error(ErrorCode::InvalidInput, "Fourier mode index must be non-negative");
    K = std::max(K, term.k);
  }
  std::vector<double> a(static_cast<std::size_t>(K) + 1, 0.0), b(static_cast<std::size_t>(K) + 1, 0.0);
  for (const auto& term : terms) {
    a[static_cast<std::size_t>(term.k)] += term.a;
    if (term.k > 0) b[static_cast<std::size_t>(term.k)] += term.b;
  }
  return PeriodicScalarFn(period, std::move(a), std::move(b));
}

std::vector<FourierTerm> fourier_terms(const PeriodicScalarFn& fn) {
  std::vector<FourierTerm> out;
  const auto& a = fn.cos_coeffs();
  const auto& b = fn.sin_coeffs();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k == 0 || a[k] != 0.0 || b[k] != 0.0) out.push_back({static_cast<int>(k), a[k], b[k]});
  }
  return out;
}

ClosedCurve curve_from_fourier(const std::array<std::vector<FourierTerm>, 3>& coeffs, double period,
                               double min_curvature) {
  ClosedCurve curve({fourier_fn(coeffs[0], period), fourier_fn(coeffs[1], period), fourier_fn(coeffs[2], period)});
  const auto kappa = curve.curvature().sample(std::max<std::size_t>(512, 4 * static_cast<std::size_t>(curve.degree() + 1)));
  const double kmin = *std::min_element(kappa.begin(), kappa.end());
  if (!(kmin > min_curvature)) {
    throw Error(ErrorCode::NonPositiveCurvature, "min curvature " + std::to_string(kmin));
  }
  return curve;
}

ClosedCurve spherical_lift(const ClosedCurve& planar, double u, const SphericalOptions& opts) {
  if (!(u != 0.0) || std::abs(u) > opts.max_abs_u) {
    throw Error(ErrorCode::InvalidInput, "deformation parameter u must satisfy 0 < |u| <= " + std::to_string(opts.max_abs_u));
  }
  std::size_t n = opts.samples;
  if (n == 0) n = std::max<std::size_t>(1024, next_pow2(4 * static_cast<std::size_t>(planar.degree() + 1)));
  const auto pts = planar.sample(n);
  double zmax = 0.0;
  for (const auto& p : pts) zmax = std::max(zmax, std::abs(p.z()));
  if (zmax > 1e-9) throw Error(ErrorCode::InvalidInput, "spherical_deform expects a curve in the plane z = 0");
  if (!planar.unit_speed()) throw Error(ErrorCode::InvalidInput, "spherical_deform expects a unit-speed curve");
  std::vector<Vec3> lifted(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = u * pts[j].x(), y = u * pts[j].y();
    const double r2 = x * x + y * y;
    if (2.0 / std::sqrt(1.0 + r2) < opts.min_pole_distance) {
      throw Error(ErrorCode::DegenerateProjection, "point maps within the pole neighbourhood");
    }
    const Vec3 s(2.0 * x / (r2 + 1.0), 2.0 * y / (r2 + 1.0), (r2 - 1.0) / (r2 + 1.0));
    lifted[j] = (s + Vec3(0.0, 0.0, 1.0)) / (2.0 * u);
  }
  return ClosedCurve::from_samples(planar.period(), lifted);
}

ClosedCurve spherical_deform(const ClosedCurve& planar, double u, const SphericalOptions& opts) {
  const ClosedCurve lift = spherical_lift(planar, u, opts);
  const double scale = planar.period() / curve_length(lift);
  return lift.transformed(Mat3::Identity() * scale, Vec3::Zero());
}

}  // namespace isoforge
