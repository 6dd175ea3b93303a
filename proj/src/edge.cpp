#include "isoforge/edge.hpp"

#include <algorithm>
#include <cmath>

#include "isoforge/error.hpp"
#include "isoforge/parallel.hpp"

namespace isoforge {

namespace {

PeriodicScalarFn zero_fn(double period) { return PeriodicScalarFn::constant(period, 0.0); }

JetSeries::Triple zero_triple(double period) { return {zero_fn(period), zero_fn(period), zero_fn(period)}; }

}  // namespace

JetSeries::JetSeries(ClosedCurve carrier, std::vector<Triple> coeffs, double epsilon)
    : carrier_(std::move(carrier)), coeffs_(std::move(coeffs)), epsilon_(epsilon) {
  const double l = carrier_.period();
  if (coeffs_.size() < 3) throw Error(ErrorCode::InvalidInput, "jet series needs order >= 2");
  for (std::size_t k = 0; k < 2; ++k) coeffs_[k] = zero_triple(l);
  for (const auto& tr : coeffs_) {
    for (const auto& f : tr) {
      if (std::abs(f.period() - l) > 1e-9 * l) throw Error(ErrorCode::InvalidInput, "jet coefficient period differs from carrier");
    }
  }
}

JetSeries JetSeries::from_samples(ClosedCurve carrier, const std::vector<std::array<std::vector<double>, 3>>& samples,
                                  double epsilon) {
  const double l = carrier.period();
  std::vector<Triple> coeffs;
  coeffs.reserve(samples.size());
  for (const auto& s : samples) {
    Triple tr;
    for (int c = 0; c < 3; ++c) {
      tr[c] = s[c].empty() ? zero_fn(l) : PeriodicScalarFn::from_samples(l, s[c]);
    }
    coeffs.push_back(std::move(tr));
  }
  return JetSeries(std::move(carrier), std::move(coeffs), epsilon);
}

Vec3 JetSeries::position(double t, double v) const {
  const FrenetData fr = frenet(carrier_, t, 0.0);
  Vec3 p = carrier_.position(t);
  double vk = v * v;
  for (std::size_t k = 2; k < coeffs_.size(); ++k) {
    const auto& c = coeffs_[k];
    p += vk * (c[0](t) * fr.frame.e + c[1](t) * fr.frame.n + c[2](t) * fr.frame.b);
    vk *= v;
  }
  return p;
}

PointJet JetSeries::point_jet(double t, int order) const {
  PointJet pj;
  pj.kappa = carrier_.curvature()(t);
  pj.tau = carrier_.torsion()(t);
  const std::size_t K = static_cast<std::size_t>(order);
  pj.coeff.assign(K + 1, Vec3::Zero());
  pj.coeff_dt.assign(K + 1, Vec3::Zero());
  std::array<double, 2> d{};
  for (std::size_t k = 2; k <= K && k < coeffs_.size(); ++k) {
    for (int c = 0; c < 3; ++c) {
      coeffs_[k][c].eval_derivs(t, d);
      pj.coeff[k][c] = d[0];
      pj.coeff_dt[k][c] = d[1];
    }
  }
  return pj;
}

std::vector<std::array<std::vector<double>, 3>> JetSeries::sample(std::size_t n) const {
  std::vector<std::array<std::vector<double>, 3>> out(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    for (int c = 0; c < 3; ++c) out[k][c] = coeffs_[k][c].sample(n);
  }
  return out;
}

JetSeries JetSeries::reparametrized(int sigma, double shift) const {
  std::vector<Triple> out(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    out[k][0] = coeffs_[k][0].reparametrized(sigma, shift).scaled(sigma);
    out[k][1] = coeffs_[k][1].reparametrized(sigma, shift);
    out[k][2] = coeffs_[k][2].reparametrized(sigma, shift).scaled(sigma);
  }
  return JetSeries(carrier_.reparametrized(sigma, shift), std::move(out), epsilon_);
}

JetSeries JetSeries::v_scaled(double s) const {
  std::vector<Triple> out = coeffs_;
  double sk = 1.0;
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (auto& f : out[k]) f = f.scaled(sk);
    sk *= s;
  }
  return JetSeries(carrier_, std::move(out), epsilon_);
}

JetSeries JetSeries::with_order(int order) const {
  std::vector<Triple> out = coeffs_;
  out.resize(static_cast<std::size_t>(order) + 1, zero_triple(period()));
  return JetSeries(carrier_, std::move(out), epsilon_);
}

JetSeries JetSeries::with_coeff(int k, Triple value) const {
  std::vector<Triple> out = coeffs_;
  out.at(static_cast<std::size_t>(k)) = std::move(value);
  return JetSeries(carrier_, std::move(out), epsilon_);
}

std::vector<JetSeries::Triple> JetSeries::cartesian(std::size_t n) const {
  const auto d1 = carrier_.sample(n, 1);
  const auto d2 = carrier_.sample(n, 2);
  const auto d3 = carrier_.sample(n, 3);
  std::vector<FrenetFrame> frames(n);
  for (std::size_t j = 0; j < n; ++j) frames[j] = frenet_from_derivatives(d1[j], d2[j], d3[j], 0.0).frame;
  const auto s = sample(n);
  std::vector<Triple> out(coeffs_.size());
  std::array<std::vector<double>, 3> xyz;
  for (auto& v : xyz) v.resize(n);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const Vec3 c = s[k][0][j] * frames[j].e + s[k][1][j] * frames[j].n + s[k][2][j] * frames[j].b;
      for (int r = 0; r < 3; ++r) xyz[r][j] = c[r];
    }
    for (int r = 0; r < 3; ++r) out[k][r] = PeriodicScalarFn::from_samples(period(), xyz[r]);
  }
  return out;
}

const ClosedCurve& CuspidalEdge::carrier() const {
  return is_fukui() ? fukui().carrier : jets().carrier();
}

double CuspidalEdge::epsilon() const {
  return is_fukui() ? fukui().section.epsilon() : jets().epsilon();
}

Vec3 CuspidalEdge::position(double t, double v) const {
  if (!is_fukui()) return jets().position(t, v);
  const auto& f = fukui();
  const FrenetData fr = frenet(f.carrier, t, 0.0);
  const auto [a, b] = f.section.eval(t, v);
  const double th = f.theta(t);
  const double c = std::cos(th), s = std::sin(th);
  return f.carrier.position(t) + (a * c + b * s) * fr.frame.n + (-a * s + b * c) * fr.frame.b;
}

PointJet CuspidalEdge::point_jet(double t, int order) const {
  if (!is_fukui()) return jets().point_jet(t, order);
  const auto& f = fukui();
  PointJet pj;
  pj.kappa = f.carrier.curvature()(t);
  pj.tau = f.carrier.torsion()(t);
  const std::size_t K = static_cast<std::size_t>(order);
  pj.coeff.assign(K + 1, Vec3::Zero());
  pj.coeff_dt.assign(K + 1, Vec3::Zero());
  std::vector<Dual> a, b;
  f.section.taylor(t, K, a, b);
  std::array<double, 2> th{};
  f.theta.eval_derivs(t, th);
  const Dual theta(th[0], th[1]);
  const Dual c = cos(theta), s = sin(theta);
  for (std::size_t k = 2; k <= K; ++k) {
    const Dual beta = a[k] * c + b[k] * s;
    const Dual delta = -a[k] * s + b[k] * c;
    pj.coeff[k] = Vec3(0.0, beta.v, delta.v);
    pj.coeff_dt[k] = Vec3(0.0, beta.d, delta.d);
  }
  return pj;
}

JetSeries CuspidalEdge::to_jets(int order, std::size_t grid) const {
  if (!is_fukui()) return jets().order() == order ? jets() : jets().with_order(order);
  const auto t = uniform_grid(period(), grid);
  std::vector<std::array<std::vector<double>, 3>> s(static_cast<std::size_t>(order) + 1);
  for (auto& tr : s) {
    for (auto& v : tr) v.resize(grid);
  }
  parallel_for(grid, [&](std::size_t j) {
    const PointJet pj = point_jet(t[j], order);
    for (std::size_t k = 0; k < s.size(); ++k) {
      for (int c = 0; c < 3; ++c) s[k][c][j] = pj.coeff[k][c];
    }
  });
  return JetSeries::from_samples(carrier(), s, epsilon());
}

CuspidalEdge fukui_edge(const ClosedCurve& carrier, const PeriodicScalarFn& theta, const SectionalCusp& section,
                        const EdgeOptions& opts) {
  if (!carrier.unit_speed()) throw Error(ErrorCode::InvalidInput, "carrier must be parametrized by arc length");
  const double l = carrier.period();
  const auto kappa = carrier.curvature().sample(opts.check_grid);
  const double kmin = *std::min_element(kappa.begin(), kappa.end());
  if (!(kmin >= opts.min_curvature)) {
    throw Error(ErrorCode::VanishingCurvature, "min curvature " + std::to_string(kmin) + " on the carrier");
  }
  PeriodicScalarFn th = theta;
  if (std::abs(th.period() - l) > 1e-9 * l) {
    if (th.degree() != 0) throw Error(ErrorCode::InvalidInput, "cuspidal angle period differs from carrier");
    th = th.with_period(l);
  }
  SectionalCusp sec = section;
  if (sec.kind() == SectionalCusp::Kind::HalfArcLength &&
      std::abs(sec.profile().mu().period() - l) > 1e-9 * l) {
    if (!sec.profile().t_independent()) throw Error(ErrorCode::InvalidInput, "profile period differs from carrier");
    sec = sec.with_period(l);
  }
  return CuspidalEdge(FukuiEdge{carrier, std::move(th), std::move(sec)});
}

CuspidalEdge shifted_edge(const CuspidalEdge& edge, double t0) {
  if (!edge.is_fukui()) return CuspidalEdge(edge.jets().reparametrized(1, t0));
  const auto& f = edge.fukui();
  return CuspidalEdge(FukuiEdge{f.carrier.reparametrized(1, t0), f.theta.reparametrized(1, t0),
                                f.section.reparametrized(1, t0)});
}

InjectivityReport check_injectivity(const CuspidalEdge& edge, std::size_t nt, std::size_t nv) {
  const double l = edge.period();
  const double eps = edge.epsilon();
  std::vector<Vec3> p(nt * nv);
  const auto t = uniform_grid(l, nt);
  parallel_for(nt, [&](std::size_t i) {
    for (std::size_t j = 0; j < nv; ++j) {
      const double v = nv > 1 ? -eps + 2.0 * eps * static_cast<double>(j) / static_cast<double>(nv - 1) : 0.0;
      p[i * nv + j] = edge.position(t[i], v);
    }
  });
  InjectivityReport rep;
  rep.threshold = 1e-3 * eps * eps;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t i2 = i + 1; i2 < nt; ++i2) {
      const double gap = std::min(t[i2] - t[i], l - (t[i2] - t[i]));
      if (gap < 2.0 * eps) continue;
      for (std::size_t j = 0; j < nv; ++j) {
        for (std::size_t j2 = 0; j2 < nv; ++j2) best = std::min(best, (p[i * nv + j] - p[i2 * nv + j2]).squaredNorm());
      }
    }
  }
  rep.min_distance = std::sqrt(best);
  rep.injective = !(rep.min_distance <= rep.threshold);
  return rep;
}

}  // namespace isoforge
