#include "isoforge/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "isoforge/error.hpp"
#include "isoforge/parallel.hpp"
#include "isoforge/series.hpp"

namespace isoforge {

namespace {

Vec3 total_derivative(const PointJet& pj, std::size_t k) {
  const Vec3& c = pj.coeff[k];
  const Vec3& d = pj.coeff_dt[k];
  return {d[0] - pj.kappa * c[1], pj.kappa * c[0] + d[1] - pj.tau * c[2], pj.tau * c[1] + d[2]};
}

std::vector<PeriodicScalarFn> fit_rows(double period, const std::vector<std::vector<double>>& rows) {
  std::vector<PeriodicScalarFn> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(PeriodicScalarFn::from_samples(period, r));
  return out;
}

// Sup of |f| on samples together with the location.
void track(double value, double t, double& worst, double& t_worst) {
  if (std::abs(value) > worst) {
    worst = std::abs(value);
    t_worst = t;
  }
}

// Maximum of g near t0 (within +-h), refined by Brent.
double refine_max(const std::function<double(double)>& g, double t0, double h, double& t_best) {
  const auto r = boost::math::tools::brent_find_minima([&](double t) { return -g(t); }, t0 - h, t0 + h, 40);
  t_best = r.first;
  return -r.second;
}

}  // namespace

MetricJet metric_jet(const PointJet& pj, int order) {
  const std::size_t N = static_cast<std::size_t>(order);
  const std::size_t K = pj.coeff.size() ? pj.coeff.size() - 1 : 0;
  std::vector<Vec3> c(N + 2, Vec3::Zero()), dc(N + 2, Vec3::Zero());
  for (std::size_t k = 2; k <= std::min(K, N + 1); ++k) {
    c[k] = pj.coeff[k];
    dc[k] = total_derivative(pj, k);
  }
  MetricJet m;
  m.E.assign(N + 1, 0.0);
  m.F.assign(N + 1, 0.0);
  m.G.assign(N + 1, 0.0);
  m.E[0] = 1.0;
  for (std::size_t p = 2; p <= N; ++p) {
    double e = 2.0 * dc[p][0];
    for (std::size_t j = 2; j + 2 <= p; ++j) e += dc[j].dot(dc[p - j]);
    m.E[p] = e;
  }
  for (std::size_t p = 1; p <= N + 1; ++p) {
    double f = static_cast<double>(p) * c[p][0];
    for (std::size_t j = 2; j + 2 <= p; ++j) f += static_cast<double>(p - j) * dc[j].dot(c[p - j]);
    m.F[p - 1] = f;
  }
  for (std::size_t p = 2; p <= N; ++p) {
    double g = 0.0;
    for (std::size_t j = 2; j <= p; ++j) g += static_cast<double>(j * (p + 2 - j)) * c[j].dot(c[p + 2 - j]);
    m.G[p] = g;
  }
  return m;
}

KossowskiMetric::KossowskiMetric(std::vector<PeriodicScalarFn> E, std::vector<PeriodicScalarFn> F,
                                 std::vector<PeriodicScalarFn> G, std::size_t grid)
    : E_(std::move(E)), F_(std::move(F)), G_(std::move(G)), grid_(grid) {
  if (E_.size() < 3 || E_.size() != F_.size() || E_.size() != G_.size()) {
    throw Error(ErrorCode::InvalidInput, "metric jets must have equal order >= 2");
  }
  const std::size_t N = E_.size() - 1;
  const double l = period();
  std::vector<std::vector<double>> e(N + 1), f(N + 1), g(N + 1);
  for (std::size_t k = 0; k <= N; ++k) {
    e[k] = E_[k].sample(grid_);
    f[k] = F_[k].sample(grid_);
    g[k] = G_[k].sample(grid_);
  }
  // lambda = v sqrt(h), h = (EG - F^2) / v^2 known to order N - 2.
  std::vector<std::vector<double>> lam(N, std::vector<double>(grid_, 0.0));
  for (std::size_t j = 0; j < grid_; ++j) {
    std::vector<double> h(N - 1, 0.0);
    for (std::size_t p = 2; p <= N; ++p) {
      double acc = 0.0;
      for (std::size_t i = 0; i <= p; ++i) acc += e[i][j] * g[p - i][j] - f[i][j] * f[p - i][j];
      h[p - 2] = acc;
    }
    if (!(h[0] > 0.0)) continue;  // lambda_1 = 0 is reported by check()
    const auto r = series::sqrt(h, N - 2);
    for (std::size_t q = 0; q + 1 < N; ++q) lam[q + 1][j] = r[q];
  }
  lambda_ = fit_rows(l, lam);
}

KossowskiCheck KossowskiMetric::check(double tol) const {
  KossowskiCheck out;
  const auto t = uniform_grid(period(), grid_);
  auto test = [&](const std::string& name, const std::vector<double>& values, double bound) {
    double worst = 0.0, tw = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) track(values[j], t[j], worst, tw);
    if (worst > bound) {
      out.ok = false;
      out.failed += (out.failed.empty() ? "" : ",") + name;
      if (worst > out.worst) {
        out.worst = worst;
        out.t_worst = tw;
      }
    }
  };
  const double scale = 1.0 + std::abs(E_[0].mean());
  test("(a) F(t,0)=0", F_[0].sample(grid_), tol * scale);
  test("(a) G(t,0)=0", G_[0].sample(grid_), tol * scale);
  {
    auto ev = E_[1].sample(grid_);
    const auto ft = F_[0].sample(grid_, 1);
    for (std::size_t j = 0; j < ev.size(); ++j) ev[j] -= 2.0 * ft[j];
    test("(a) E_v=2F_t", ev, tol * scale);
  }
  test("(a) G_v(t,0)=0", G_[1].sample(grid_), tol * scale);
  test("(a) G_t(t,0)=0", G_[0].sample(grid_, 1), tol * scale);
  {
    const auto l1 = lambda_.size() > 1 ? lambda_[1].sample(grid_) : std::vector<double>(grid_, 0.0);
    double lmin = std::numeric_limits<double>::infinity(), tw = 0.0;
    for (std::size_t j = 0; j < l1.size(); ++j) {
      if (l1[j] < lmin) {
        lmin = l1[j];
        tw = t[j];
      }
    }
    if (!(lmin > tol)) {
      out.ok = false;
      out.failed += std::string(out.failed.empty() ? "" : ",") + "(b) lambda_v(t,0)!=0";
      out.worst = std::max(out.worst, tol - lmin);
      out.t_worst = tw;
    }
  }
  {
    // EG - F^2 - lambda^2 coefficient-wise.
    const std::size_t N = E_.size() - 1;
    std::vector<std::vector<double>> e(N + 1), f(N + 1), g(N + 1), lam(lambda_.size());
    for (std::size_t k = 0; k <= N; ++k) {
      e[k] = E_[k].sample(grid_);
      f[k] = F_[k].sample(grid_);
      g[k] = G_[k].sample(grid_);
    }
    for (std::size_t k = 0; k < lambda_.size(); ++k) lam[k] = lambda_[k].sample(grid_);
    std::vector<double> defect(grid_, 0.0);
    for (std::size_t j = 0; j < grid_; ++j) {
      for (std::size_t p = 0; p <= N; ++p) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= p; ++i) {
          acc += e[i][j] * g[p - i][j] - f[i][j] * f[p - i][j];
          if (i < lam.size() && p - i < lam.size()) acc -= lam[i][j] * lam[p - i][j];
        }
        defect[j] = std::max(defect[j], std::abs(acc));
      }
    }
    test("(b) EG-F^2=lambda^2", defect, 10.0 * tol * scale);
  }
  return out;
}

void KossowskiMetric::validate(double tol) const {
  const auto c = check(tol);
  if (!c.ok) {
    throw Error(ErrorCode::KossowskiViolation,
                "failed " + c.failed + "; worst " + std::to_string(c.worst) + " at t = " + std::to_string(c.t_worst));
  }
}

KossowskiMetric first_fundamental_form(const CuspidalEdge& edge, int order, std::size_t grid) {
  if (order < 2) throw Error(ErrorCode::InvalidInput, "metric jet order must be >= 2");
  const std::size_t N = static_cast<std::size_t>(order);
  const double l = edge.period();
  const auto t = uniform_grid(l, grid);
  std::vector<std::vector<double>> e(N + 1, std::vector<double>(grid)), f = e, g = e;
  parallel_for(grid, [&](std::size_t j) {
    const MetricJet m = metric_jet(edge.point_jet(t[j], order + 1), order);
    for (std::size_t k = 0; k <= N; ++k) {
      e[k][j] = m.E[k];
      f[k][j] = m.F[k];
      g[k][j] = m.G[k];
    }
  });
  KossowskiMetric metric(fit_rows(l, e), fit_rows(l, f), fit_rows(l, g), grid);
  metric.carrier = edge.carrier();
  metric.validate();
  return metric;
}

PeriodicScalarFn singular_curvature(const KossowskiMetric& metric) {
  const std::size_t n = metric.grid();
  const auto e0 = metric.E()[0].sample(n);
  const auto et = metric.E()[0].sample(n, 1);
  const auto f1 = metric.F()[1].sample(n);
  const auto ftv = metric.F()[1].sample(n, 1);
  const auto e2 = metric.E()[2].sample(n);
  const auto l1 = metric.lambda().size() > 1 ? metric.lambda()[1].sample(n) : std::vector<double>(n, 0.0);
  std::vector<double> ks(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!(l1[j] > 0.0)) {
      throw Error(ErrorCode::OrientationError, "lambda_v(t,0) is not positive at grid index " + std::to_string(j));
    }
    const double evv = 2.0 * e2[j];
    ks[j] = (-f1[j] * et[j] + 2.0 * e0[j] * ftv[j] - e0[j] * evv) / (2.0 * std::pow(e0[j], 1.5) * l1[j]);
  }
  return PeriodicScalarFn::from_samples(metric.period(), ks);
}

EdgeInvariants invariants_from_edge(const CuspidalEdge& edge, std::size_t grid) {
  const double l = edge.period();
  const auto kappa = edge.carrier().curvature().sample(grid);
  std::vector<double> theta(grid);
  if (edge.is_fukui()) {
    const auto th = edge.fukui().theta.sample(grid);
    for (std::size_t j = 0; j < grid; ++j) theta[j] = std::atan2(std::sin(th[j]), std::cos(th[j]));
  } else {
    const auto& c2 = edge.jets().coeff(2);
    const auto beta = c2[1].sample(grid);
    const auto delta = c2[2].sample(grid);
    for (std::size_t j = 0; j < grid; ++j) {
      if (std::hypot(beta[j], delta[j]) < 1e-12) {
        throw Error(ErrorCode::AngleRecoveryFailure, "normal part of c_2 vanishes at grid index " + std::to_string(j));
      }
      theta[j] = std::atan2(-delta[j], beta[j]);
    }
  }
  std::vector<double> ks(grid), kn(grid);
  for (std::size_t j = 0; j < grid; ++j) {
    ks[j] = kappa[j] * std::cos(theta[j]);
    kn[j] = kappa[j] * std::sin(theta[j]);
  }
  return {PeriodicScalarFn::from_samples(l, ks), PeriodicScalarFn::from_samples(l, kn),
          PeriodicScalarFn::from_samples(l, theta)};
}

AdmissibilityReport admissible(const PeriodicScalarFn& kappa_s, const PeriodicScalarFn& kappa, std::size_t grid) {
  const double l = kappa.period();
  const auto ks = kappa_s.sample(grid);
  const auto k = kappa.sample(grid);
  const auto t = uniform_grid(l, grid);
  const double h = l / static_cast<double>(grid);
  // Refine the best three local extrema of each function.
  auto best_extremum = [&](const std::vector<double>& vals, const std::function<double(double)>& g, double& t_out) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < grid; ++j) {
      const double prev = vals[(j + grid - 1) % grid], next = vals[(j + 1) % grid];
      if (vals[j] >= prev && vals[j] >= next) idx.push_back(j);
    }
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
    if (idx.size() > 3) idx.resize(3);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j : idx) {
      double tb = t[j];
      const double v = std::max(refine_max(g, t[j], h, tb), vals[j]);
      if (v > best) {
        best = v;
        t_out = tb;
      }
    }
    return best;
  };
  std::vector<double> abs_ks(grid), neg_k(grid);
  for (std::size_t j = 0; j < grid; ++j) {
    abs_ks[j] = std::abs(ks[j]);
    neg_k[j] = -k[j];
  }
  AdmissibilityReport rep;
  rep.max_abs_kappa_s = best_extremum(abs_ks, [&](double x) { return std::abs(kappa_s(x)); }, rep.t_max_kappa_s);
  rep.min_kappa = -best_extremum(neg_k, [&](double x) { return -kappa(x); }, rep.t_min_kappa);
  rep.margin = rep.min_kappa - rep.max_abs_kappa_s;
  rep.admissible = rep.margin > 0.0;
  return rep;
}

AdmissibilityReport admissible(const CuspidalEdge& edge, std::size_t grid) {
  const auto inv = invariants_from_edge(edge, grid);
  return admissible(inv.kappa_s, edge.carrier().curvature(), grid);
}

}  // namespace isoforge
