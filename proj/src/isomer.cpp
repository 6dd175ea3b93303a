#include "isoforge/isomer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "isoforge/error.hpp"
#include "isoforge/parallel.hpp"
#include "isoforge/series.hpp"

namespace isoforge {

namespace {

using Samples = std::vector<std::array<std::vector<double>, 3>>;

std::string at(double t) {
  std::ostringstream os;
  os.precision(10);
  os << t;
  return os.str();
}

Samples empty_samples(std::size_t order, std::size_t n) {
  Samples s(order + 1);
  for (auto& tr : s) {
    for (auto& v : tr) v.assign(n, 0.0);
  }
  return s;
}

}  // namespace

void validate(const IsomerSpec& spec) {
  if (spec.family < 1 || spec.family > 4) throw Error(ErrorCode::InvalidInput, "isomer family must be 1, 2, 3 or 4");
  if (!std::isfinite(spec.shift)) throw Error(ErrorCode::InvalidInput, "isomer shift must be finite");
}

std::string to_string(Branch b) {
  switch (b) {
    case Branch::Plus: return "plus";
    case Branch::Minus: return "minus";
    default: return "neither";
  }
}

JetSeries normal_form(const CuspidalEdge& edge, double t0, int order, std::size_t grid) {
  if (order < 2) throw Error(ErrorCode::InvalidInput, "normal form needs order >= 2");
  if (!edge.carrier().unit_speed()) throw Error(ErrorCode::NormalFormFailure, "carrier is not unit speed");
  const std::size_t N = static_cast<std::size_t>(order);
  JetSeries jets = edge.to_jets(order, grid);
  if (t0 != 0.0) jets = jets.reparametrized(1, t0);
  const ClosedCurve& carrier = jets.carrier();
  const auto cart = jets.cartesian(grid);
  const auto t = uniform_grid(carrier.period(), grid);
  const std::size_t D = N / 2 + 1;  // phi = O(v^2), so phi^j matters up to j = N/2
  Samples out = empty_samples(N, grid);
  std::vector<int> turn(grid, 0);
  std::vector<std::string> failure(grid);

  parallel_for(grid, [&](std::size_t j) {
    const double tj = t[j];
    std::vector<Vec3> g(D + 1);
    carrier.derivatives(tj, g);
    const FrenetFrame fr = frenet(carrier, tj, 0.0).frame;
    // Taylor coefficients in the t-shift x: gamma part and each C_k part.
    std::vector<Vec3> gam(D + 1, Vec3::Zero());
    double fact = 1.0;
    for (std::size_t d = 1; d <= D; ++d) {
      fact *= static_cast<double>(d);
      gam[d] = g[d] / fact;
    }
    std::vector<std::vector<Vec3>> ck(N + 1, std::vector<Vec3>(D + 1, Vec3::Zero()));
    std::vector<double> buf(D + 1);
    for (std::size_t k = 2; k <= N; ++k) {
      for (int r = 0; r < 3; ++r) {
        cart[k][r].eval_derivs(tj, buf);
        double f = 1.0;
        for (std::size_t d = 0; d <= D; ++d) {
          if (d > 0) f *= static_cast<double>(d);
          ck[k][d][r] = buf[d] / f;
        }
      }
    }
    // P(v) = f(t + phi(v), v) - gamma(t); each sweep fixes one more order of e . P = 0.
    std::vector<double> phi(N + 1, 0.0);
    std::vector<Vec3> P;
    auto evaluate = [&] {
      P = series::compose(gam, phi, N, Vec3(Vec3::Zero()));
      for (std::size_t k = 2; k <= N; ++k) {
        const auto ckp = series::compose(ck[k], phi, N - k, Vec3(Vec3::Zero()));
        for (std::size_t i = 0; i + k <= N; ++i) P[i + k] += ckp[i];
      }
    };
    for (std::size_t sweep = 0; sweep < N; ++sweep) {
      evaluate();
      for (std::size_t k = 2; k <= N; ++k) phi[k] -= fr.e.dot(P[k]);
    }
    evaluate();
    std::vector<double> sn(N + 1, 0.0), sb(N + 1, 0.0);
    for (std::size_t k = 2; k <= N; ++k) {
      sn[k] = fr.n.dot(P[k]);
      sb[k] = fr.b.dot(P[k]);
    }
    // H = S'/v; half arc length w with w dw = |S'(v)| dv.
    std::vector<double> hn(N - 1, 0.0), hb(N - 1, 0.0);
    for (std::size_t k = 2; k <= N; ++k) {
      hn[k - 2] = static_cast<double>(k) * sn[k];
      hb[k - 2] = static_cast<double>(k) * sb[k];
    }
    const auto hh = series::add(series::mul(hn, hn, N - 2), series::mul(hb, hb, N - 2), N - 2);
    if (!(hh[0] > 1e-20)) {
      failure[j] = "cusp direction vanishes at t = " + at(tj);
      return;
    }
    const auto habs = series::sqrt(hh, N - 2);
    // s(v) = int_0^v u |H(u)| du; 2 s / v^2 = sum_i 2 |H|_i / (i + 2) v^i.
    std::vector<double> q2(N - 1, 0.0);
    for (std::size_t i = 0; i <= N - 2; ++i) q2[i] = 2.0 * habs[i] / static_cast<double>(i + 2);
    const auto q = series::sqrt(q2, N - 2);
    std::vector<double> w(N, 0.0);
    for (std::size_t i = 0; i <= N - 2; ++i) w[i + 1] = q[i];
    const auto vw = series::revert(w, N - 1);
    const auto nn = series::compose(sn, vw, N);
    const auto nb = series::compose(sb, vw, N);
    for (std::size_t k = 2; k <= N; ++k) {
      out[k][1][j] = nn[k];
      out[k][2][j] = nb[k];
    }
    if (N >= 3) {
      const double cross = nn[2] * nb[3] - nb[2] * nn[3];
      turn[j] = cross > 0.0 ? 1 : (cross < 0.0 ? -1 : 0);
    }
  });

  for (std::size_t j = 0; j < grid; ++j) {
    if (!failure[j].empty()) throw Error(ErrorCode::ReparametrizationFailure, failure[j]);
  }
  if (N >= 3) {
    const int s0 = turn[0];
    for (std::size_t j = 0; j < grid; ++j) {
      if (turn[j] == 0 || turn[j] != s0) {
        throw Error(ErrorCode::NormalFormFailure,
                    "half-cuspidal curvature changes sign or vanishes near t = " + at(t[j]));
      }
    }
    if (s0 < 0) {
      // v -> -v: c_k -> (-1)^k c_k.
      for (std::size_t k = 3; k <= N; k += 2) {
        for (auto& c : out[k]) {
          for (auto& x : c) x = -x;
        }
      }
    }
  }
  return JetSeries::from_samples(carrier, out, jets.epsilon());
}

PeriodicScalarFn isomer_angle(const PeriodicScalarFn& kappa_s, const PeriodicScalarFn& kappa, const IsomerSpec& spec,
                              std::size_t grid) {
  validate(spec);
  const double l = kappa_s.period();
  const PeriodicScalarFn k = kappa.reparametrized(spec.sigma(), spec.shift);
  const auto t = uniform_grid(l, grid);
  std::vector<double> theta(grid);
  for (std::size_t j = 0; j < grid; ++j) {
    const double ks = kappa_s(t[j]), kv = k(t[j]);
    if (!(std::abs(ks) < kv)) {
      throw Error(ErrorCode::AdmissibilityViolation, "|kappa_s| >= kappa(sigma t + a) at t = " + at(t[j]));
    }
    const double r = ks / kv;
    theta[j] = std::atan2(spec.sigma_prime() * std::sqrt(1.0 - r * r), r);
  }
  return PeriodicScalarFn::from_samples(l, theta);
}

JetSeries jet_reconstruct(const KossowskiMetric& metric, const ClosedCurve& carrier, int sign, int order,
                          std::size_t grid) {
  if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidInput, "sign must be +1 or -1");
  const int Nmax = metric.order();
  const int Ni = order <= 0 ? Nmax : order;
  if (Ni < 2 || Ni > Nmax) throw Error(ErrorCode::InvalidInput, "reconstruction order must lie in [2, metric order]");
  const double l = metric.period();
  if (std::abs(carrier.period() - l) > 1e-9 * l) {
    throw Error(ErrorCode::InvalidInput, "carrier period differs from the metric period");
  }
  if (!carrier.unit_speed()) throw Error(ErrorCode::InvalidInput, "reconstruction carrier must be unit speed");
  const std::size_t N = static_cast<std::size_t>(Ni);
  const std::size_t M = grid == 0 ? metric.grid() : grid;
  const auto t = uniform_grid(l, M);
  const auto kappa = carrier.curvature().sample(M);
  const auto tau = carrier.torsion().sample(M);
  auto row = [&](const std::vector<PeriodicScalarFn>& v, std::size_t k) { return v[k].sample(M); };

  Samples c = empty_samples(N, M);   // c[k][comp][j]
  Samples dc = empty_samples(N, M);  // total derivative Dc_k in the Frenet frame
  auto dot = [](const Samples& a, std::size_t i, const Samples& b, std::size_t k, std::size_t j) {
    return a[i][0][j] * b[k][0][j] + a[i][1][j] * b[k][1][j] + a[i][2][j] * b[k][2][j];
  };

  for (std::size_t p = 2; p <= N; ++p) {
    const auto Fp = row(metric.F(), p - 1);
    const auto Ep = row(metric.E(), p);
    const auto Gp = row(metric.G(), p);
    auto& a = c[p][0];
    for (std::size_t j = 0; j < M; ++j) {
      double rest = 0.0;
      for (std::size_t i = 2; i + 2 <= p; ++i) rest += static_cast<double>(p - i) * dot(dc, i, c, p - i, j);
      a[j] = (Fp[j] - rest) / static_cast<double>(p);
    }
    const auto da = spectral_derivative(l, a);
    std::vector<std::string> failure(M);
    parallel_for(M, [&](std::size_t j) {
      double erest = 0.0;
      for (std::size_t i = 2; i + 2 <= p; ++i) erest += dot(dc, i, dc, p - i, j);
      const double b = (da[j] - 0.5 * (Ep[j] - erest)) / kappa[j];
      c[p][1][j] = b;
      if (p == 2) {
        const double rad = 0.25 * Gp[j] - a[j] * a[j] - b * b;
        if (!(rad > 0.0)) {
          failure[j] = "P|G_2/4 - alpha_2^2 - beta_2^2 = " + at(rad) + " at t = " + at(t[j]);
          return;
        }
        c[p][2][j] = -sign * std::sqrt(rad);
      } else {
        double grest = 0.0;
        for (std::size_t i = 3; i + 1 <= p; ++i) grest += static_cast<double>(i * (p + 2 - i)) * dot(c, i, c, p + 2 - i, j);
        const double rhs = (Gp[j] - grest) / (4.0 * static_cast<double>(p));
        c[p][2][j] = (rhs - c[2][0][j] * a[j] - c[2][1][j] * b) / c[2][2][j];
      }
      // Linearized per-order system in (alpha_p, beta_p, delta_p) for the (F, E, G) equations.
      const double pp = static_cast<double>(p);
      const double g = p == 2 ? 8.0 : 4.0 * pp;
      Eigen::Matrix3d J;
      J << pp, 0.0, 0.0, 0.0, -2.0 * kappa[j], 0.0, g * c[2][0][j], g * c[2][1][j], g * c[2][2][j];
      const Eigen::JacobiSVD<Eigen::Matrix3d> svd(J);
      const auto sv = svd.singularValues();
      if (!(sv[2] > 0.0) || sv[0] / sv[2] > 1e10) {
        failure[j] = "J|condition number " + at(sv[2] > 0.0 ? sv[0] / sv[2] : INFINITY) + " at order " +
                     std::to_string(p) + ", t = " + at(t[j]);
      }
    });
    for (const auto& f : failure) {
      if (f.empty()) continue;
      if (f[0] == 'P') throw Error(ErrorCode::PointwiseAdmissibilityViolation, "|kappa_s| >= kappa: " + f.substr(2));
      throw Error(ErrorCode::JetSolveFailure, f.substr(2));
    }
    const auto db = spectral_derivative(l, c[p][1]);
    const auto dd = spectral_derivative(l, c[p][2]);
    for (std::size_t j = 0; j < M; ++j) {
      dc[p][0][j] = da[j] - kappa[j] * c[p][1][j];
      dc[p][1][j] = kappa[j] * a[j] + db[j] - tau[j] * c[p][2][j];
      dc[p][2][j] = tau[j] * c[p][1][j] + dd[j];
    }
  }
  JetSeries jets = JetSeries::from_samples(carrier, c);
  // The fitted delta_2 must keep its sign over the whole period, including between grid points.
  const auto d2 = jets.coeff(2)[2].sample(4 * M);
  for (std::size_t j = 0; j < d2.size(); ++j) {
    if (!(-sign * d2[j] > 0.0)) {
      throw Error(ErrorCode::JetSolveFailure,
                  "delta_2 changes sign along the period near t = " + at(l * static_cast<double>(j) / (4.0 * M)));
    }
  }
  return jets;
}

JetSeries build_isomer(const CuspidalEdge& g, const IsomerSpec& spec, int order, std::size_t grid) {
  validate(spec);
  const auto rep = admissible(g, grid);
  if (!rep.admissible) {
    throw Error(ErrorCode::AdmissibilityViolation,
                "edge is not admissible: max|kappa_s| = " + at(rep.max_abs_kappa_s) + ", min kappa = " + at(rep.min_kappa));
  }
  return build_isomer(first_fundamental_form(g, order, grid), g.carrier(), spec, order);
}

JetSeries build_isomer(const KossowskiMetric& metric, const ClosedCurve& carrier, const IsomerSpec& spec, int order) {
  validate(spec);
  return jet_reconstruct(metric, carrier.reparametrized(spec.sigma(), spec.shift), spec.sigma_prime(), order);
}

double jet_difference(const JetSeries& a, const JetSeries& b, int k, std::size_t n) {
  const auto zero = std::vector<double>(n, 0.0);
  double diff = 0.0, scale = 0.0;
  for (int r = 0; r < 3; ++r) {
    const auto x = k <= a.order() ? a.coeff(k)[r].sample(n) : zero;
    const auto y = k <= b.order() ? b.coeff(k)[r].sample(n) : zero;
    for (std::size_t j = 0; j < n; ++j) {
      diff = std::max(diff, std::abs(x[j] - y[j]));
      scale = std::max(scale, std::abs(y[j]));
    }
  }
  return scale > 0.0 ? diff / scale : diff;
}

UniquenessResult uniqueness_check(const CuspidalEdge& g, const KossowskiMetric& metric, const ClosedCurve& carrier,
                                  int order, double tol) {
  const std::size_t grid = metric.grid();
  const JetSeries ng = normal_form(g, 0.0, order, grid);
  UniquenessResult best;
  best.mismatch_order = -1;
  best.residual = INFINITY;
  for (int sign : {1, -1}) {
    JetSeries cand;
    try {
      cand = normal_form(CuspidalEdge(jet_reconstruct(metric, carrier, sign, order, grid)), 0.0, order, grid);
    } catch (const Error&) {
      continue;
    }
    int mismatch = 0;
    double worst = 0.0;
    for (int k = 2; k <= order; ++k) {
      const double d = jet_difference(ng, cand, k, grid);
      worst = std::max(worst, d);
      if (d > tol && mismatch == 0) mismatch = k;
    }
    if (mismatch == 0) return {sign > 0 ? Branch::Plus : Branch::Minus, 0, worst};
    if (mismatch > best.mismatch_order || (mismatch == best.mismatch_order && worst < best.residual)) {
      best.mismatch_order = mismatch;
      best.residual = worst;
    }
  }
  best.branch = Branch::Neither;
  return best;
}

}  // namespace isoforge
