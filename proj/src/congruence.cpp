#include "isoforge/congruence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include <Eigen/SVD>
#include <boost/math/tools/minima.hpp>

#include "isoforge/error.hpp"
#include "isoforge/metric.hpp"
#include "isoforge/parallel.hpp"

namespace isoforge {

namespace {

// One scanned function pair: f is shifted/reflected, g stays put (times g_scale).
struct Channel {
  const PeriodicScalarFn* f = nullptr;
  const std::vector<double>* f_scan = nullptr;  // f on S points
  const std::vector<double>* g_eval = nullptr;  // g on E points
  double g_scale = 1.0;
};

struct Scan {
  std::size_t S = 0, E = 0;
  double l = 0.0;
  std::vector<Channel> ch;

  std::size_t stride() const { return S / E; }

  // Coarse sup residual at offset index i; stops once above `exit`.
  double coarse(std::size_t i, int sigma, double exit) const {
    double r = 0.0;
    const std::size_t st = stride();
    for (std::size_t j = 0; j < E; ++j) {
      const std::size_t e = j * st;
      const std::size_t idx = sigma > 0 ? (e + i) % S : (i + S - e) % S;
      for (const auto& c : ch) {
        r = std::max(r, std::abs(c.g_scale * (*c.g_eval)[j] - (*c.f_scan)[idx]));
      }
      if (r > exit) return r;
    }
    return r;
  }

  std::vector<std::vector<double>> aligned(int sigma, double c) const {
    std::vector<std::vector<double>> out;
    out.reserve(ch.size());
    for (const auto& k : ch) out.push_back(k.f->reparametrized(sigma, c).sample(E));
    return out;
  }

  double l2(int sigma, double c) const {
    const auto a = aligned(sigma, c);
    double s = 0.0;
    for (std::size_t m = 0; m < ch.size(); ++m) {
      for (std::size_t j = 0; j < E; ++j) {
        const double d = ch[m].g_scale * (*ch[m].g_eval)[j] - a[m][j];
        s += d * d;
      }
    }
    return s;
  }

  double sup(int sigma, double c) const {
    const auto a = aligned(sigma, c);
    double r = 0.0;
    for (std::size_t m = 0; m < ch.size(); ++m) {
      for (std::size_t j = 0; j < E; ++j) r = std::max(r, std::abs(ch[m].g_scale * (*ch[m].g_eval)[j] - a[m][j]));
    }
    return r;
  }

  // Gauss-Newton on the L2 misfit, kept inside [lo, hi]; d/dc f(sigma t + c) = sigma h'(t).
  double newton(int sigma, double c, double lo, double hi, double tol) const {
    for (int it = 0; it < 8; ++it) {
      double num = 0.0, den = 0.0;
      for (const auto& k : ch) {
        const auto h = k.f->reparametrized(sigma, c);
        const auto v = h.sample(E), d = h.sample(E, 1);
        for (std::size_t j = 0; j < E; ++j) {
          num += (k.g_scale * (*k.g_eval)[j] - v[j]) * sigma * d[j];
          den += d[j] * d[j];
        }
      }
      if (!(den > 0.0)) break;
      const double next = std::clamp(c + num / den, lo, hi);
      const double step = std::abs(next - c);
      c = next;
      if (step < tol) break;
    }
    return c;
  }

  // Local minima of the coarse residual below `keep`, refined by Brent then Gauss-Newton.
  // A flat residual (every offset passes) means a continuous symmetry; one offset stands for all.
  std::vector<double> candidates(int sigma, double exit, double keep, bool skip_zero, double refine_tol) const {
    std::vector<double> r(S);
    for (std::size_t i = 0; i < S; ++i) r[i] = coarse(i, sigma, exit);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < S; ++i) {
      if (!(r[i] < keep)) continue;
      const double lo = r[(i + S - 1) % S], hi = r[(i + 1) % S];
      if (!(r[i] <= lo && r[i] < hi)) continue;
      if (skip_zero && i == 0) continue;
      idx.push_back(i);
    }
    const auto passing = static_cast<std::size_t>(std::count_if(r.begin(), r.end(), [&](double x) { return x < keep; }));
    const double h = l / static_cast<double>(S);
    if (passing == S) return {skip_zero ? h * static_cast<double>(S / 2) : 0.0};
    std::vector<double> out;
    for (std::size_t i : idx) {
      const double c0 = h * static_cast<double>(i);
      const auto best = boost::math::tools::brent_find_minima([&](double c) { return l2(sigma, c); }, c0 - h, c0 + h,
                                                              std::numeric_limits<double>::digits / 2 + 4);
      const double c1 = newton(sigma, best.first, c0 - h, c0 + h, 1e-3 * refine_tol * std::max(1.0, l));
      out.push_back(l2(sigma, c1) <= best.second ? c1 : best.first);
    }
    return out;
  }
};

double wrap(double c, double l) {
  double x = std::fmod(c, l);
  if (x < 0.0) x += l;
  if (l - x < 1e-9 * l) x = 0.0;
  return x;
}

double cyclic_gap(double a, double b, double l) {
  const double d = std::abs(wrap(a - b, l));
  return std::min(d, l - d);
}

double max_slope(const PeriodicScalarFn& f, std::size_t n) {
  const auto d = f.sample(n, 1);
  double m = 0.0;
  for (double x : d) m = std::max(m, std::abs(x));
  return m;
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

void check_scan(const ScanOptions& o) {
  if (!is_power_of_two(o.coarse) || !is_power_of_two(o.eval) || o.eval > o.coarse) {
    throw Error(ErrorCode::InvalidInput, "scan sizes must be powers of two with eval <= coarse");
  }
}

}  // namespace

std::string to_string(SymmetryElement::Kind k) { return k == SymmetryElement::Kind::Shift ? "shift" : "reflection"; }

FunctionSymmetries function_symmetries(const PeriodicScalarFn& mu, double tol, const ScanOptions& opts) {
  check_scan(opts);
  FunctionSymmetries out;
  const double l = mu.period();
  const auto fs = mu.sample(opts.coarse);
  if (spread(fs) <= tol) {
    out.constant = true;
    return out;
  }
  const auto ge = mu.sample(opts.eval);
  Scan scan{opts.coarse, opts.eval, l, {Channel{&mu, &fs, &ge, 1.0}}};
  const double h = l / static_cast<double>(opts.coarse);
  const double keep = tol + max_slope(mu, opts.coarse) * h;
  for (int sigma : {1, -1}) {
    const auto kind = sigma > 0 ? SymmetryElement::Kind::Shift : SymmetryElement::Kind::Reflection;
    for (double c : scan.candidates(sigma, keep, keep, sigma > 0, opts.refine_tol)) {
      const double cw = wrap(c, l);
      if (sigma > 0 && cyclic_gap(cw, 0.0, l) < 1e-6 * l) continue;
      const double r = scan.sup(sigma, cw);
      if (r > tol) continue;
      const bool dup = std::any_of(out.elements.begin(), out.elements.end(), [&](const SymmetryElement& e) {
        return e.kind == kind && cyclic_gap(e.c, cw, l) < 1e-6 * l;
      });
      if (!dup) out.elements.push_back({kind, cw, r});
    }
  }
  std::sort(out.elements.begin(), out.elements.end(), [](const SymmetryElement& a, const SymmetryElement& b) {
    return std::tie(a.kind, a.c) < std::tie(b.kind, b.c);
  });
  return out;
}

double procrustes(const std::vector<Vec3>& p, const std::vector<Vec3>& q, int det, RigidMotion& out) {
  const std::size_t n = p.size();
  Vec3 pc = Vec3::Zero(), qc = Vec3::Zero();
  for (std::size_t j = 0; j < n; ++j) {
    pc += p[j];
    qc += q[j];
  }
  pc /= static_cast<double>(n);
  qc /= static_cast<double>(n);
  Mat3 H = Mat3::Zero();
  for (std::size_t j = 0; j < n; ++j) H += (p[j] - pc) * (q[j] - qc).transpose();
  const Eigen::JacobiSVD<Mat3> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3 U = svd.matrixU(), V = svd.matrixV();
  Mat3 D = Mat3::Identity();
  D(2, 2) = det * ((V * U.transpose()).determinant() < 0.0 ? -1.0 : 1.0);
  out.rotation = V * D * U.transpose();
  out.translation = qc - out.rotation * pc;
  out.det = det;
  double r = 0.0;
  for (std::size_t j = 0; j < n; ++j) r = std::max(r, (out.rotation * p[j] + out.translation - q[j]).norm());
  return r;
}

CurveSymmetries curve_symmetries(const ClosedCurve& curve, double tol, const ScanOptions& opts) {
  check_scan(opts);
  if (!curve.unit_speed()) throw Error(ErrorCode::InvalidInput, "curve_symmetries needs a unit-speed curve");
  CurveSymmetries out;
  const double l = curve.period();
  const auto& kap = curve.curvature();
  const auto& tau = curve.torsion();
  const auto ks = kap.sample(opts.coarse), ts = tau.sample(opts.coarse);
  const double sig_tol = 1e-6 * std::max(1.0, *std::max_element(ks.begin(), ks.end()));
  if (spread(ks) <= sig_tol && spread(ts) <= sig_tol) {
    out.constant_signature = true;
    return out;
  }
  const auto ke = kap.sample(opts.eval), te = tau.sample(opts.eval);
  const auto pts = curve.sample(opts.eval);
  const double h = l / static_cast<double>(opts.coarse);
  const double lip = std::max(max_slope(kap, opts.coarse), max_slope(tau, opts.coarse));
  const double keep = 1e3 * sig_tol + lip * h;
  for (int det : {1, -1}) {
    Scan scan{opts.coarse, opts.eval, l, {Channel{&kap, &ks, &ke, 1.0}, Channel{&tau, &ts, &te, double(det)}}};
    for (int sigma : {1, -1}) {
      const auto kind = sigma > 0 ? SymmetryElement::Kind::Shift : SymmetryElement::Kind::Reflection;
      for (double c : scan.candidates(sigma, keep, keep, sigma > 0 && det > 0, opts.refine_tol)) {
        const double cw = wrap(c, l);
        if (sigma > 0 && det > 0 && cyclic_gap(cw, 0.0, l) < 1e-6 * l) continue;
        const auto q = curve.reparametrized(sigma, cw).sample(opts.eval);
        RigidMotion T;
        const double r = procrustes(pts, q, det, T);
        if (r > tol) continue;
        const bool dup = std::any_of(out.elements.begin(), out.elements.end(), [&](const CurveSymmetry& e) {
          return e.param.kind == kind && e.motion.det == det && cyclic_gap(e.param.c, cw, l) < 1e-6 * l;
        });
        if (!dup) out.elements.push_back({{kind, cw, r}, T, scan.sup(sigma, cw)});
      }
    }
  }
  std::sort(out.elements.begin(), out.elements.end(), [](const CurveSymmetry& a, const CurveSymmetry& b) {
    return std::make_tuple(a.param.kind, -a.motion.det, a.param.c) < std::make_tuple(b.param.kind, -b.motion.det, b.param.c);
  });
  return out;
}

EdgeFingerprint fingerprint(const CuspidalEdge& edge, const CongruenceOptions& opts) {
  check_scan(opts.scan);
  EdgeFingerprint fp;
  fp.nf = normal_form(edge, 0.0, opts.order, opts.grid);
  fp.carrier = fp.nf.carrier();
  fp.period = fp.carrier.period();
  fp.kappa = fp.carrier.curvature();
  fp.tau = fp.carrier.torsion();
  fp.kappa_s = invariants_from_edge(CuspidalEdge(fp.nf), opts.grid).kappa_s;
  const std::size_t S = opts.scan.coarse, E = opts.scan.eval;
  auto add = [&](const PeriodicScalarFn& fn) {
    fp.channels.push_back(fn);
    fp.scan.push_back(fn.sample(S));
    fp.eval.push_back(fn.sample(E));
    fp.lipschitz = std::max(fp.lipschitz, max_slope(fn, S));
  };
  add(fp.kappa);
  add(fp.tau);
  add(fp.kappa_s);
  for (int k = 2; k <= opts.order; ++k) {
    add(fp.nf.coeff(k)[1]);
    add(fp.nf.coeff(k)[2]);
  }
  fp.points = fp.carrier.sample(E);
  return fp;
}

CongruenceReport edge_congruent(const EdgeFingerprint& f, const EdgeFingerprint& g, const CongruenceOptions& opts) {
  check_scan(opts.scan);
  CongruenceReport rep;
  rep.tol = opts.tol;
  rep.floor = opts.floor;
  rep.grid = opts.scan.eval;
  const double l = f.period;
  if (std::abs(f.period - g.period) > opts.tol || f.channels.size() != g.channels.size()) {
    // Congruent carriers have equal length.
    rep.residual = std::abs(f.period - g.period);
    rep.certified = rep.residual >= opts.floor;
    return rep;
  }
  const std::size_t S = opts.scan.coarse, E = opts.scan.eval;
  const double h = l / static_cast<double>(S);
  const double slack = std::max(f.lipschitz, g.lipschitz) * h;
  const double keep = std::max(opts.tol + slack, opts.floor + 0.5 * slack);
  const double lower = keep - 0.5 * slack;  // bound for alignments the coarse scan rejected
  double best = std::numeric_limits<double>::infinity();
  for (int sigma : {1, -1}) {
    for (int det : {1, -1}) {
      for (int s : {1, -1}) {
        // T g(t, v) = f(sigma t + c, s v): kappa, det tau and kappa_s agree;
        // beta_g,k = s^k beta_f,k and det delta_g,k = s^k sigma delta_f,k after composing f with sigma t + c.
        Scan scan{S, E, l, {}};
        for (std::size_t m = 0; m < f.channels.size(); ++m) {
          double scale = 1.0;
          if (m == 1) scale = det;
          if (m >= 3) {
            const int k = 2 + static_cast<int>((m - 3) / 2);
            const double sk = (k % 2 == 0 || s > 0) ? 1.0 : -1.0;
            scale = (m - 3) % 2 == 0 ? sk : sk * det * sigma;
          }
          scan.ch.push_back(Channel{&f.channels[m], &f.scan[m], &g.eval[m], scale});
        }
        for (double c : scan.candidates(sigma, keep, keep, false, opts.scan.refine_tol)) {
          const double cw = wrap(c, l);
          const double r_sig = scan.sup(sigma, cw);
          RigidMotion T;
          const double r_pos = procrustes(g.points, f.carrier.reparametrized(sigma, cw).sample(E), det, T);
          const double r = std::max(r_sig, r_pos);
          best = std::min(best, r);
          if (r > opts.tol) continue;
          const bool dup = std::any_of(rep.passing.begin(), rep.passing.end(), [&](const CongruenceWitness& w) {
            return w.sigma == sigma && w.motion.det == det && w.v_sign == s && cyclic_gap(w.shift, cw, l) < 1e-6 * l;
          });
          if (!dup) rep.passing.push_back({T, sigma, cw, s, r});
        }
      }
    }
  }
  std::sort(rep.passing.begin(), rep.passing.end(), [](const CongruenceWitness& a, const CongruenceWitness& b) {
    return std::make_tuple(-a.sigma, -a.motion.det, -a.v_sign, a.shift) <
           std::make_tuple(-b.sigma, -b.motion.det, -b.v_sign, b.shift);
  });
  rep.congruent = !rep.passing.empty();
  if (rep.congruent) {
    rep.witness = rep.passing.front();
    rep.residual = std::min_element(rep.passing.begin(), rep.passing.end(), [](const auto& a, const auto& b) {
                     return a.residual < b.residual;
                   })->residual;
    rep.certified = true;
  } else {
    rep.residual = std::min(best, lower);
    rep.certified = rep.residual >= opts.floor;
  }
  return rep;
}

CongruenceReport edge_congruent(const CuspidalEdge& f, const CuspidalEdge& g, const CongruenceOptions& opts) {
  return edge_congruent(fingerprint(f, opts), fingerprint(g, opts), opts);
}

std::size_t LambdaSet::max_class_size() const {
  std::size_t m = 0;
  for (const auto& c : classes) m = std::max(m, c.size());
  return m;
}

LambdaSet lambda_set(const CuspidalEdge& g, std::size_t shifts, const CongruenceOptions& opts) {
  if (shifts == 0) throw Error(ErrorCode::InvalidInput, "lambda_set needs at least one shift");
  const auto adm = admissible(g, opts.grid);
  if (!adm.admissible) throw Error(ErrorCode::AdmissibilityViolation, "edge is not admissible");
  const KossowskiMetric metric = first_fundamental_form(g, opts.order, opts.grid);
  LambdaSet out;
  const double l = g.period();
  for (int i = 1; i <= 4; ++i) {
    for (std::size_t k = 0; k < shifts; ++k) out.grid.push_back({i, l * static_cast<double>(k) / static_cast<double>(shifts)});
  }
  const std::size_t n = out.grid.size();
  std::vector<EdgeFingerprint> fps(n);
  for (std::size_t j = 0; j < n; ++j) {
    fps[j] = fingerprint(CuspidalEdge(build_isomer(metric, g.carrier(), out.grid[j], opts.order)), opts);
  }
  out.class_of.assign(n, 0);
  out.min_separation = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> reps;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<CongruenceReport> r(reps.size());
    parallel_for(reps.size(), [&](std::size_t m) { r[m] = edge_congruent(fps[reps[m]], fps[j], opts); });
    std::size_t hit = reps.size();
    for (std::size_t m = 0; m < reps.size(); ++m) {
      if (r[m].congruent) {
        hit = m;
        break;
      }
    }
    if (hit < reps.size()) {
      out.classes[hit].push_back(j);
      out.class_of[j] = hit;
      continue;
    }
    // New class: its comparisons with every earlier representative are the separation data.
    for (const auto& x : r) {
      out.min_separation = std::min(out.min_separation, x.residual);
      (x.certified ? out.certified_pairs : out.uncertified_pairs)++;
    }
    out.class_of[j] = reps.size();
    reps.push_back(j);
    out.classes.push_back({j});
  }
  if (reps.size() < 2) out.min_separation = 0.0;
  return out;
}

PersistenceTable symmetry_persistence(const std::function<PeriodicScalarFn(double)>& family,
                                      const std::vector<double>& s_values, double tol, const ScanOptions& opts) {
  PersistenceTable out;
  std::optional<PeriodicScalarFn> prev;
  for (double s : s_values) {
    PersistenceRow row;
    row.s = s;
    const PeriodicScalarFn mu = family(s);
    row.symmetries = function_symmetries(mu, tol, opts);
    if (prev) {
      const auto a = mu.sample(opts.eval), b = prev->sample(opts.eval);
      for (std::size_t j = 0; j < a.size(); ++j) row.jump = std::max(row.jump, std::abs(a[j] - b[j]));
    }
    prev = mu;
    out.rows.push_back(std::move(row));
  }
  auto symmetric = [](const PersistenceRow& r) { return r.symmetries.constant || !r.symmetries.elements.empty(); };
  out.base_asymmetric = !out.rows.empty() && !symmetric(out.rows.front());
  for (const auto& r : out.rows) {
    if (symmetric(r)) {
      out.first_symmetric = r.s;
      break;
    }
  }
  out.persistent = out.base_asymmetric;
  return out;
}

}  // namespace isoforge
