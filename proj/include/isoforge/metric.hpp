#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "isoforge/curves.hpp"
#include "isoforge/edge.hpp"
#include "isoforge/periodic.hpp"

namespace isoforge {

/// v-jets of E, F, G at one parameter t (index = power of v).
struct MetricJet {
  std::vector<double> E, F, G;
};

/// First fundamental form of f = gamma + sum c_k v^k to v-order N at one t,
/// for a unit-speed carrier. With Dc_k = (alpha' - kappa beta, kappa alpha + beta' - tau delta,
/// tau beta + delta') the coefficients are
///   E_p     = 2 (alpha_p' - kappa beta_p) + sum_{j+k=p} Dc_j . Dc_k,   E_0 = 1,
///   F_{p-1} = p alpha_p + sum_{j+k=p} k Dc_j . c_k,
///   G_p     = sum_{j+k=p+2} j k c_j . c_k,
/// all sums over j, k >= 2. F_N needs c_{N+1}; missing coefficients count as zero.
MetricJet metric_jet(const PointJet& jet, int order);

struct KossowskiCheck {
  bool ok = true;
  double worst = 0.0;     ///< largest violation found
  double t_worst = 0.0;   ///< where it occurred
  std::string failed;     ///< comma-separated list of failed conditions, empty if ok
};

/// Periodic metric E dt^2 + 2 F dt dv + G dv^2 stored as v-jets whose
/// coefficients are periodic functions of t. lambda is the series square root
/// of EG - F^2 with lambda_0 = 0 and lambda_1 > 0 (known to order N - 1).
class KossowskiMetric {
 public:
  KossowskiMetric() = default;
  KossowskiMetric(std::vector<PeriodicScalarFn> E, std::vector<PeriodicScalarFn> F, std::vector<PeriodicScalarFn> G,
                  std::size_t grid = 512);

  double period() const { return E_.front().period(); }
  int order() const { return static_cast<int>(E_.size()) - 1; }
  std::size_t grid() const { return grid_; }
  const std::vector<PeriodicScalarFn>& E() const { return E_; }
  const std::vector<PeriodicScalarFn>& F() const { return F_; }
  const std::vector<PeriodicScalarFn>& G() const { return G_; }
  const std::vector<PeriodicScalarFn>& lambda() const { return lambda_; }

  /// Optional carrier curve travelling with the metric (used by reconstruction).
  std::optional<ClosedCurve> carrier;

  /// Conditions (a), (b): F(t,0) = G(t,0) = 0, E_v(t,0) = 2 F_t(t,0),
  /// G_t(t,0) = G_v(t,0) = 0, lambda_v(t,0) != 0, EG - F^2 = lambda^2 coefficient-wise.
  KossowskiCheck check(double tol = 1e-8) const;
  /// Throws KossowskiViolation listing the failed conditions.
  void validate(double tol = 1e-8) const;

 private:
  std::vector<PeriodicScalarFn> E_, F_, G_, lambda_;
  std::size_t grid_ = 512;
};

/// Metric jets of the edge to v-order N, fitted on `grid` points, validated.
KossowskiMetric first_fundamental_form(const CuspidalEdge& edge, int order = 4, std::size_t grid = 512);

/// kappa_s = (-F_v E_t + 2 E F_tv - E E_vv) / (2 E^{3/2} lambda_v) at v = 0.
/// Throws OrientationError if lambda_v(t,0) vanishes or changes sign.
PeriodicScalarFn singular_curvature(const KossowskiMetric& metric);

struct EdgeInvariants {
  PeriodicScalarFn kappa_s;
  PeriodicScalarFn kappa_nu;
  PeriodicScalarFn theta;  ///< normalized to (-pi, pi]
};

/// (kappa_s, kappa_nu, theta) with kappa_s = kappa cos(theta), kappa_nu = kappa sin(theta).
/// For jet edges theta is read off the normal-plane part of c_2:
/// theta = atan2(-delta_2, beta_2). Throws AngleRecoveryFailure if that part vanishes.
EdgeInvariants invariants_from_edge(const CuspidalEdge& edge, std::size_t grid = 512);

struct AdmissibilityReport {
  bool admissible = false;
  double margin = 0.0;  ///< min kappa - max |kappa_s|
  double max_abs_kappa_s = 0.0;
  double min_kappa = 0.0;
  double t_max_kappa_s = 0.0;
  double t_min_kappa = 0.0;
};

/// max |kappa_s| < min kappa, from a grid scan refined at the extrema.
AdmissibilityReport admissible(const PeriodicScalarFn& kappa_s, const PeriodicScalarFn& kappa, std::size_t grid = 512);
AdmissibilityReport admissible(const CuspidalEdge& edge, std::size_t grid = 512);

}  // namespace isoforge
