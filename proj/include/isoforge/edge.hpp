#pragma once

#include <array>
#include <cstddef>
#include <variant>
#include <vector>

#include "isoforge/curves.hpp"
#include "isoforge/cusp.hpp"
#include "isoforge/periodic.hpp"

namespace isoforge {

/// v-jet of an edge at one parameter t, in the Frenet frame (e, n, b) of a
/// unit-speed carrier: f(t, v) = gamma(t) + sum_k coeff[k] v^k with
/// coeff[k] = (alpha_k, beta_k, delta_k); coeff_dt holds the t-derivatives of
/// these components (not of the vectors).
struct PointJet {
  double kappa = 0.0;
  double tau = 0.0;
  std::vector<Vec3> coeff;
  std::vector<Vec3> coeff_dt;
};

/// Edge given by Fukui's formula
///   f(t, v) = gamma(t) + (A cos(theta) + B sin(theta)) n + (-A sin(theta) + B cos(theta)) b.
struct FukuiEdge {
  ClosedCurve carrier;  ///< unit speed
  PeriodicScalarFn theta;
  SectionalCusp section;
};

/// Edge given by its v-jet along a unit-speed carrier,
/// f(t, v) = gamma(t) + sum_{k=2..N} (alpha_k e + beta_k n + delta_k b) v^k.
class JetSeries {
 public:
  using Triple = std::array<PeriodicScalarFn, 3>;

  JetSeries() = default;
  /// coeffs[k] for k = 0..N; entries 0 and 1 must vanish and are overwritten with zeros.
  JetSeries(ClosedCurve carrier, std::vector<Triple> coeffs, double epsilon = 0.2);
  /// samples[k][c][j]: component c of coefficient k at t_j = j l / M.
  static JetSeries from_samples(ClosedCurve carrier, const std::vector<std::array<std::vector<double>, 3>>& samples,
                                double epsilon = 0.2);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  double period() const { return carrier_.period(); }
  double epsilon() const { return epsilon_; }
  const ClosedCurve& carrier() const { return carrier_; }
  const Triple& coeff(int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  const std::vector<Triple>& coeffs() const { return coeffs_; }

  Vec3 position(double t, double v) const;
  PointJet point_jet(double t, int order) const;
  /// Component samples on the uniform grid: out[k][c][j].
  std::vector<std::array<std::vector<double>, 3>> sample(std::size_t n) const;

  /// Jets of (t, v) -> f(sigma t + shift, v) on the carrier gamma(sigma t + shift):
  /// (alpha, beta, delta) -> (sigma alpha, beta, sigma delta).
  JetSeries reparametrized(int sigma, double shift) const;
  /// Jets of (t, v) -> f(t, s v): c_k -> s^k c_k.
  JetSeries v_scaled(double s) const;
  /// Truncate or zero-extend to order N.
  JetSeries with_order(int order) const;
  /// Same jets with coefficient k replaced.
  JetSeries with_coeff(int k, Triple value) const;

  /// Cartesian coefficient functions C_k(t) = alpha_k e + beta_k n + delta_k b (fitted on n samples).
  std::vector<Triple> cartesian(std::size_t n) const;

 private:
  ClosedCurve carrier_;
  std::vector<Triple> coeffs_;
  double epsilon_ = 0.2;
};

/// A cuspidal edge along a closed curve: closed-form Fukui data or a jet series.
class CuspidalEdge {
 public:
  CuspidalEdge() = default;
  explicit CuspidalEdge(FukuiEdge f) : rep_(std::move(f)) {}
  explicit CuspidalEdge(JetSeries j) : rep_(std::move(j)) {}

  bool is_fukui() const { return std::holds_alternative<FukuiEdge>(rep_); }
  const FukuiEdge& fukui() const { return std::get<FukuiEdge>(rep_); }
  const JetSeries& jets() const { return std::get<JetSeries>(rep_); }

  const ClosedCurve& carrier() const;
  double period() const { return carrier().period(); }
  double epsilon() const;

  Vec3 position(double t, double v) const;
  /// Jet to v-order `order` at t (coefficients beyond a stored jet series are zero).
  PointJet point_jet(double t, int order) const;
  /// Jet series of order `order` fitted from `grid` samples (identity for jet edges of equal order).
  JetSeries to_jets(int order, std::size_t grid = 512) const;

 private:
  std::variant<FukuiEdge, JetSeries> rep_;
};

struct EdgeOptions {
  double min_curvature = 1e-6;
  std::size_t check_grid = 512;
};

/// Fukui's formula on a unit-speed carrier. Validates unit speed, kappa > 0
/// (VanishingCurvature) and that theta shares the carrier's period.
CuspidalEdge fukui_edge(const ClosedCurve& carrier, const PeriodicScalarFn& theta, const SectionalCusp& section,
                        const EdgeOptions& opts = {});

/// Same edge with base point moved to gamma(t0): t -> t + t0.
CuspidalEdge shifted_edge(const CuspidalEdge& edge, double t0);

struct InjectivityReport {
  bool injective = true;
  double min_distance = 0.0;  ///< over parameter pairs at least 2 epsilon apart along the carrier
  double threshold = 0.0;
};

/// A-posteriori injectivity of f on an nt x nv grid over S^1 x [-epsilon, epsilon]
/// (sample pairs far apart along the carrier must stay apart in space).
InjectivityReport check_injectivity(const CuspidalEdge& edge, std::size_t nt = 128, std::size_t nv = 9);

}  // namespace isoforge
