#pragma once

#include <cstddef>
#include <string>

#include "isoforge/curves.hpp"
#include "isoforge/edge.hpp"
#include "isoforge/metric.hpp"
#include "isoforge/periodic.hpp"

namespace isoforge {

/// Family index i in {1,2,3,4} and base shift a. The family runs along
/// t -> gamma(sigma t + a) with limiting normal curvature of sign sigma'.
struct IsomerSpec {
  int family = 1;
  double shift = 0.0;

  int sigma() const { return family <= 2 ? 1 : -1; }
  int sigma_prime() const { return family % 2 == 1 ? 1 : -1; }
};

/// Throws InvalidInput unless family is 1..4.
void validate(const IsomerSpec& spec);

/// Normal form with base point gamma(t0): t is arc length from gamma(t0), every
/// section lies in its normal plane (alpha_k = 0) and v is the half-arc-length
/// parameter of the section. The v-sign is fixed by m(t, 0) > 0, i.e. the
/// section turns counterclockwise from c_2 towards c_3 in the (n, b) plane.
/// Carrier must be unit speed. Throws ReparametrizationFailure or NormalFormFailure.
JetSeries normal_form(const CuspidalEdge& edge, double t0 = 0.0, int order = 4, std::size_t grid = 512);

/// theta(t) with cos = kappa_s(t) / kappa(sigma t + a), sin of sign sigma'.
/// Throws AdmissibilityViolation if |kappa_s(t)| >= kappa(sigma t + a) somewhere.
PeriodicScalarFn isomer_angle(const PeriodicScalarFn& kappa_s, const PeriodicScalarFn& kappa, const IsomerSpec& spec,
                              std::size_t grid = 512);

/// Jets of the edge along `carrier` whose first fundamental form matches the
/// metric: G at v-orders 2..N, F at 1..N-1, E at 2..N. Per order p, on the grid:
///   alpha_p = (F_{p-1} - sum_{j=2..p-2} (p-j) Dc_j . c_{p-j}) / p
///   beta_p  = (alpha_p' - (E_p - sum_{j+k=p} Dc_j . Dc_k) / 2) / kappa
///   delta_p = ((G_p - sum_{3<=j<=p-1} j (p+2-j) c_j . c_{p+2-j}) / (4p) - alpha_2 alpha_p - beta_2 beta_p) / delta_2
/// with delta_2 = -sign sqrt(G_2/4 - alpha_2^2 - beta_2^2), so sign > 0 gives kappa_nu > 0.
/// order <= 0 uses the metric's order; grid 0 uses the metric's grid.
/// Throws PointwiseAdmissibilityViolation, JetSolveFailure (condition > 1e10 or a
/// sign flip of delta_2 along the period) and InvalidInput (period mismatch).
JetSeries jet_reconstruct(const KossowskiMetric& metric, const ClosedCurve& carrier, int sign, int order = 0,
                          std::size_t grid = 0);

/// Isomer f^i_{gamma(a)} of g: jets along gamma(sigma t + a) with g's metric and sign sigma'.
/// Throws AdmissibilityViolation when g is not admissible.
JetSeries build_isomer(const CuspidalEdge& g, const IsomerSpec& spec, int order = 4, std::size_t grid = 512);
/// Same from g's metric and carrier, skipping the admissibility check (callers check once).
JetSeries build_isomer(const KossowskiMetric& metric, const ClosedCurve& carrier, const IsomerSpec& spec, int order = 4);

enum class Branch { Plus, Minus, Neither };
std::string to_string(Branch b);

struct UniquenessResult {
  Branch branch = Branch::Neither;
  int mismatch_order = 0;  ///< first order where the closer candidate disagrees (Neither only)
  double residual = 0.0;   ///< sup relative jet mismatch against the chosen or closer candidate
};

/// Compares the normal form of g with those of f_+ and f_- reconstructed from
/// the metric along the carrier, order by order (relative sup error <= tol).
UniquenessResult uniqueness_check(const CuspidalEdge& g, const KossowskiMetric& metric, const ClosedCurve& carrier,
                                  int order = 4, double tol = 1e-6);

/// Largest relative sup difference of coefficient k (all three components) between two
/// jet series on the same parameter domain, sampled on n points.
double jet_difference(const JetSeries& a, const JetSeries& b, int k, std::size_t n = 512);

}  // namespace isoforge
