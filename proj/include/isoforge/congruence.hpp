#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "isoforge/curves.hpp"
#include "isoforge/edge.hpp"
#include "isoforge/isomer.hpp"
#include "isoforge/periodic.hpp"

namespace isoforge {

struct ScanOptions {
  std::size_t coarse = 4096;  ///< offsets scanned
  std::size_t eval = 1024;    ///< residual evaluation points
  double refine_tol = 1e-8;   ///< target accuracy of refined offsets
};

/// mu(t + c) = mu(t) (shift, c in (0, l)) or mu(c - t) = mu(t) (reflection, c in [0, l)).
struct SymmetryElement {
  enum class Kind { Shift, Reflection };
  Kind kind = Kind::Shift;
  double c = 0.0;
  double residual = 0.0;  ///< sup over the evaluation points
};
std::string to_string(SymmetryElement::Kind k);

struct FunctionSymmetries {
  bool constant = false;  ///< continuum of symmetries; elements left empty
  std::vector<SymmetryElement> elements;
};

FunctionSymmetries function_symmetries(const PeriodicScalarFn& mu, double tol, const ScanOptions& opts = {});

/// Rigid map x -> R x + d with det R = det.
struct RigidMotion {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();
  int det = 1;
};

/// Least-squares T with det R = det mapping p[j] onto q[j]; returns the sup distance.
double procrustes(const std::vector<Vec3>& p, const std::vector<Vec3>& q, int det, RigidMotion& out);

struct CurveSymmetry {
  SymmetryElement param;  ///< shift: T gamma(t) = gamma(t + c); reflection: T gamma(t) = gamma(c - t)
  RigidMotion motion;
  double signature_residual = 0.0;
};

struct CurveSymmetries {
  bool constant_signature = false;
  std::vector<CurveSymmetry> elements;  ///< non-identity symmetries
  std::size_t group_order() const { return elements.size() + 1; }
};

/// Candidates from aligning (kappa, tau): shift needs kappa(t+c) = kappa(t), tau(t+c) = det tau(t);
/// reversal needs kappa(c-t) = kappa(t), tau(c-t) = det tau(t). Each is confirmed by registration
/// (sup distance <= tol). Carrier must be unit speed.
CurveSymmetries curve_symmetries(const ClosedCurve& curve, double tol = 1e-6, const ScanOptions& opts = {});

/// Alignment of g onto f: T g(t, v) = f(sigma t + shift, v_sign v) in normal-form coordinates.
struct CongruenceWitness {
  RigidMotion motion;
  int sigma = 1;
  double shift = 0.0;
  int v_sign = 1;
  double residual = 0.0;
};

struct CongruenceOptions {
  double tol = 1e-6;     ///< congruent iff some alignment has residual <= tol
  double floor = 1e-4;   ///< non-congruence is certified when every alignment has residual >= floor
  int order = 4;         ///< jet order compared
  std::size_t grid = 512;
  ScanOptions scan;
};

struct CongruenceReport {
  bool congruent = false;
  bool certified = false;  ///< verdict backed by the tolerance (congruent) or by the floor (not congruent)
  double residual = 0.0;   ///< best residual found (a lower bound when no alignment survived the scan)
  std::optional<CongruenceWitness> witness;  ///< first passing alignment in canonical order
  std::vector<CongruenceWitness> passing;
  double tol = 0.0, floor = 0.0;
  std::size_t grid = 0;
};

/// Precomputed data for repeated comparisons: normal form at base t = 0 and the
/// aligned channels kappa, tau, kappa_s, beta_2, delta_2, ..., beta_N, delta_N of it,
/// sampled on the scan and evaluation grids, plus carrier positions on the evaluation grid.
struct EdgeFingerprint {
  double period = 0.0;
  JetSeries nf;
  ClosedCurve carrier;
  PeriodicScalarFn kappa, tau, kappa_s;
  std::vector<PeriodicScalarFn> channels;
  std::vector<std::vector<double>> scan;  ///< on opts.scan.coarse points
  std::vector<std::vector<double>> eval;  ///< on opts.scan.eval points
  std::vector<Vec3> points;
  double lipschitz = 0.0;  ///< max |d/dt| over the channels
};

EdgeFingerprint fingerprint(const CuspidalEdge& edge, const CongruenceOptions& opts = {});

CongruenceReport edge_congruent(const EdgeFingerprint& f, const EdgeFingerprint& g, const CongruenceOptions& opts = {});
CongruenceReport edge_congruent(const CuspidalEdge& f, const CuspidalEdge& g, const CongruenceOptions& opts = {});

struct LambdaSet {
  std::vector<IsomerSpec> grid;              ///< all (i, a) in scan order
  std::vector<std::vector<std::size_t>> classes;  ///< indices into grid, in order of first appearance
  std::vector<std::size_t> class_of;         ///< grid index -> class index
  /// Smallest residual between representatives of distinct classes; >= floor certifies
  /// pairwise non-congruence of all classes.
  double min_separation = 0.0;
  std::size_t certified_pairs = 0, uncertified_pairs = 0;
  std::size_t max_class_size() const;
};

/// Partition of {1..4} x {k l / shifts} under edge_congruent. Each new isomer is compared to
/// one representative per existing class (congruence is an equivalence relation); after the
/// partition is formed, every pair of representatives is checked against the floor.
LambdaSet lambda_set(const CuspidalEdge& g, std::size_t shifts = 64, const CongruenceOptions& opts = {});

struct PersistenceRow {
  double s = 0.0;
  FunctionSymmetries symmetries;
  double jump = 0.0;  ///< sup distance to the previous row's function
};

struct PersistenceTable {
  std::vector<PersistenceRow> rows;
  /// Smallest sampled s > 0 at which a symmetry (or constancy) is detected; empty if none.
  std::optional<double> first_symmetric;
  bool base_asymmetric = false;  ///< no symmetries at the first sampled s
  /// Base asymmetric and no symmetries at any s before first_symmetric (or at all).
  bool persistent = false;
};

PersistenceTable symmetry_persistence(const std::function<PeriodicScalarFn(double)>& family,
                                      const std::vector<double>& s_values, double tol, const ScanOptions& opts = {});

}  // namespace isoforge
