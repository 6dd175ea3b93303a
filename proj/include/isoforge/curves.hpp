#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "isoforge/periodic.hpp"

namespace isoforge {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct CurveOptions {
  std::size_t samples = 1024;       ///< output samples of a reparametrized curve (power of two)
  double ode_tolerance = 1e-13;     ///< abs/rel tolerance of the t(s) integration
  double min_speed = 1e-8;          ///< NonRegularCurve below this |gamma'|
  double min_curvature = 1e-6;      ///< VanishingCurvature / NonPositiveCurvature below this
  double unit_speed_tolerance = 1e-8;
};

struct FrenetFrame {
  Vec3 e;  ///< unit tangent
  Vec3 n;  ///< unit principal normal
  Vec3 b;  ///< unit binormal
};

struct FrenetData {
  FrenetFrame frame;
  double kappa = 0.0;
  double tau = 0.0;
};

/// Closed curve S^1 -> R^3 whose three coordinates are truncated Fourier
/// series of a common period. Curvature and torsion are cached as periodic
/// functions on construction (computed from the analytic derivatives).
class ClosedCurve {
 public:
  ClosedCurve() = default;
  explicit ClosedCurve(std::array<PeriodicScalarFn, 3> components);

  static ClosedCurve from_samples(double period, std::span<const Vec3> samples);
  static ClosedCurve from_function(double period, const std::function<Vec3(double)>& fn,
                                   std::size_t samples);

  double period() const { return components_[0].period(); }
  const std::array<PeriodicScalarFn, 3>& components() const { return components_; }
  int degree() const;

  Vec3 position(double t) const;
  /// out[d] = gamma^{(d)}(t).
  void derivatives(double t, std::span<Vec3> out) const;
  /// Positions (or derivatives) on the uniform grid of n points.
  std::vector<Vec3> sample(std::size_t n, int order = 0) const;

  bool unit_speed() const { return unit_speed_; }
  double min_speed() const { return min_speed_; }
  const PeriodicScalarFn& curvature() const { return kappa_; }
  const PeriodicScalarFn& torsion() const { return tau_; }

  /// t -> gamma(sigma t + shift).
  ClosedCurve reparametrized(int sigma, double shift) const;
  /// x -> R x + d applied to the image.
  ClosedCurve transformed(const Mat3& rotation, const Vec3& translation) const;

 private:
  void build_cache();

  std::array<PeriodicScalarFn, 3> components_;
  PeriodicScalarFn kappa_;
  PeriodicScalarFn tau_;
  bool unit_speed_ = false;
  double min_speed_ = 0.0;
};

/// Frenet apparatus at t (formulas valid for any regular parametrization).
/// Throws VanishingCurvature when kappa(t) < min_curvature.
FrenetData frenet(const ClosedCurve& curve, double t, double min_curvature = 1e-6);
/// Frame transported to derivatives: given gamma', gamma'', gamma'''.
FrenetData frenet_from_derivatives(const Vec3& d1, const Vec3& d2, const Vec3& d3,
                                   double min_curvature = 1e-6);

/// Total length by the periodic trapezoidal rule (spectrally accurate for
/// analytic closed curves), refined until successive estimates agree.
double curve_length(const ClosedCurve& curve);

/// Arc-length reparametrization: integrates dt/ds = 1/|gamma'(t)| with an
/// adaptive Dormand-Prince stepper, spreads the closure error linearly over
/// the period, and re-fits the resampled positions. Same image, same
/// orientation, gamma(0) preserved, period = total length.
ClosedCurve arclength_reparametrize(const ClosedCurve& curve, const CurveOptions& opts = {});

/// Minimum distance between curve points whose arc-length separation is at
/// least `exclusion` (coarse sample scan, then local refinement).
double min_self_distance(const ClosedCurve& curve, double exclusion, std::size_t samples = 512);
double curve_diameter(const ClosedCurve& curve, std::size_t samples = 512);
/// Embeddedness check with threshold rel_threshold * diameter.
bool is_embedded(const ClosedCurve& curve, double rel_threshold = 1e-4);

/// gamma_m(t) = ((2 + cos nt) cos 2t, (2 + cos nt) sin 2t, sin nt), n = 2m - 1, period 2 pi.
ClosedCurve torus_knot(int m);

/// Helix wound `turns` times around a torus of radii R > r: a closed analog of the circular helix.
ClosedCurve torus_coil(int turns = 6, double R = 3.0, double r = 0.6);

/// Convex planar curve with radius 1 + 0.04 cos(2t + 0.3) + 0.02 sin 3t + 0.008 cos(5t + 1.1):
/// no shift or reflection symmetries.
ClosedCurve asymmetric_planar();

struct FourierTerm {
  int k = 0;
  double a = 0.0;  ///< cos coefficient
  double b = 0.0;  ///< sin coefficient
};

/// Curve with coordinates sum a_k cos(2 pi k t / l) + b_k sin(2 pi k t / l).
/// Throws NonPositiveCurvature if kappa <= min_curvature anywhere on the cache grid.
ClosedCurve curve_from_fourier(const std::array<std::vector<FourierTerm>, 3>& coeffs, double period,
                               double min_curvature = 1e-6);
PeriodicScalarFn fourier_fn(const std::vector<FourierTerm>& terms, double period);
std::vector<FourierTerm> fourier_terms(const PeriodicScalarFn& fn);

struct SphericalOptions {
  double max_abs_u = 1.0;
  double min_pole_distance = 1e-6;
  std::size_t samples = 0;  ///< 0: same as the input curve's cache grid
};

/// Stereographic lift of a planar unit-speed closed curve onto the sphere
/// through the origin tangent to z = 0, rescaled back to total length l:
///   gamma_u(t) = (l / L(u)) (pi^{-1}(u gamma(t)) + (0,0,1)) / (2u).
/// The result is not unit speed; reparametrize before building edges.
ClosedCurve spherical_deform(const ClosedCurve& planar, double u, const SphericalOptions& opts = {});
/// The unscaled lift (pi^{-1}(u gamma(t)) + (0,0,1)) / (2u).
ClosedCurve spherical_lift(const ClosedCurve& planar, double u, const SphericalOptions& opts = {});

}  // namespace isoforge
