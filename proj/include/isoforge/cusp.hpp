#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "isoforge/periodic.hpp"
#include "isoforge/series.hpp"

namespace isoforge {

/// Extended half-cuspidal curvature m(t, v) = mu(t) * P(v), with P a
/// polynomial in v (P(0) is the value scaled by mu at the singular curve).
/// The constant profile m = c is mu = c, P = 1.
class CuspProfile {
 public:
  CuspProfile() = default;
  CuspProfile(PeriodicScalarFn mu, std::vector<double> poly_v);
  static CuspProfile constant(double c, double period = 1.0);

  const PeriodicScalarFn& mu() const { return mu_; }
  const std::vector<double>& poly_v() const { return poly_; }
  bool t_independent() const { return mu_.degree() == 0; }

  double operator()(double t, double v) const;
  /// m(t, 0).
  double at_edge(double t) const;
  /// Same profile with mu on another period (carrier changes length).
  CuspProfile with_period(double period) const;
  CuspProfile reparametrized(int sigma, double shift) const;

 private:
  PeriodicScalarFn mu_ = PeriodicScalarFn::constant(1.0, 1.0);
  std::vector<double> poly_{1.0};
};

/// Planar cusp (A(t, v), B(t, v)) placed in the normal plane by Fukui's
/// formula. Two kinds:
///  - half-arc-length: (A, B) = int_0^v w (cos lambda, sin lambda) dw with
///    lambda = int_0^v m(t, w) dw, evaluated by adaptive Gauss-Kronrod;
///  - polynomial: t-independent polynomials A(v), B(v) (no normalization).
class SectionalCusp {
 public:
  enum class Kind { HalfArcLength, Polynomial };

  SectionalCusp() = default;
  static SectionalCusp half_arc_length(CuspProfile profile, double epsilon = 0.2);
  static SectionalCusp polynomial(std::vector<double> a, std::vector<double> b, double epsilon = 0.2);

  Kind kind() const { return kind_; }
  double epsilon() const { return epsilon_; }
  const CuspProfile& profile() const { return profile_; }
  const std::vector<double>& poly_a() const { return poly_a_; }
  const std::vector<double>& poly_b() const { return poly_b_; }

  /// (A, B) at (t, v).
  std::pair<double, double> eval(double t, double v) const;
  /// lambda(t, v) = int_0^v m(t, w) dw (zero for polynomial sections).
  double lambda(double t, double v) const;
  /// Taylor coefficients A_k(t), B_k(t), k = 0..order, with their t-derivatives
  /// carried in the dual part.
  void taylor(double t, std::size_t order, std::vector<Dual>& a, std::vector<Dual>& b) const;

  SectionalCusp with_period(double period) const;
  SectionalCusp reparametrized(int sigma, double shift) const;

 private:
  Kind kind_ = Kind::HalfArcLength;
  CuspProfile profile_;
  std::vector<double> q_;  // coefficients of Q(v) = int_0^v P
  std::vector<double> poly_a_, poly_b_;
  double epsilon_ = 0.2;
};

struct SectionalCuspOptions {
  double epsilon = 0.2;
  double min_half_curvature = 1e-6;  ///< threshold on |m(t, 0)| (also guards B_vvv = 2 m)
  std::size_t check_grid = 512;
};

/// Validates m(t, 0) on the check grid and builds the half-arc-length section.
/// Throws VanishingHalfCurvature when |m(t, 0)| drops below the threshold.
SectionalCusp build_sectional_cusp(const CuspProfile& profile, const SectionalCuspOptions& opts = {});

/// The model map f_C(u, v) = (u^2, u^3, v) on a non-closed chart:
/// u is the cusp direction, v runs along the edge.
struct StandardCusp {
  std::array<double, 3> operator()(double u, double v) const { return {u * u, u * u * u, v}; }
  std::array<double, 3> d_u(double u, double /*v*/) const { return {2.0 * u, 3.0 * u * u, 0.0}; }
  std::array<double, 3> d_v(double /*u*/, double /*v*/) const { return {0.0, 0.0, 1.0}; }
  /// Coefficients of f_u.f_u in powers of u: 4 u^2 + 9 u^4.
  std::vector<double> cusp_direction_metric() const { return {0.0, 0.0, 4.0, 0.0, 9.0}; }
  /// (f_u.f_u, f_u.f_v, f_v.f_v) at (u, v).
  std::array<double, 3> first_fundamental_form(double u, double v) const;
};

StandardCusp standard_cusp();

}  // namespace isoforge
