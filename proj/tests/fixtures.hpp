#pragma once

// Shared test fixtures: carriers and the ten-edge corpus.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "isoforge/curves.hpp"
#include "isoforge/cusp.hpp"
#include "isoforge/edge.hpp"

namespace fixtures {

using namespace isoforge;

inline constexpr double kPi = std::numbers::pi;
// Admissible constant angle on the torus knots (cos < 1 - kappa ratio slack).
inline constexpr double kTheta = 2.0 * kPi / 5.0;

inline ClosedCurve unit_speed(const ClosedCurve& c, std::size_t samples = 1024) {
  CurveOptions o;
  o.samples = samples;
  return arclength_reparametrize(c, o);
}

inline ClosedCurve circle(double r) {
  return ClosedCurve::from_function(2.0 * kPi, [r](double t) { return Vec3(r * std::cos(t), r * std::sin(t), 0.0); }, 16);
}

inline ClosedCurve ellipse(double a, double b) {
  return ClosedCurve::from_function(2.0 * kPi, [a, b](double t) { return Vec3(a * std::cos(t), b * std::sin(t), 0.0); }, 16);
}

inline ClosedCurve coil(int turns = 6, double R = 3.0, double r = 0.6) { return torus_coil(turns, R, r); }

inline ClosedCurve asymmetric_planar() { return isoforge::asymmetric_planar(); }

inline PeriodicScalarFn const_fn(double l, double c) { return PeriodicScalarFn::constant(l, c); }

inline PeriodicScalarFn wavy_angle(double l, double base, double amp, int k = 1) {
  std::vector<double> a(static_cast<std::size_t>(k) + 1, 0.0), b(static_cast<std::size_t>(k) + 1, 0.0);
  a[0] = base;
  b[static_cast<std::size_t>(k)] = amp;
  return PeriodicScalarFn(l, a, b);
}

inline SectionalCusp unit_section() { return build_sectional_cusp(CuspProfile::constant(1.0)); }

inline SectionalCusp varying_section(double l) {
  // m(t, v) = (1 + 0.3 cos(2 pi t / l)) (1 + 0.5 v)
  return build_sectional_cusp(CuspProfile(PeriodicScalarFn(l, {1.0, 0.3}, {0.0, 0.0}), {1.0, 0.5}));
}

struct CorpusEdge {
  std::string name;
  CuspidalEdge edge;
  bool normal_form = true;  ///< half-arc-length section on a unit-speed carrier
};

/// Ten edges: torus knots m = 1, 2, ellipses, coil (closed helix analog), a
/// spherical deformation, constant and varying angles, one polynomial section.
inline std::vector<CorpusEdge> corpus() {
  const ClosedCurve k1 = unit_speed(torus_knot(1));
  const ClosedCurve k2 = unit_speed(torus_knot(2));
  const ClosedCurve el = unit_speed(ellipse(2.0, 1.0), 512);
  const ClosedCurve co = unit_speed(coil(), 1024);
  const ClosedCurve planar = unit_speed(asymmetric_planar(), 512);
  const ClosedCurve sph = unit_speed(spherical_deform(planar, 0.05), 512);
  std::vector<CorpusEdge> out;
  out.push_back({"knot1-const", fukui_edge(k1, const_fn(k1.period(), kTheta), unit_section())});
  out.push_back({"knot1-wavy", fukui_edge(k1, wavy_angle(k1.period(), kTheta, 0.1, 1), varying_section(k1.period()))});
  out.push_back({"knot2-const", fukui_edge(k2, const_fn(k2.period(), kTheta), unit_section())});
  out.push_back({"knot2-wavy", fukui_edge(k2, wavy_angle(k2.period(), kTheta, 0.15, 2), unit_section())});
  out.push_back({"ellipse-const", fukui_edge(el, const_fn(el.period(), kPi / 3.0), unit_section())});
  out.push_back({"ellipse-wavy", fukui_edge(el, wavy_angle(el.period(), 1.2, 0.2, 1), varying_section(el.period()))});
  out.push_back({"coil-const", fukui_edge(co, const_fn(co.period(), kPi / 4.0), unit_section())});
  out.push_back({"coil-negative", fukui_edge(co, const_fn(co.period(), -kPi / 4.0), unit_section())});
  out.push_back({"sphere-const", fukui_edge(sph, const_fn(sph.period(), kTheta), unit_section())});
  out.push_back({"knot1-poly", fukui_edge(k1, const_fn(k1.period(), kPi / 4.0),
                                          SectionalCusp::polynomial({0.0, 0.0, 1.0}, {0.0, 0.0, 0.0, 1.0})),
                 false});
  return out;
}

}  // namespace fixtures
