#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "isoforge/congruence.hpp"
#include "isoforge/curves.hpp"
#include "isoforge/cusp.hpp"
#include "isoforge/edge.hpp"
#include "isoforge/metric.hpp"
#include "isoforge/periodic.hpp"

namespace isoforge {

using Json = nlohmann::json;

// JSON round trips. Periodic functions are stored by their Fourier
// coefficients, so files reload bit-exactly. Readers throw InvalidInput on
// malformed documents.
Json to_json(const PeriodicScalarFn& f);
PeriodicScalarFn fn_from_json(const Json& j);

Json to_json(const ClosedCurve& c);
ClosedCurve curve_from_json(const Json& j);

Json to_json(const CuspProfile& p);
CuspProfile profile_from_json(const Json& j);

Json to_json(const SectionalCusp& s);
SectionalCusp section_from_json(const Json& j);

/// {period, order, frame: "frenet", epsilon, coeffs: {"2": {alpha, beta, delta}, ...}}
Json to_json(const JetSeries& s);
JetSeries jets_from_json(const Json& j, const ClosedCurve& carrier);

/// Edge document: {type: "edge", form: "fukui" | "jets", carrier, ...}.
Json to_json(const CuspidalEdge& e);
CuspidalEdge edge_from_json(const Json& j);

/// Metric document; the carrier travels along when present.
Json to_json(const KossowskiMetric& m);
KossowskiMetric metric_from_json(const Json& j);

Json to_json(const RigidMotion& m);
Json to_json(const CongruenceReport& r);
Json to_json(const LambdaSet& s);
Json to_json(const FunctionSymmetries& s);
Json to_json(const CurveSymmetries& s);

/// Throws IoError when the file cannot be read or parsed.
Json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline; throws IoError.
void write_json(const std::filesystem::path& path, const Json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

/// %.17g, the round-trip format used by every text output.
std::string fmt_double(double x);

/// CSV rows t, kappa, tau, kappa_s, kappa_nu, theta on the uniform grid of n points.
std::string invariants_csv(const ClosedCurve& carrier, const EdgeInvariants& inv, std::size_t n);
/// CSV rows s, kind, c, residual (one "constant" row for a constant function).
std::string symmetry_csv(const PersistenceTable& table);
std::string symmetry_csv(const FunctionSymmetries& s, double param = 0.0);

/// Quad mesh of an edge on t_i = i l / (nt - 1) (both ends included) and
/// v_j = -eps + 2 eps j / (nv - 1).
struct MeshOutput {
  std::size_t nt = 0, nv = 0;
  std::vector<Vec3> vertices;                    ///< t-major: index i * nv + j
  std::vector<std::array<std::size_t, 4>> faces;  ///< 0-based
  std::vector<std::size_t> polyline;             ///< 0-based vertex indices of the singular curve
  std::vector<double> v_attr, kappa_s_attr;      ///< per vertex
};

/// nt >= 2, nv >= 2. For even nv the grid has no v = 0 row; the singular curve
/// is then appended as nt extra vertices after the grid.
MeshOutput build_mesh(const CuspidalEdge& edge, std::size_t nt, std::size_t nv, double eps = 0.0);
/// The standard cusp (u^2, u^3, v) on [-1, 1]^2: rows follow the edge parameter v,
/// columns the cusp parameter u; the polyline is the u = 0 column.
MeshOutput standard_cusp_mesh(std::size_t nrows, std::size_t ncols);
/// Wavefront OBJ: v lines, f quads (1-indexed), one l record for the singular curve.
std::string to_obj(const MeshOutput& mesh);
/// Only the v lines of a polyline through the points.
std::string polyline_obj(const std::vector<Vec3>& points);

}  // namespace isoforge
