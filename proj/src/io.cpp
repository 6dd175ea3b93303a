#include "isoforge/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "isoforge/error.hpp"

namespace isoforge {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<double> numbers(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw Error(ErrorCode::InvalidInput, std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& x : a) {
    if (!x.is_number()) throw Error(ErrorCode::InvalidInput, std::string("field '") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

double number(const Json& j, const char* key) {
  const Json& x = field(j, key);
  if (!x.is_number()) throw Error(ErrorCode::InvalidInput, std::string("field '") + key + "' must be a number");
  return x.get<double>();
}

Json fn_list(const std::vector<PeriodicScalarFn>& fs) {
  Json a = Json::array();
  for (const auto& f : fs) a.push_back(to_json(f));
  return a;
}

std::vector<PeriodicScalarFn> fns_from(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw Error(ErrorCode::InvalidInput, std::string("field '") + key + "' must be an array");
  std::vector<PeriodicScalarFn> out;
  for (const auto& x : a) out.push_back(fn_from_json(x));
  return out;
}

Json vec_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

}  // namespace

Json to_json(const PeriodicScalarFn& f) {
  return Json{{"period", f.period()}, {"cos", f.cos_coeffs()}, {"sin", f.sin_coeffs()}};
}

PeriodicScalarFn fn_from_json(const Json& j) {
  const double l = number(j, "period");
  auto a = numbers(j, "cos");
  auto b = numbers(j, "sin");
  if (a.empty() || a.size() != b.size()) throw Error(ErrorCode::InvalidInput, "cos and sin coefficient lists must match");
  if (!(l > 0.0)) throw Error(ErrorCode::InvalidInput, "period must be positive");
  return PeriodicScalarFn(l, std::move(a), std::move(b));
}

Json to_json(const ClosedCurve& c) {
  const auto& x = c.components();
  return Json{{"type", "curve"},
              {"period", c.period()},
              {"unit_speed", c.unit_speed()},
              {"x", to_json(x[0])},
              {"y", to_json(x[1])},
              {"z", to_json(x[2])}};
}

ClosedCurve curve_from_json(const Json& j) {
  return ClosedCurve({fn_from_json(field(j, "x")), fn_from_json(field(j, "y")), fn_from_json(field(j, "z"))});
}

Json to_json(const CuspProfile& p) { return Json{{"mu", to_json(p.mu())}, {"poly_v", p.poly_v()}}; }

CuspProfile profile_from_json(const Json& j) { return CuspProfile(fn_from_json(field(j, "mu")), numbers(j, "poly_v")); }

Json to_json(const SectionalCusp& s) {
  if (s.kind() == SectionalCusp::Kind::Polynomial) {
    return Json{{"kind", "polynomial"}, {"epsilon", s.epsilon()}, {"a", s.poly_a()}, {"b", s.poly_b()}};
  }
  return Json{{"kind", "half_arc_length"}, {"epsilon", s.epsilon()}, {"profile", to_json(s.profile())}};
}

SectionalCusp section_from_json(const Json& j) {
  const auto kind = field(j, "kind").get<std::string>();
  const double eps = number(j, "epsilon");
  if (kind == "polynomial") return SectionalCusp::polynomial(numbers(j, "a"), numbers(j, "b"), eps);
  if (kind == "half_arc_length") {
    SectionalCuspOptions o;
    o.epsilon = eps;
    return build_sectional_cusp(profile_from_json(field(j, "profile")), o);
  }
  throw Error(ErrorCode::InvalidInput, "unknown section kind '" + kind + "'");
}

Json to_json(const JetSeries& s) {
  Json coeffs = Json::object();
  for (int k = 2; k <= s.order(); ++k) {
    const auto& c = s.coeff(k);
    coeffs[std::to_string(k)] = Json{{"alpha", to_json(c[0])}, {"beta", to_json(c[1])}, {"delta", to_json(c[2])}};
  }
  return Json{{"period", s.period()}, {"order", s.order()}, {"frame", "frenet"}, {"epsilon", s.epsilon()},
              {"coeffs", coeffs}};
}

JetSeries jets_from_json(const Json& j, const ClosedCurve& carrier) {
  if (field(j, "frame").get<std::string>() != "frenet") throw Error(ErrorCode::InvalidInput, "jets must use the Frenet frame");
  const int order = field(j, "order").get<int>();
  if (order < 2) throw Error(ErrorCode::InvalidInput, "jet order must be >= 2");
  if (std::abs(number(j, "period") - carrier.period()) > 1e-9 * carrier.period()) {
    throw Error(ErrorCode::InvalidInput, "jet period differs from the carrier period");
  }
  const Json& c = field(j, "coeffs");
  std::vector<JetSeries::Triple> out(static_cast<std::size_t>(order) + 1);
  const auto zero = PeriodicScalarFn::constant(carrier.period(), 0.0);
  out[0] = out[1] = {zero, zero, zero};
  for (int k = 2; k <= order; ++k) {
    const Json& ck = field(c, std::to_string(k).c_str());
    out[static_cast<std::size_t>(k)] = {fn_from_json(field(ck, "alpha")), fn_from_json(field(ck, "beta")),
                                        fn_from_json(field(ck, "delta"))};
  }
  return JetSeries(carrier, std::move(out), j.value("epsilon", 0.2));
}

Json to_json(const CuspidalEdge& e) {
  if (e.is_fukui()) {
    const auto& f = e.fukui();
    return Json{{"type", "edge"},
                {"form", "fukui"},
                {"carrier", to_json(f.carrier)},
                {"theta", to_json(f.theta)},
                {"section", to_json(f.section)}};
  }
  return Json{{"type", "edge"}, {"form", "jets"}, {"carrier", to_json(e.jets().carrier())}, {"jets", to_json(e.jets())}};
}

CuspidalEdge edge_from_json(const Json& j) {
  if (field(j, "type").get<std::string>() != "edge") throw Error(ErrorCode::InvalidInput, "document is not an edge");
  const ClosedCurve carrier = curve_from_json(field(j, "carrier"));
  const auto form = field(j, "form").get<std::string>();
  if (form == "fukui") return fukui_edge(carrier, fn_from_json(field(j, "theta")), section_from_json(field(j, "section")));
  if (form == "jets") return CuspidalEdge(jets_from_json(field(j, "jets"), carrier));
  throw Error(ErrorCode::InvalidInput, "unknown edge form '" + form + "'");
}

Json to_json(const KossowskiMetric& m) {
  Json j{{"type", "metric"},   {"period", m.period()}, {"order", m.order()}, {"grid", m.grid()},
         {"E", fn_list(m.E())}, {"F", fn_list(m.F())},  {"G", fn_list(m.G())}};
  if (m.carrier) j["carrier"] = to_json(*m.carrier);
  return j;
}

KossowskiMetric metric_from_json(const Json& j) {
  if (field(j, "type").get<std::string>() != "metric") throw Error(ErrorCode::InvalidInput, "document is not a metric");
  const auto grid = field(j, "grid").get<std::size_t>();
  KossowskiMetric m(fns_from(j, "E"), fns_from(j, "F"), fns_from(j, "G"), grid);
  if (j.contains("carrier")) m.carrier = curve_from_json(j.at("carrier"));
  return m;
}

Json to_json(const RigidMotion& m) {
  Json r = Json::array();
  for (int i = 0; i < 3; ++i) r.push_back(Json::array({m.rotation(i, 0), m.rotation(i, 1), m.rotation(i, 2)}));
  return Json{{"rotation", r}, {"translation", vec_json(m.translation)}, {"det", m.det}};
}

Json to_json(const CongruenceReport& r) {
  auto wj = [](const CongruenceWitness& w) {
    return Json{{"motion", to_json(w.motion)}, {"sigma", w.sigma}, {"shift", w.shift}, {"v_sign", w.v_sign},
                {"residual", w.residual}};
  };
  Json j{{"verdict", r.congruent ? "congruent" : "not congruent"},
         {"certified", r.certified},
         {"residual", r.residual},
         {"tol", r.tol},
         {"floor", r.floor},
         {"grid", r.grid}};
  j["witness"] = r.witness ? wj(*r.witness) : Json(nullptr);
  Json p = Json::array();
  for (const auto& w : r.passing) p.push_back(wj(w));
  j["passing"] = p;
  return j;
}

Json to_json(const LambdaSet& s) {
  Json grid = Json::array();
  for (const auto& g : s.grid) grid.push_back(Json{{"family", g.family}, {"shift", g.shift}});
  std::vector<std::size_t> sizes;
  for (const auto& c : s.classes) sizes.push_back(c.size());
  return Json{{"isomers", grid},
              {"classes", s.classes},
              {"class_sizes", sizes},
              {"class_count", s.classes.size()},
              {"max_class_size", s.max_class_size()},
              {"min_separation", s.min_separation},
              {"certified_pairs", s.certified_pairs},
              {"uncertified_pairs", s.uncertified_pairs}};
}

Json to_json(const FunctionSymmetries& s) {
  Json e = Json::array();
  for (const auto& x : s.elements) e.push_back(Json{{"kind", to_string(x.kind)}, {"c", x.c}, {"residual", x.residual}});
  return Json{{"constant", s.constant}, {"elements", e}};
}

Json to_json(const CurveSymmetries& s) {
  Json e = Json::array();
  for (const auto& x : s.elements) {
    e.push_back(Json{{"kind", to_string(x.param.kind)},
                     {"c", x.param.c},
                     {"residual", x.param.residual},
                     {"signature_residual", x.signature_residual},
                     {"motion", to_json(x.motion)}});
  }
  return Json{{"constant_signature", s.constant_signature}, {"group_order", s.group_order()}, {"elements", e}};
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::IoError, "cannot parse " + path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string invariants_csv(const ClosedCurve& carrier, const EdgeInvariants& inv, std::size_t n) {
  std::string out = "t,kappa,tau,kappa_s,kappa_nu,theta\n";
  for (double t : uniform_grid(carrier.period(), n)) {
    out += fmt_double(t) + "," + fmt_double(carrier.curvature()(t)) + "," + fmt_double(carrier.torsion()(t)) + "," +
           fmt_double(inv.kappa_s(t)) + "," + fmt_double(inv.kappa_nu(t)) + "," + fmt_double(inv.theta(t)) + "\n";
  }
  return out;
}

namespace {

std::string symmetry_rows(const FunctionSymmetries& s, double param) {
  if (s.constant) return fmt_double(param) + ",constant,,\n";
  std::string out;
  for (const auto& e : s.elements) {
    out += fmt_double(param) + "," + to_string(e.kind) + "," + fmt_double(e.c) + "," + fmt_double(e.residual) + "\n";
  }
  return out;
}

}  // namespace

std::string symmetry_csv(const FunctionSymmetries& s, double param) { return "s,kind,c,residual\n" + symmetry_rows(s, param); }

std::string symmetry_csv(const PersistenceTable& table) {
  std::string out = "s,kind,c,residual\n";
  for (const auto& r : table.rows) out += symmetry_rows(r.symmetries, r.s);
  return out;
}

MeshOutput build_mesh(const CuspidalEdge& edge, std::size_t nt, std::size_t nv, double eps) {
  if (nt < 2 || nv < 2) throw Error(ErrorCode::InvalidInput, "mesh needs nt >= 2 and nv >= 2");
  if (eps <= 0.0) eps = edge.epsilon();
  MeshOutput m;
  m.nt = nt;
  m.nv = nv;
  const double l = edge.period();
  const auto ks = invariants_from_edge(edge).kappa_s;
  std::vector<double> ts(nt), vs(nv);
  for (std::size_t i = 0; i < nt; ++i) ts[i] = l * static_cast<double>(i) / static_cast<double>(nt - 1);
  for (std::size_t j = 0; j < nv; ++j) {
    vs[j] = eps * (2.0 * static_cast<double>(j) - static_cast<double>(nv - 1)) / static_cast<double>(nv - 1);
  }
  for (std::size_t i = 0; i < nt; ++i) {
    const double k = ks(ts[i]);
    for (std::size_t j = 0; j < nv; ++j) {
      m.vertices.push_back(edge.position(ts[i], vs[j]));
      m.v_attr.push_back(vs[j]);
      m.kappa_s_attr.push_back(k);
    }
  }
  for (std::size_t i = 0; i + 1 < nt; ++i) {
    for (std::size_t j = 0; j + 1 < nv; ++j) {
      const std::size_t a = i * nv + j;
      m.faces.push_back({a, a + nv, a + nv + 1, a + 1});
    }
  }
  for (std::size_t i = 0; i < nt; ++i) {
    if (nv % 2 == 1) {
      m.polyline.push_back(i * nv + nv / 2);
    } else {
      m.polyline.push_back(m.vertices.size());
      m.vertices.push_back(edge.position(ts[i], 0.0));
      m.v_attr.push_back(0.0);
      m.kappa_s_attr.push_back(ks(ts[i]));
    }
  }
  return m;
}

MeshOutput standard_cusp_mesh(std::size_t nrows, std::size_t ncols) {
  if (nrows < 2 || ncols < 2) throw Error(ErrorCode::InvalidInput, "mesh needs at least 2 x 2 points");
  const StandardCusp f = standard_cusp();
  MeshOutput m;
  m.nt = nrows;
  m.nv = ncols;
  // integer numerator keeps u_{n-1-j} = -u_j exact
  auto grid = [](std::size_t k, std::size_t n) {
    return (2.0 * static_cast<double>(k) - static_cast<double>(n - 1)) / static_cast<double>(n - 1);
  };
  for (std::size_t i = 0; i < nrows; ++i) {
    for (std::size_t j = 0; j < ncols; ++j) {
      const double u = grid(j, ncols);
      const auto p = f(u, grid(i, nrows));
      m.vertices.emplace_back(p[0], p[1], p[2]);
      m.v_attr.push_back(u);
      m.kappa_s_attr.push_back(0.0);
    }
  }
  for (std::size_t i = 0; i + 1 < nrows; ++i) {
    for (std::size_t j = 0; j + 1 < ncols; ++j) {
      const std::size_t a = i * ncols + j;
      m.faces.push_back({a, a + ncols, a + ncols + 1, a + 1});
    }
  }
  if (ncols % 2 == 1) {
    for (std::size_t i = 0; i < nrows; ++i) m.polyline.push_back(i * ncols + ncols / 2);
  }
  return m;
}

std::string polyline_obj(const std::vector<Vec3>& points) {
  std::string out;
  for (const auto& p : points) out += "v " + fmt_double(p.x()) + " " + fmt_double(p.y()) + " " + fmt_double(p.z()) + "\n";
  return out;
}

std::string to_obj(const MeshOutput& mesh) {
  std::string out = "# cuspidal edge mesh " + std::to_string(mesh.nt) + " x " + std::to_string(mesh.nv) + "\n";
  out += polyline_obj(mesh.vertices);
  for (const auto& f : mesh.faces) {
    out += "f " + std::to_string(f[0] + 1) + " " + std::to_string(f[1] + 1) + " " + std::to_string(f[2] + 1) + " " +
           std::to_string(f[3] + 1) + "\n";
  }
  if (!mesh.polyline.empty()) {
    out += "l";
    for (std::size_t i : mesh.polyline) out += " " + std::to_string(i + 1);
    out += "\n";
  }
  return out;
}

}  // namespace isoforge
