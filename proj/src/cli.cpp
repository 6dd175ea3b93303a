#include "isoforge/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "isoforge/error.hpp"
#include "isoforge/isomer.hpp"

namespace isoforge {

namespace {

bool grid_ok(std::size_t n) { return is_power_of_two(n) && n >= 64 && n <= 8192; }

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text(path, text);
  }
}

void emit(const std::string& path, const Json& j, std::ostream& out) { emit(path, j.dump(2) + "\n", out); }

CuspidalEdge load_edge(const std::string& path) { return edge_from_json(read_json(path)); }

ClosedCurve unit_speed(const ClosedCurve& c, const RunConfig& cfg) {
  if (c.unit_speed()) return c;
  CurveOptions o;
  o.samples = cfg.samples;
  return arclength_reparametrize(c, o);
}

std::vector<Vec3> inclusive_samples(const ClosedCurve& c, std::size_t n) {
  std::vector<Vec3> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(c.position(c.period() * static_cast<double>(i) / static_cast<double>(n - 1)));
  return p;
}

// c, c + amp cos(2 pi k t / l)
PeriodicScalarFn wave(double l, double c, double amp, int k, bool sine) {
  if (k < 0) throw Error(ErrorCode::InvalidInput, "wave mode must be >= 0");
  std::vector<double> a(static_cast<std::size_t>(k) + 1, 0.0), b(a.size(), 0.0);
  a[0] = c;
  if (k > 0) (sine ? b : a)[static_cast<std::size_t>(k)] += amp;
  else a[0] += amp;
  return PeriodicScalarFn(l, a, b);
}

// "const:c" or "wave:c,amp,k"
PeriodicScalarFn parse_mu(const std::string& spec, double l) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::InvalidInput, "--m expects const:c or wave:c,amp,k");
  const std::string kind = spec.substr(0, colon);
  std::vector<double> v;
  std::stringstream ss(spec.substr(colon + 1));
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "bad number '" + item + "' in --m");
    }
  }
  if (kind == "const" && v.size() == 1) return PeriodicScalarFn::constant(l, v[0]);
  if (kind == "wave" && v.size() == 3) return wave(l, v[0], v[1], static_cast<int>(v[2]), false);
  throw Error(ErrorCode::InvalidInput, "--m expects const:c or wave:c,amp,k");
}

ClosedCurve random_planar(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.02, 0.02);
  double a[5] = {}, b[5] = {};
  for (int k = 2; k <= 4; ++k) {
    a[k] = u(rng) / k;
    b[k] = u(rng) / k;
  }
  return ClosedCurve::from_function(
      2.0 * std::numbers::pi,
      [=](double t) {
        double r = 1.0;
        for (int k = 2; k <= 4; ++k) r += a[k] * std::cos(k * t) + b[k] * std::sin(k * t);
        return Vec3(r * std::cos(t), r * std::sin(t), 0.0);
      },
      64);
}

Json range_json(const PeriodicScalarFn& f, std::size_t n) {
  const auto s = f.sample(n);
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  return Json{{"min", *lo}, {"max", *hi}};
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--order", cfg.order, "jet order N");
  sub->add_option("--grid", cfg.grid, "Fourier grid (power of two, 64..8192)");
  sub->add_option("--samples", cfg.samples, "arc-length resampling grid");
  sub->add_option("--scan", cfg.scan, "coarse symmetry scan size");
  sub->add_option("--eval", cfg.eval, "symmetry residual points");
  sub->add_option("--tol", cfg.tol, "congruence / symmetry tolerance");
  sub->add_option("--floor", cfg.floor, "non-congruence certification floor");
  sub->add_option("--epsilon", cfg.epsilon, "section half-width");
  sub->add_option("--seed", cfg.seed, "seed for randomized curves");
  sub->add_option("--threads", cfg.threads, "thread cap");
  sub->add_option("--config", "flat JSON config file");
}

}  // namespace

void RunConfig::validate() const {
  if (order < 2) throw Error(ErrorCode::InvalidInput, "order must be >= 2");
  for (auto [name, n] : {std::pair{"grid", grid}, {"samples", samples}, {"scan", scan}, {"eval", eval}}) {
    if (!grid_ok(n)) throw Error(ErrorCode::InvalidInput, std::string(name) + " must be a power of two in [64, 8192]");
  }
  if (eval > scan) throw Error(ErrorCode::InvalidInput, "eval must not exceed scan");
  if (!(tol > 0.0) || !(floor > 0.0) || !(epsilon > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "tolerances and epsilon must be positive");
  }
  if (threads < 0) throw Error(ErrorCode::InvalidInput, "threads must be >= 0");
}

CongruenceOptions RunConfig::congruence() const {
  CongruenceOptions o;
  o.tol = tol;
  o.floor = floor;
  o.order = order;
  o.grid = grid;
  o.scan.coarse = scan;
  o.scan.eval = eval;
  return o;
}

std::vector<std::string> inject_config(const std::vector<std::string>& args, const Json& config) {
  if (!config.is_object()) throw Error(ErrorCode::InvalidInput, "config must be a flat JSON object");
  std::size_t words = 0;
  while (words < args.size() && words < 2 && !args[words].empty() && args[words][0] != '-') ++words;
  std::vector<std::string> flags;
  for (const auto& [key, value] : config.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) flags.push_back(flag);
    } else if (value.is_array()) {
      flags.push_back(flag);
      for (const auto& x : value) flags.push_back(x.is_string() ? x.get<std::string>() : x.dump());
    } else if (value.is_string()) {
      flags.push_back(flag);
      flags.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      flags.push_back(flag);
      flags.push_back(value.is_number_float() ? fmt_double(value.get<double>()) : value.dump());
    } else {
      throw Error(ErrorCode::InvalidInput, "config value for '" + key + "' must be a scalar or a list");
    }
  }
  std::vector<std::string> out(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(words));
  out.insert(out.end(), flags.begin(), flags.end());
  out.insert(out.end(), args.begin() + static_cast<std::ptrdiff_t>(words), args.end());
  return out;
}

int cli_dispatch(const std::vector<std::string>& raw, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"isoforge: cuspidal edges along closed space curves and their isomers"};
  app.name("isoforge");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  // curve
  auto* curve = app.add_subcommand("curve", "closed carrier curves");
  curve->require_subcommand(1);
  auto* cgen = curve->add_subcommand("gen", "generate a carrier");
  int torus_m = 0;
  double circle_r = 0.0, spherical_u = 0.0;
  std::vector<double> ellipse_ab;
  bool coil = false, asym = false, random = false, raw_curve = false;
  std::string planar_in, out_path, poly_out;
  std::size_t poly_n = 257;
  auto* src = cgen->add_option_group("source");
  auto* o_knot = src->add_option("--torus-knot", torus_m, "torus knot index m (m = 2: trefoil)");
  auto* o_circle = src->add_option("--circle", circle_r, "circle radius");
  src->add_option("--ellipse", ellipse_ab, "semi-axes a b")->expected(2);
  src->add_flag("--coil", coil, "helix wound around a torus");
  src->add_flag("--asymmetric-planar", asym, "convex planar curve without symmetries");
  src->add_flag("--random-planar", random, "seeded random convex planar curve");
  src->add_option("--spherical", spherical_u, "stereographic deformation parameter u of the planar source");
  src->require_option(1);
  cgen->add_option("--planar", planar_in, "planar source for --spherical (default: asymmetric planar)");
  cgen->add_flag("--raw", raw_curve, "keep the generating parametrization");
  cgen->add_option("--out", out_path, "curve JSON")->required();
  cgen->add_option("--polyline-out", poly_out, "OBJ v lines of the curve on an inclusive grid");
  cgen->add_option("--nt", poly_n, "points of the polyline (inclusive grid)");
  add_common(cgen, cfg);

  auto* cinfo = curve->add_subcommand("info", "curve summary and symmetries");
  std::string curve_in;
  cinfo->add_option("--curve", curve_in, "curve JSON")->required();
  cinfo->add_option("--out", out_path, "report JSON (default stdout)");
  add_common(cinfo, cfg);

  // edge
  auto* edge = app.add_subcommand("edge", "cuspidal edges");
  edge->require_subcommand(1);
  auto* ebuild = edge->add_subcommand("build", "Fukui edge along a carrier");
  std::optional<double> theta;
  std::vector<double> theta_wave, m_poly{1.0}, poly_a, poly_b;
  std::string m_spec = "const:1";
  ebuild->add_option("--curve", curve_in, "curve JSON")->required();
  auto* th = ebuild->add_option_group("angle");
  th->add_option("--theta", theta, "constant cuspidal angle");
  th->add_option("--theta-wave", theta_wave, "base amp k: theta = base + amp sin(2 pi k t / l)")->expected(3);
  th->require_option(1);
  ebuild->add_option("--m", m_spec, "half-cuspidal curvature along the edge: const:c or wave:c,amp,k");
  ebuild->add_option("--m-poly", m_poly, "v-polynomial factor of m (coefficients)")->expected(1, 16);
  ebuild->add_option("--poly-a", poly_a, "polynomial section A(v) coefficients")->expected(3, 16);
  ebuild->add_option("--poly-b", poly_b, "polynomial section B(v) coefficients")->expected(4, 16);
  ebuild->add_option("--out", out_path, "edge JSON")->required();
  add_common(ebuild, cfg);

  // metric
  auto* metric = app.add_subcommand("metric", "first fundamental form");
  metric->require_subcommand(1);
  auto* mrep = metric->add_subcommand("report", "metric jets, Kossowski conditions, invariants");
  std::string edge_in, report_out, csv_out;
  mrep->add_option("--edge", edge_in, "edge JSON")->required();
  mrep->add_option("--out", out_path, "metric JSON");
  mrep->add_option("--report", report_out, "report JSON (default stdout)");
  mrep->add_option("--csv", csv_out, "invariants CSV on the grid");
  add_common(mrep, cfg);

  // isomer
  auto* isomer = app.add_subcommand("isomer", "isomers of an admissible edge");
  isomer->require_subcommand(1);
  auto* ifam = isomer->add_subcommand("family", "member (i, a) of the four families");
  int family = 1;
  double shift = 0.0;
  ifam->add_option("--edge", edge_in, "edge JSON")->required();
  ifam->add_option("--family", family, "family index 1..4")->check(CLI::Range(1, 4));
  ifam->add_option("--shift", shift, "base shift a");
  ifam->add_option("--out", out_path, "edge JSON (default stdout)");
  add_common(ifam, cfg);

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "edge jets from a periodic Kossowski metric");
  std::string metric_in, sign = "plus";
  rec->add_option("--metric", metric_in, "metric JSON")->required();
  rec->add_option("--curve", curve_in, "carrier JSON (default: the metric's carrier)");
  rec->add_option("--sign", sign, "plus | minus (sign of the limiting normal curvature)")
      ->check(CLI::IsMember({"plus", "minus"}));
  rec->add_option("--out", out_path, "edge JSON (default stdout)");
  add_common(rec, cfg);

  // congruence
  auto* cong = app.add_subcommand("congruence", "congruence of edges");
  cong->require_subcommand(1);
  auto* cls = cong->add_subcommand("classify", "decide whether two edges are congruent");
  std::vector<std::string> edges_in;
  cls->add_option("--edge", edges_in, "two edge JSON files")
      ->required()
      ->expected(1, 2)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  cls->add_option("--out", out_path, "report JSON (default stdout)");
  add_common(cls, cfg);
  auto* lam = cong->add_subcommand("lambda-set", "partition of the isomer grid into congruence classes");
  std::size_t shifts = 64;
  lam->add_option("--edge", edge_in, "edge JSON")->required();
  lam->add_option("--shifts", shifts, "base shifts per family")->check(CLI::PositiveNumber);
  lam->add_option("--out", out_path, "partition JSON (default stdout)");
  add_common(lam, cfg);

  // symmetry
  auto* sym = app.add_subcommand("symmetry", "symmetry detection");
  sym->require_subcommand(1);
  auto* scan = sym->add_subcommand("scan", "symmetries of a curve or a periodic function");
  std::string fn_in, which = "kappa_s";
  std::vector<double> perturb;
  auto* what = scan->add_option_group("input");
  what->add_option("--curve", curve_in, "curve JSON: spatial symmetries");
  what->add_option("--edge", edge_in, "edge JSON: symmetries of --function");
  what->add_option("--fn", fn_in, "periodic function JSON");
  what->require_option(1);
  scan->add_option("--function", which, "kappa_s | kappa | tau | kappa_nu")
      ->check(CLI::IsMember({"kappa_s", "kappa", "tau", "kappa_nu"}));
  scan->add_option("--perturb", perturb, "s values: scan mu + s sin(2 pi t / l) for each")->expected(1, 64);
  scan->add_option("--out", out_path, "CSV (functions) or JSON (curves), default stdout");
  add_common(scan, cfg);

  // export
  auto* exp = app.add_subcommand("export", "file export");
  exp->require_subcommand(1);
  auto* mesh = exp->add_subcommand("mesh", "Wavefront OBJ mesh of an edge");
  std::size_t nt = 129, nv = 33;
  double eps = 0.0;
  std::string attr_out;
  mesh->add_option("--edge", edge_in, "edge JSON")->required();
  mesh->add_option("--nt", nt, "points along the edge (both ends included)");
  mesh->add_option("--nv", nv, "points across the edge");
  mesh->add_option("--eps", eps, "v half-width (default: the edge's epsilon)");
  mesh->add_option("--out", out_path, "OBJ file")->required();
  mesh->add_option("--attributes-out", attr_out, "CSV of per-vertex v and kappa_s");
  add_common(mesh, cfg);

  std::vector<std::string> args = raw;
  try {
    // --config is read before parsing so that command-line flags override it.
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] == "--config") {
        args = inject_config(raw, read_json(args[i + 1]));
        break;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    cfg.validate();
    if (cfg.threads > 0) setenv("ISOMER_FORGE_THREADS", std::to_string(cfg.threads).c_str(), 1);

    if (cgen->parsed()) {
      ClosedCurve c;
      if (o_knot->count() > 0) {
        c = torus_knot(torus_m);
      } else if (o_circle->count() > 0) {
        if (!(circle_r > 0.0)) throw Error(ErrorCode::InvalidInput, "circle radius must be positive");
        c = ClosedCurve::from_function(
            2.0 * std::numbers::pi, [r = circle_r](double t) { return Vec3(r * std::cos(t), r * std::sin(t), 0.0); }, 16);
      } else if (!ellipse_ab.empty()) {
        if (!(ellipse_ab[0] > 0.0 && ellipse_ab[1] > 0.0)) throw Error(ErrorCode::InvalidInput, "semi-axes must be positive");
        c = ClosedCurve::from_function(
            2.0 * std::numbers::pi,
            [a = ellipse_ab[0], b = ellipse_ab[1]](double t) { return Vec3(a * std::cos(t), b * std::sin(t), 0.0); }, 16);
      } else if (coil) {
        c = torus_coil();
      } else if (asym) {
        c = asymmetric_planar();
      } else if (random) {
        c = random_planar(cfg.seed);
      } else {
        const ClosedCurve planar = planar_in.empty() ? asymmetric_planar() : curve_from_json(read_json(planar_in));
        CurveOptions o;
        o.samples = std::min<std::size_t>(cfg.samples, 512);
        c = spherical_deform(arclength_reparametrize(planar, o), spherical_u);
      }
      if (!raw_curve) c = unit_speed(c, cfg);
      if (poly_n < 2) throw Error(ErrorCode::InvalidInput, "--nt must be >= 2");
      write_json(out_path, to_json(c));
      if (!poly_out.empty()) write_text(poly_out, polyline_obj(inclusive_samples(c, poly_n)));
      return kExitOk;
    }

    if (cinfo->parsed()) {
      const ClosedCurve c = curve_from_json(read_json(curve_in));
      Json j{{"period", c.period()},
             {"unit_speed", c.unit_speed()},
             {"degree", c.degree()},
             {"length", curve_length(c)},
             {"kappa", range_json(c.curvature(), cfg.grid)},
             {"tau", range_json(c.torsion(), cfg.grid)},
             {"embedded", is_embedded(c)},
             {"tol", cfg.tol},
             {"grid", cfg.grid}};
      ScanOptions so;
      so.coarse = cfg.scan;
      so.eval = cfg.eval;
      j["symmetries"] = to_json(curve_symmetries(unit_speed(c, cfg), cfg.tol, so));
      emit(out_path, j, out);
      return kExitOk;
    }

    if (ebuild->parsed()) {
      const ClosedCurve c = unit_speed(curve_from_json(read_json(curve_in)), cfg);
      const double l = c.period();
      const PeriodicScalarFn th_fn = theta ? PeriodicScalarFn::constant(l, *theta)
                                           : wave(l, theta_wave[0], theta_wave[1], static_cast<int>(theta_wave[2]), true);
      SectionalCusp section;
      if (!poly_a.empty() || !poly_b.empty()) {
        if (poly_a.empty() || poly_b.empty()) throw Error(ErrorCode::InvalidInput, "--poly-a and --poly-b go together");
        section = SectionalCusp::polynomial(poly_a, poly_b, cfg.epsilon);
      } else {
        SectionalCuspOptions so;
        so.epsilon = cfg.epsilon;
        so.check_grid = cfg.grid;
        section = build_sectional_cusp(CuspProfile(parse_mu(m_spec, l), m_poly), so);
      }
      write_json(out_path, to_json(fukui_edge(c, th_fn, section)));
      return kExitOk;
    }

    if (mrep->parsed()) {
      const CuspidalEdge e = load_edge(edge_in);
      KossowskiMetric m = first_fundamental_form(e, cfg.order, cfg.grid);
      m.carrier = e.carrier();
      const auto chk = m.check();
      const auto ks = singular_curvature(m);
      const auto inv = invariants_from_edge(e, cfg.grid);
      const auto adm = admissible(ks, e.carrier().curvature(), cfg.grid);
      double err_ks = 0.0;
      for (double t : uniform_grid(e.period(), cfg.grid)) {
        err_ks = std::max(err_ks, std::abs(ks(t) - e.carrier().curvature()(t) * std::cos(inv.theta(t))));
      }
      Json r{{"order", cfg.order},
             {"grid", cfg.grid},
             {"period", m.period()},
             {"kossowski", {{"ok", chk.ok}, {"worst", chk.worst}, {"t_worst", chk.t_worst}, {"failed", chk.failed}}},
             {"admissibility",
              {{"admissible", adm.admissible},
               {"margin", adm.margin},
               {"max_abs_kappa_s", adm.max_abs_kappa_s},
               {"min_kappa", adm.min_kappa}}},
             {"singular_curvature_vs_kappa_cos_theta", err_ks},
             {"kappa_nu_sign", inv.kappa_nu(0.0) > 0.0 ? "plus" : "minus"}};
      if (!out_path.empty()) write_json(out_path, to_json(m));
      if (!csv_out.empty()) write_text(csv_out, invariants_csv(e.carrier(), inv, cfg.grid));
      emit(report_out, r, out);
      return kExitOk;
    }

    if (ifam->parsed()) {
      const CuspidalEdge g = load_edge(edge_in);
      const IsomerSpec spec{family, shift};
      emit(out_path, to_json(CuspidalEdge(build_isomer(g, spec, cfg.order, cfg.grid))), out);
      return kExitOk;
    }

    if (rec->parsed()) {
      const KossowskiMetric m = metric_from_json(read_json(metric_in));
      std::optional<ClosedCurve> carrier = m.carrier;
      if (!curve_in.empty()) carrier = unit_speed(curve_from_json(read_json(curve_in)), cfg);
      if (!carrier) throw Error(ErrorCode::InvalidInput, "metric has no carrier; pass --curve");
      const int s = sign == "plus" ? 1 : -1;
      emit(out_path, to_json(CuspidalEdge(jet_reconstruct(m, *carrier, s, cfg.order))), out);
      return kExitOk;
    }

    if (cls->parsed()) {
      if (edges_in.size() != 2) throw Error(ErrorCode::InvalidInput, "classify needs two --edge files");
      const auto r = edge_congruent(load_edge(edges_in[0]), load_edge(edges_in[1]), cfg.congruence());
      emit(out_path, to_json(r), out);
      return kExitOk;
    }

    if (lam->parsed()) {
      const auto L = lambda_set(load_edge(edge_in), shifts, cfg.congruence());
      Json j = to_json(L);
      j["tol"] = cfg.tol;
      j["floor"] = cfg.floor;
      j["grid"] = cfg.eval;
      emit(out_path, j, out);
      return kExitOk;
    }

    if (scan->parsed()) {
      ScanOptions so;
      so.coarse = cfg.scan;
      so.eval = cfg.eval;
      if (!curve_in.empty()) {
        Json j = to_json(curve_symmetries(unit_speed(curve_from_json(read_json(curve_in)), cfg), cfg.tol, so));
        j["tol"] = cfg.tol;
        j["grid"] = cfg.eval;
        emit(out_path, j, out);
        return kExitOk;
      }
      PeriodicScalarFn mu;
      if (!fn_in.empty()) {
        mu = fn_from_json(read_json(fn_in));
      } else {
        const CuspidalEdge e = load_edge(edge_in);
        if (which == "kappa") {
          mu = e.carrier().curvature();
        } else if (which == "tau") {
          mu = e.carrier().torsion();
        } else {
          const auto inv = invariants_from_edge(e, cfg.grid);
          mu = which == "kappa_s" ? inv.kappa_s : inv.kappa_nu;
        }
      }
      if (perturb.empty()) {
        emit(out_path, symmetry_csv(function_symmetries(mu, cfg.tol, so)), out);
      } else {
        const auto table = symmetry_persistence(
            [&](double s) {
              auto a = mu.cos_coeffs(), b = mu.sin_coeffs();
              if (a.size() < 2) {
                a.resize(2, 0.0);
                b.resize(2, 0.0);
              }
              b[1] += s;
              return PeriodicScalarFn(mu.period(), a, b);
            },
            perturb, cfg.tol, so);
        emit(out_path, symmetry_csv(table), out);
      }
      return kExitOk;
    }

    if (mesh->parsed()) {
      const CuspidalEdge e = load_edge(edge_in);
      const auto m = build_mesh(e, nt, nv, eps);
      write_text(out_path, to_obj(m));
      if (!attr_out.empty()) {
        std::string csv = "vertex,v,kappa_s\n";
        for (std::size_t i = 0; i < m.v_attr.size(); ++i) {
          csv += std::to_string(i + 1) + "," + fmt_double(m.v_attr[i]) + "," + fmt_double(m.kappa_s_attr[i]) + "\n";
        }
        write_text(attr_out, csv);
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.numerical() ? kExitNumerical : kExitValidation;
  } catch (const Json::exception& e) {
    err << "error: InvalidInput: " << e.what() << "\n";
    return kExitValidation;
  }
  err << app.help();
  return kExitUsage;
}

int cli_dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_dispatch(args, std::cout, std::cerr);
}

}  // namespace isoforge
