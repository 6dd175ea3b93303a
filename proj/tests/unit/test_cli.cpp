#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "../fixtures.hpp"
#include "isoforge/cli.hpp"
#include "isoforge/error.hpp"
#include "isoforge/metric.hpp"

using namespace isoforge;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("isoforge_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string v_lines(const std::string& obj, std::size_t every, std::size_t offset) {
  std::istringstream in(obj);
  std::string out;
  std::size_t k = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("v ", 0) != 0) continue;
    if (k++ % every == offset) out += line + "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("trefoil pipeline: curve, edge, metric, reconstruct, mesh") {
  TempDir d;
  auto r = run({"curve", "gen", "--torus-knot", "2", "--out", d / "c.json", "--polyline-out", d / "p.obj", "--nt", "33"});
  REQUIRE(r.code == 0);
  const auto c = curve_from_json(read_json(d / "c.json"));
  CHECK(c.unit_speed());
  CHECK(c.period() == doctest::Approx(curve_length(torus_knot(2))).epsilon(1e-10));

  r = run({"edge", "build", "--curve", d / "c.json", "--theta", "0.7853981633974483", "--m", "const:1", "--out", d / "e.json"});
  REQUIRE(r.code == 0);
  const auto e = edge_from_json(read_json(d / "e.json"));
  REQUIRE(e.is_fukui());
  CHECK(e.fukui().theta(2.0) == doctest::Approx(0.7853981633974483));

  r = run({"metric", "report", "--edge", d / "e.json", "--out", d / "m.json", "--csv", d / "inv.csv"});
  REQUIRE(r.code == 0);
  const auto rep = Json::parse(r.out);
  CHECK(rep["kossowski"]["ok"] == true);
  CHECK(rep["singular_curvature_vs_kappa_cos_theta"].get<double>() < 1e-6);
  CHECK(rep["grid"] == 512);
  CHECK(fs::exists(d / "inv.csv"));

  r = run({"reconstruct", "--metric", d / "m.json", "--sign", "minus", "--order", "4"});
  REQUIRE(r.code == 0);
  const auto dual = edge_from_json(Json::parse(r.out));
  const auto nu = invariants_from_edge(dual).kappa_nu.sample(256);
  CHECK(*std::max_element(nu.begin(), nu.end()) < 0.0);

  // v = 0 row of the mesh equals the curve's polyline byte for byte
  r = run({"export", "mesh", "--edge", d / "e.json", "--nt", "33", "--nv", "5", "--out", d / "mesh.obj"});
  REQUIRE(r.code == 0);
  CHECK(v_lines(slurp(d / "mesh.obj"), 5, 2) == slurp(d / "p.obj"));
}

TEST_CASE("exit codes") {
  TempDir d;
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"curve", "gen"}).code == kExitUsage);
  CHECK(run({"curve", "gen", "--torus-knot", "1", "--circle", "2", "--out", d / "x.json"}).code == kExitUsage);
  CHECK(run({"reconstruct", "--metric", d / "m.json", "--sign", "sideways"}).code == kExitUsage);
  CHECK(run({"curve", "gen", "--torus-knot", "0", "--out", d / "x.json"}).code == kExitValidation);
  CHECK(run({"curve", "gen", "--torus-knot", "1", "--grid", "100", "--out", d / "x.json"}).code == kExitValidation);
  CHECK(run({"curve", "info", "--curve", d / "missing.json"}).code == kExitValidation);
  const auto help = run({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.err.find("congruence") != std::string::npos);

  // not admissible: theta = pi/4 on gamma_1
  REQUIRE(run({"curve", "gen", "--torus-knot", "1", "--out", d / "k.json"}).code == 0);
  REQUIRE(run({"edge", "build", "--curve", d / "k.json", "--theta", "0.7853981633974483", "--out", d / "e.json"}).code == 0);
  CHECK(run({"isomer", "family", "--edge", d / "e.json", "--family", "3"}).code == kExitValidation);

  // a numerically singular metric: |c_2| ~ 1e-11
  const auto circle = fixtures::unit_speed(fixtures::circle(2.0), 64);
  const double l = circle.period();
  auto k = [l](double x) { return PeriodicScalarFn::constant(l, x); };
  KossowskiMetric thin({k(1.0), k(0.0), k(0.0)}, {k(0.0), k(0.0), k(0.0)}, {k(0.0), k(0.0), k(4e-22)}, 64);
  thin.carrier = circle;
  write_json(d / "thin.json", to_json(thin));
  const auto r = run({"reconstruct", "--metric", d / "thin.json", "--sign", "plus", "--order", "2"});
  CHECK(r.code == kExitNumerical);
  CHECK(r.err.find("JetSolveFailure") != std::string::npos);
}

TEST_CASE("config file flags sit under command-line flags") {
  const auto injected = inject_config({"metric", "report", "--edge", "e.json"}, Json{{"order", 3}, {"tol", 1e-7}});
  const std::vector<std::string> want{"metric", "report", "--order", "3", "--tol", "9.9999999999999995e-08", "--edge", "e.json"};
  CHECK(injected == want);

  TempDir d;
  REQUIRE(run({"curve", "gen", "--ellipse", "2", "1", "--samples", "512", "--out", d / "c.json"}).code == 0);
  REQUIRE(run({"edge", "build", "--curve", d / "c.json", "--theta", "1.0", "--out", d / "e.json"}).code == 0);
  write_json(d / "cfg.json", Json{{"order", 3}, {"grid", 256}});
  auto r = run({"metric", "report", "--edge", d / "e.json", "--config", d / "cfg.json"});
  REQUIRE(r.code == 0);
  auto rep = Json::parse(r.out);
  CHECK(rep["order"] == 3);
  CHECK(rep["grid"] == 256);
  r = run({"metric", "report", "--edge", d / "e.json", "--config", d / "cfg.json", "--order", "4"});
  REQUIRE(r.code == 0);
  rep = Json::parse(r.out);
  CHECK(rep["order"] == 4);
  CHECK(rep["grid"] == 256);

  write_json(d / "bad.json", Json{{"grid", 100}});
  CHECK(run({"metric", "report", "--edge", d / "e.json", "--config", d / "bad.json"}).code == kExitValidation);
  write_json(d / "unknown.json", Json{{"colour", "red"}});
  CHECK(run({"metric", "report", "--edge", d / "e.json", "--config", d / "unknown.json"}).code == kExitUsage);
}

TEST_CASE("congruence, symmetry and isomer subcommands") {
  TempDir d;
  REQUIRE(run({"curve", "gen", "--torus-knot", "1", "--out", d / "k.json"}).code == 0);
  REQUIRE(run({"edge", "build", "--curve", d / "k.json", "--theta", "1.2566370614359172", "--out", d / "e.json"}).code == 0);
  REQUIRE(run({"isomer", "family", "--edge", d / "e.json", "--family", "1", "--out", d / "f1.json"}).code == 0);
  auto r = run({"congruence", "classify", "--edge", d / "e.json", "--edge", d / "f1.json"});
  REQUIRE(r.code == 0);
  auto rep = Json::parse(r.out);
  CHECK(rep["verdict"] == "congruent");
  CHECK(rep["tol"] == 1e-6);
  CHECK(rep["witness"]["sigma"] == 1);

  r = run({"symmetry", "scan", "--curve", d / "k.json"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["group_order"] == 2);

  write_json(d / "mu.json", to_json(PeriodicScalarFn(3.0, {0, 0, 1}, {0, 0, 0})));
  r = run({"symmetry", "scan", "--fn", d / "mu.json"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("s,kind,c,residual\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);  // shift l/2, reflections 0 and l/2

  r = run({"symmetry", "scan", "--edge", d / "e.json", "--function", "kappa", "--perturb", "0.001", "0.01"});
  REQUIRE(r.code == 0);
  // kappa of gamma_1 is even; the odd sine perturbation removes the reflection
  CHECK(r.out == "s,kind,c,residual\n");

  r = run({"congruence", "lambda-set", "--edge", d / "e.json", "--shifts", "2"});
  REQUIRE(r.code == 0);
  rep = Json::parse(r.out);
  CHECK(rep["isomers"].size() == 8);
  // constant angle: the half-turn also identifies each isomer with its dual
  CHECK(rep["class_count"] == 2);
  CHECK(rep["max_class_size"] == 4);
}

TEST_CASE("re-running a pipeline gives byte-identical files") {
  TempDir d;
  auto pipeline = [&](const std::string& tag) {
    std::vector<std::string> files;
    auto f = [&](const std::string& name) {
      files.push_back(d / (tag + name));
      return files.back();
    };
    REQUIRE(run({"curve", "gen", "--random-planar", "--seed", "11", "--samples", "256", "--out", f("c.json")}).code == 0);
    REQUIRE(run({"edge", "build", "--curve", files[0], "--theta-wave", "1.0", "0.1", "1", "--m", "wave:1,0.2,1",
                 "--out", f("e.json")})
                .code == 0);
    REQUIRE(run({"metric", "report", "--edge", files[1], "--grid", "256", "--out", f("m.json"), "--report", f("r.json")})
                .code == 0);
    REQUIRE(run({"reconstruct", "--metric", files[2], "--out", f("j.json")}).code == 0);
    REQUIRE(run({"export", "mesh", "--edge", files[1], "--nt", "17", "--nv", "5", "--out", f("mesh.obj")}).code == 0);
    return files;
  };
  const auto a = pipeline("a_"), b = pipeline("b_");
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK_MESSAGE(slurp(a[i]) == slurp(b[i]), a[i]);
    CHECK(!slurp(a[i]).empty());
  }
}
