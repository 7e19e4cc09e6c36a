#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "gnls/cli.hpp"
#include "gnls/error.hpp"
#include "gnls/field_io.hpp"

using namespace gnls;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("gnls_" + tag + "_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig small_nls(const TempDir& dir) {
  RunConfig cfg = parse_config(
      "[problem]\nsymbol = fractional\ns = 1\nomega = 1\nsigma = 1\n"
      "[grid]\nn = 1\nN = 512\nL = 10pi\n");
  cfg.out_dir = dir.path.string();
  return cfg;
}

int config_error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("numbers with a pi suffix") {
  CHECK(parse_number("1.5") == 1.5);
  CHECK(parse_number("-2e-3") == -2e-3);
  CHECK(parse_number("pi") == doctest::Approx(std::numbers::pi));
  CHECK(parse_number("20pi") == doctest::Approx(20.0 * std::numbers::pi));
  CHECK(parse_number("0.5pi") == doctest::Approx(0.5 * std::numbers::pi));
  CHECK_THROWS_AS(parse_number("abc"), InvalidArgument);
  CHECK_THROWS_AS(parse_number(""), InvalidArgument);
}

TEST_CASE("configuration parsing") {
  const RunConfig cfg = parse_config(
      "# two-dimensional run\n"
      "[problem]\n"
      "symbol = biharmonic\n"
      "mu = -1\n"
      "v = 0.3, 0\n"
      "omega = 2   # comment\n"
      "[grid]\n"
      "n = 2\n"
      "sizes = 64, 32\n"
      "L = 10pi\n"
      "[solver]\n"
      "tol = 1e-9\n"
      "[sweep]\n"
      "param = omega\nfrom = 1\nto = 3\ncount = 5\n"
      "[run]\nseed = 9\nout = somewhere\n");
  CHECK(cfg.symbol.kind == "biharmonic");
  CHECK(cfg.make_symbol().value(std::vector<double>{2.0, 0.0}) == doctest::Approx(20.0));
  CHECK(cfg.velocity() == std::vector<double>{0.3, 0.0});
  CHECK(cfg.omega == 2.0);
  const Grid g = cfg.make_grid();
  CHECK(g.size(0) == 64);
  CHECK(g.size(1) == 32);
  CHECK(g.half_length(1) == doctest::Approx(10.0 * std::numbers::pi));
  CHECK(cfg.solver.tol == 1e-9);
  CHECK(cfg.sweep.count == 5);
  CHECK(cfg.seed == 9);
  CHECK(cfg.out_dir == "somewhere");

  const RunConfig speed = parse_config("[problem]\nv = 0.5\naxis = 1\n[grid]\nn = 2\nN = 16\nL = 4\n");
  CHECK(speed.velocity() == std::vector<double>{0.0, 0.5});
}

TEST_CASE("configuration errors carry line numbers") {
  CHECK(config_error_line("[problem]\nomega = 1\nfoo = 2\n") == 3);
  CHECK(config_error_line("[problem]\nomega = 1\nomega = 2\n") == 3);
  CHECK(config_error_line("omega = 1\n") == 1);
  CHECK(config_error_line("[nope]\n") == 1);
  CHECK(config_error_line("[grid\n") == 1);
  CHECK(config_error_line("[grid]\n\nN\n") == 3);
  CHECK(config_error_line("[grid]\nN = twelve\n") == 2);
  CHECK(config_error_line("[problem]\nsymbol = cubic\n") == 2);
  CHECK(config_error_line("[problem]\nv = 1, 2\n[grid]\nn = 1\n") == 0);
  CHECK_THROWS_AS(load_config("/nonexistent/config.ini"), ConfigError);
  RunConfig cfg;
  CHECK_THROWS_AS(apply_overrides(cfg, {std::nullopt, std::nullopt, -1.0}), ConfigError);
}

TEST_CASE("solve writes its outputs") {
  TempDir dir("solve");
  const RunConfig cfg = small_nls(dir);
  std::ostringstream out, err;
  REQUIRE(cmd_solve(cfg, out, err) == kExitOk);
  CHECK(err.str().empty());
  CHECK(fs::exists(dir / "Q.gnf"));
  const std::string trace = slurp(dir / "trace.csv");
  CHECK(trace.rfind("iter,J,residual,Mk\n", 0) == 0);
  const std::string report = slurp(dir / "report.txt");
  CHECK(report.find("converged = true") != std::string::npos);
  CHECK(report.find("J = 5.33333333333") != std::string::npos);
  CHECK(read_gnf(dir / "Q.gnf").grid() == cfg.make_grid());

  SUBCASE("verify accepts the ground state") {
    std::ostringstream vo, ve;
    CHECK(cmd_verify(cfg, dir / "Q.gnf", vo, ve) == kExitOk);
    CHECK(vo.str().find("PASS") != std::string::npos);
    CHECK(slurp(dir / "symmetry.csv").rfind("case,s1,s2,modrearr,connected,minkowski,alpha,beta_0,residual\nQ,", 0) == 0);
  }
  SUBCASE("rearrangements") {
    for (const char* mode : {"sharp", "bullet", "schwarz"}) {
      std::ostringstream ro, re;
      CHECK(cmd_rearrange(cfg, dir / "Q.gnf", mode, ro, re) == kExitOk);
      CHECK(fs::exists(dir / "rearranged.gnf"));
    }
    std::ostringstream ro, re;
    CHECK(cmd_rearrange(cfg, dir / "Q.gnf", "steiner", ro, re) == kExitConfig);
    CHECK(cmd_rearrange(cfg, dir / "Q.gnf", "sideways", ro, re) == kExitConfig);
  }
}

TEST_CASE("solve rejects hypothesis violations") {
  TempDir dir("hyp");
  std::ostringstream out, err;
  RunConfig below = small_nls(dir);
  below.v = {2.0};
  below.omega = 0.5;
  CHECK(cmd_solve(below, out, err) == kExitConfig);
  CHECK(err.str().find("omega > -Sigma_v") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "Q.gnf"));

  RunConfig critical = parse_config("[problem]\nsigma = 2\n[grid]\nn = 3\nN = 8\nL = 4\n");
  critical.out_dir = dir.path.string();
  CHECK(cmd_solve(critical, out, err) == kExitConfig);

  RunConfig slow = small_nls(dir);
  slow.solver.max_iter = 3;
  CHECK(cmd_solve(slow, out, err) == kExitNotConverged);
}

TEST_CASE("verify failure modes") {
  TempDir dir("verify");
  const RunConfig cfg = small_nls(dir);
  const Grid g = cfg.make_grid();
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  const Field noise = Field::sample(g, [&](const auto& x) { return cplx{n(rng), n(rng)} * std::exp(-0.1 * x[0] * x[0]); });
  write_gnf(dir / "noise.gnf", noise);
  std::ostringstream out, err;
  CHECK(cmd_verify(cfg, dir / "noise.gnf", out, err) == kExitPropertyFailure);
  CHECK(out.str().find("FAIL") != std::string::npos);

  std::vector<cplx> spec(g.total());
  spec[6] = spec[g.total() - 6] = 1.0;
  write_gnf(dir / "split.gnf", Field::from_spectrum(g, spec));
  CHECK(cmd_verify(cfg, dir / "split.gnf", out, err) == kExitDisconnected);

  std::string bytes = slurp(dir / "noise.gnf");
  bytes[0] = 'X';
  std::ofstream(dir / "bad.gnf", std::ios::binary) << bytes;
  std::ostringstream be;
  CHECK(cmd_verify(cfg, dir / "bad.gnf", out, be) == kExitConfig);
  CHECK(be.str().find("byte offset 0") != std::string::npos);
  CHECK(cmd_verify(cfg, dir / "missing.gnf", out, err) == kExitConfig);
}

TEST_CASE("sweep") {
  TempDir a("sweep_a"), b("sweep_b");
  RunConfig cfg = small_nls(a);
  cfg.sweep = {"v", 0.0, 0.4, 3};
  std::ostringstream out, err;
  REQUIRE(cmd_sweep(cfg, 1, out, err) == kExitOk);
  cfg.out_dir = b.path.string();
  REQUIRE(cmd_sweep(cfg, 3, out, err) == kExitOk);
  const std::string csv = slurp(a / "sweep.csv");
  CHECK(csv == slurp(b / "sweep.csv"));
  CHECK(csv.rfind("param,J,residual,s2_defect,modrearr_defect,E,M,status\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

  cfg.sweep.count = 0;
  CHECK(cmd_sweep(cfg, 1, out, err) == kExitConfig);
  cfg.sweep = {"sigma", 0.0, 1.0, 2};
  CHECK(cmd_sweep(cfg, 1, out, err) == kExitConfig);

  // Every point below -Sigma_v: rows are written, none converge.
  cfg.sweep = {"omega", -1.0, -0.5, 2};
  CHECK(cmd_sweep(cfg, 1, out, err) == kExitNotConverged);
  CHECK(slurp(b / "sweep.csv").find("error: ") != std::string::npos);
}

TEST_CASE("props and sigma commands") {
  std::ostringstream out, err;
  CHECK(cmd_props(1, "setops", out, err) == kExitOk);
  CHECK(out.str().find("FAIL") == std::string::npos);
  CHECK(cmd_props(1, "nothing", out, err) == kExitConfig);

  RunConfig cfg = parse_config("[problem]\nsymbol = sqrt_klein_gordon\nm = 1\nv = 0.6\n");
  std::ostringstream so;
  CHECK(cmd_sigma(cfg, so, err) == kExitOk);
  CHECK(so.str().find("Sigma_v = 0.8") != std::string::npos);
}
