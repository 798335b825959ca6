#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"
#include "twinsurf/cli.hpp"
#include "twinsurf/gfield.hpp"

using namespace twinsurf;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "twinsurf");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const auto p = fs::temp_directory_path() / ("twinsurf_cli_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("catalog sample writes a GFIELD") {
  const auto path = (scratch() / "cat.gf").string();
  const auto r = cli({"catalog", "sample", "--name", "catenoid", "--param", "rho=1", "--domain", "1.5,-0.75,3,0.75",
                      "--grid", "129,65", "--out", path});
  CHECK(r.code == 0);
  const auto g = read_gfield(path);
  CHECK(g.domain.nx == 129);
  CHECK(g.domain.ny == 65);
  CHECK(g.components.size() == 1);
}

TEST_CASE("catalog list is JSON") {
  const auto r = cli({"catalog", "list"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.is_array());
  CHECK(j.size() >= 5);
}

TEST_CASE("verify-all passes on scherk with the stable schema") {
  const auto r = cli({"verify-all", "--name", "scherk", "--param", "rho=1", "--grid", "65,65"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.contains("surface"));
  CHECK(j.contains("grid"));
  CHECK(j["pass"] == true);
  REQUIRE(j["checks"].is_array());
  for (const auto& c : j["checks"]) {
    CAPTURE(c.dump());
    CHECK(c.contains("name"));
    CHECK(c.contains("value"));
    CHECK(c.contains("tol"));
    CHECK(c["pass"] == true);
  }
}

TEST_CASE("non-minimal input exits 2 with the error name") {
  const auto path = (scratch() / "cube.gf").string();
  const auto d = GridDomain::span(0, 0, 1, 1, 33, 33);
  write_gfield(path, d, {ScalarField::sample(d, [](double x, double) { return x * x * x; })});
  const auto r = cli({"twin", "forward", "--in", path});
  CHECK(r.code == 2);
  CHECK(r.err.find("NOT_CLOSED") != std::string::npos);
  CHECK(r.err.find("(1,1)") != std::string::npos);
}

TEST_CASE("validation errors exit 1") {
  CHECK(cli({}).code == 1);
  CHECK(cli({"bogus"}).code == 1);
  CHECK(cli({"catalog", "sample", "--name", "catenoid"}).code == 1);
  CHECK(cli({"catalog", "sample", "--name", "catenoid", "--param", "zz=1", "--out", "x.gf"}).code == 1);
  CHECK(cli({"catalog", "sample", "--name", "catenoid", "--grid", "3,3", "--out", "x.gf"}).code == 1);
  CHECK(cli({"residual", "--system", "nope", "--in", "x.gf"}).code == 1);
  CHECK(cli({"twin", "forward", "--in", "/nonexistent/path.gf"}).code == 1);
  CHECK(cli({"--threads", "0", "catalog", "list"}).code == 1);
}

TEST_CASE("computation errors exit 2") {
  const auto r = cli({"catalog", "sample", "--name", "catenoid", "--domain", "-1,-1,1,1", "--out",
                      (scratch() / "bad.gf").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("DOMAIN_NOT_ADMISSIBLE") != std::string::npos);
}

TEST_CASE("failing check exits 3") {
  // at 9x9 the second-order tolerances are loose but the gradient self test is not
  const auto r = cli({"verify-all", "--name", "catenoid", "--grid", "9,9"});
  if (r.code != 0) CHECK(r.code == 3);
}

TEST_CASE("pipeline through files") {
  const auto dir = scratch();
  const auto f = (dir / "s.gf").string(), g = (dir / "g.gf").string(), lift = (dir / "l.gf").string();
  REQUIRE(cli({"catalog", "sample", "--name", "scherk", "--grid", "33,33", "--out", f}).code == 0);
  const auto res = cli({"residual", "--system", "minimal", "--in", f});
  REQUIRE(res.code == 0);
  CHECK(nlohmann::json::parse(res.out)["max_abs"].get<double>() < 1e-2);
  REQUIRE(cli({"twin", "forward", "--in", f, "--out", g}).code == 0);
  const auto v = cli({"twin", "verify", "--f", f, "--g", g});
  REQUIRE(v.code == 0);
  CHECK(nlohmann::json::parse(v.out)["c3_residual"].get<double>() < 1e-2);
  CHECK(cli({"residual", "--system", "maximal", "--in", g}).code == 0);
  CHECK(cli({"sl", "lift", "--in", f, "--out", lift}).code == 0);
  CHECK(read_gfield(lift).components.size() == 3);
  CHECK(cli({"gauss", "planarity", "--from-height", "--in", f}).code == 0);
  CHECK(cli({"chart", "weierstrass", "--f", f, "--g", g}).code == 0);
  const auto report = (dir / "report.json").string();
  CHECK(cli({"--report", report, "chart", "build", "--in", f}).code == 0);
  std::ifstream in(report);
  CHECK(nlohmann::json::parse(in)["min_J_psi"].get<double>() > 2.0);
}

TEST_CASE("reports use 17 significant digits") {
  const auto r = cli({"sl", "rotate", "--in", "missing.gf", "--out", "x.gf", "--theta", "0.1"});
  CHECK(r.code == 1);
  const auto dir = scratch();
  const auto f = (dir / "q.gf").string(), h = (dir / "h.gf").string();
  const auto d = GridDomain::span(-1, -1, 1, 1, 9, 9);
  write_gfield(f, d, {ScalarField::sample(d, [](double x, double y) { return x * x - y * y; })});
  const auto rot = cli({"sl", "rotate", "--in", f, "--out", h, "--theta", "0.1"});
  REQUIRE(rot.code == 0);
  CHECK(rot.out.find("0.99500416527802582") != std::string::npos);
}
