#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "twinsurf/conformal.hpp"
#include "twinsurf/error.hpp"
#include "twinsurf/twin.hpp"

using namespace twinsurf;
using namespace testing;

TEST_CASE("chart of the flat graph") {
  const auto d = GridDomain::span(0, 0, 1, 1, 9, 9);
  const auto c = build_chart(HeightMap(d, 1));
  CHECK(max_error(c.M, [](double x, double) { return x; }) == 0.0);
  CHECK(max_error(c.N, [](double, double y) { return y; }) == 0.0);
  CHECK(max_error(c.xi1, [](double x, double) { return 2 * x; }) == 0.0);
  CHECK(max_error(c.xi2, [](double, double y) { return 2 * y; }) == 0.0);
  CHECK(max_error(c.J_psi, [](double, double) { return 4.0; }) == 0.0);
  CHECK(max_error(c.conformal_factor, [](double, double) { return 0.25; }) == 0.0);
}

TEST_CASE("chart of an affine graph is affine") {
  const auto d = GridDomain::span(0, 0, 1, 1, 9, 9);
  const auto c = build_chart(sample(d, {[](double x, double y) { return 0.5 * x - y; }}));
  const double J = c.J_psi(0, 0);
  CHECK(max_error(c.J_psi, [&](double, double) { return J; }) < 1e-13);
  CHECK(J > 2.0);
  const double ax = (c.xi1(8, 0) - c.xi1(0, 0)), ay = (c.xi1(0, 8) - c.xi1(0, 0));
  CHECK(max_error(c.xi1, [&](double x, double y) { return c.xi1(0, 0) + ax * x + ay * y; }) < 1e-12);
}

TEST_CASE("catenoid Jacobian at (2, 0)") {
  const auto d = GridDomain::span(1.5, -0.5, 2.5, 0.5, 65, 65);
  const auto c = build_chart(sample(d, {catenoid}));
  CHECK(c.J_psi(32, 32) == doctest::Approx(2 + 7 * std::sqrt(3.0) / 6).epsilon(1e-5));
  CHECK(c.J_psi(32, 32) == doctest::Approx(4.02073).epsilon(1e-5));
  for (double v : c.J_psi.values) CHECK(v > 2.0);
}

TEST_CASE("resampled catenoid is conformal") {
  const auto c = build_chart(sample(catenoid_grid(129, 65), {catenoid}));
  const auto X = resample_to_chart(c, sample(catenoid_grid(129, 65), {catenoid}));
  REQUIRE(X.n() == 3);
  const auto pm = pullback_metric(X);
  CHECK(pm.max_abs_g12 <= 0.02 * pm.max_g11);
  CHECK(pm.max_abs_g11_g22 <= 0.02 * pm.max_g11);
  const auto nc = null_curve(X, Signature::euclidean);
  CHECK(nc.nullity_residual < 1e-2);
  CHECK(nc.holomorphy_residual < 1e-2);
}

TEST_CASE("inverse chart round trip") {
  const auto c = build_chart(sample(helicoid_grid(33), {helicoid}));
  const auto inv = invert_chart(c);
  for (int j = 0; j < inv.target.ny; j += 7) {
    for (int i = 0; i < inv.target.nx; i += 5) {
      const std::size_t k = inv.target.index(i, j);
      CHECK(interpolate(c.xi1, inv.x[k], inv.y[k]) == doctest::Approx(inv.target.x(i)).epsilon(1e-10));
      CHECK(interpolate(c.xi2, inv.x[k], inv.y[k]) == doctest::Approx(inv.target.y(j)).epsilon(1e-10));
    }
  }
}

TEST_CASE("target outside the image") {
  const auto d = GridDomain::span(0, 0, 1, 1, 9, 9);
  const auto c = build_chart(HeightMap(d, 1));
  try {
    invert_chart(c, GridDomain::span(5, 5, 6, 6, 9, 9));
    FAIL("expected TARGET_OUTSIDE_IMAGE");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TargetOutsideImage);
    CHECK_FALSE(e.nodes().empty());
  }
}

TEST_CASE("chart preconditions") {
  const auto d = GridDomain::span(0, 0, 1, 1, 33, 33);
  CHECK_THROWS_AS(build_chart(sample(d, {[](double x, double) { return x * x * x; }})), Error);
}

TEST_CASE("non-minimal immersion is not holomorphic") {
  const auto d = GridDomain::span(0, 0, 1, 1, 33, 33);
  const auto X = sample(d, {[](double x, double) { return x; }, [](double, double y) { return y; },
                            [](double x, double) { return x * x * x; }});
  CHECK(null_curve(X, Signature::euclidean).holomorphy_residual > 0.1);
}

TEST_CASE("Weierstrass relation") {
  SUBCASE("plane pair") {
    const auto d = GridDomain::span(0, 0, 1, 1, 17, 17);
    const auto f = sample(d, {[](double x, double y) { return 0.2 * x + 0.1 * y; }});
    const auto r = verify_weierstrass_twin(twin_forward(f), build_chart(f));
    CHECK(r.max_residual <= 1e-10);
  }
  SUBCASE("catenoid pair refines") {
    auto res = [](int nx, int ny) {
      const auto f = sample(catenoid_grid(nx, ny), {catenoid});
      return verify_weierstrass_twin(twin_forward(f), build_chart(f)).max_residual;
    };
    const double a = res(65, 33), b = res(129, 65);
    CHECK(b <= 0.02);
    CHECK(a / b >= 2.0);
  }
  SUBCASE("holomorphic pair") {
    const auto d = GridDomain::span(-0.3, -0.3, 0.3, 0.3, 65, 65);
    const auto f = sample(d, {[](double x, double y) { return x * x - y * y; },
                              [](double x, double y) { return 2 * x * y; }});
    const auto r = verify_weierstrass_twin(twin_forward(f), build_chart(f));
    CHECK(r.relations.size() == 4);
    CHECK(r.max_residual <= 0.02);
  }
}
