#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "twinsurf/error.hpp"
#include "twinsurf/systems.hpp"
#include "twinsurf/twin.hpp"

using namespace twinsurf;
using namespace testing;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

HeightMap z_squared(const GridDomain& d) {
  return sample(d, {[](double x, double y) { return x * x - y * y; }, [](double x, double y) { return 2 * x * y; }});
}

}  // namespace

TEST_CASE("twin of a horizontal plane is zero") {
  const auto d = GridDomain::span(0, 0, 1, 1, 9, 9);
  const auto p = twin_forward(sample(d, {[](double, double) { return 2.5; }}));
  CHECK(max_abs(p.g.components[0]) == 0.0);
}

TEST_CASE("catenoid twin gradient at (2, 0)") {
  const auto d = GridDomain::span(1.5, -0.75, 2.5, 0.75, 65, 97);
  const auto p = twin_forward(sample(d, {catenoid}));
  const auto gx = partial_x(p.g.components[0]), gy = partial_y(p.g.components[0]);
  REQUIRE(d.x(32) == doctest::Approx(2.0));
  REQUIRE(std::abs(d.y(48)) < 1e-15);
  CHECK(std::abs(gx(32, 48)) < 1e-4);
  CHECK(gy(32, 48) == doctest::Approx(0.5).epsilon(1e-4));
  // angle duality with Theta = pi/2
  CHECK(p.metric_f.omega(32, 48) == doctest::Approx(2 / std::sqrt(3.0)).epsilon(1e-4));
  CHECK(p.metric_g.omega(32, 48) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-4));
  CHECK(p.metric_f.omega(32, 48) * p.metric_g.omega(32, 48) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("twin diagnostics converge at second order") {
  auto diag = [](int n) { return twin_forward(sample(catenoid_grid(n, n), {catenoid})).diagnostics; };
  const auto a = diag(65), b = diag(129);
  CHECK(a.c3 / b.c3 > 3.0);
  CHECK(a.c4 / b.c4 > 3.0);
  CHECK(a.c1 / b.c1 > 3.0);
  CHECK(b.c3 < 5e-3);
  CHECK(b.involution < 5e-3);
}

TEST_CASE("holomorphic pair") {
  const auto d = GridDomain::span(-0.3, -0.3, 0.3, 0.3, 65, 65);
  const auto p = twin_forward(z_squared(d));
  CHECK(p.diagnostics.c2 < 1e-6);
  CHECK(p.diagnostics.c3 < 1e-6);
  CHECK(maximal_residual(p.g).scaled_max_abs < 5e-3);

  // J^f = J^g = 0.25 at (0.25, 0), node (60, 60)
  const auto e = GridDomain::span(0.1, -0.15, 0.4, 0.15, 121, 121);
  const auto q = twin_forward(z_squared(e));
  REQUIRE(e.x(60) == doctest::Approx(0.25));
  CHECK(q.jac_f.pairs.at(0).J(60, 60) == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(q.jac_g.pairs.at(0).J(60, 60) == doctest::Approx(0.25).epsilon(1e-4));
}

TEST_CASE("backward inverts forward") {
  const auto d = catenoid_grid(97, 97);
  const auto f = sample(d, {catenoid});
  const auto p = twin_forward(f);
  const auto back = twin_backward(p.g);
  CHECK(anchored_error(back.f.components[0], catenoid) < 1e-3);
  CHECK(back.diagnostics.c3 < 5e-3);
}

TEST_CASE("spacelike planes map to planes") {
  const auto d = GridDomain::span(0, 0, 1, 1, 9, 9);
  const auto p = twin_backward(sample(d, {[](double x, double y) { return 0.3 * x + 0.4 * y; }}));
  const auto& f = p.f.components[0];
  const double fx = (f(8, 0) - f(0, 0)), fy = (f(0, 8) - f(0, 0));
  CHECK(max_error(f, [&](double x, double y) { return fx * x + fy * y + f(0, 0); }) < 1e-12);
  const auto z = twin_backward(HeightMap(d, 1));
  CHECK(max_abs(z.f.components[0]) == 0.0);
}

TEST_CASE("twin preconditions") {
  const auto d = GridDomain::span(0, 0, 1, 1, 33, 33);
  CHECK(code_of([&] { twin_forward(sample(d, {[](double x, double) { return x * x * x; }})); }) ==
        ErrorCode::NotClosed);
  CHECK(code_of([&] {
          twin_forward(sample(d, {[](double x, double) { return x; }, [](double, double y) { return y; }}));
        }) == ErrorCode::AreaAngleViolation);
  CHECK(code_of([&] { twin_backward(sample(d, {[](double x, double) { return 2 * x; }})); }) ==
        ErrorCode::NotSpacelike);
  CHECK(code_of([&] { twin_forward(sample(d, {[](double x, double) { return x; }}), {40, 0}); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("verify_twin agrees with the constructed diagnostics") {
  const auto p = twin_forward(sample(scherk_grid(65), {scherk}));
  const auto v = verify_twin(p);
  CHECK(v.c3 == doctest::Approx(p.diagnostics.c3));
  CHECK(v.c4 == doctest::Approx(p.diagnostics.c4));
  CHECK(v.involution < 5e-3);
}
