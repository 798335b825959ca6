#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "twinsurf/error.hpp"
#include "twinsurf/slag.hpp"

using namespace twinsurf;
using namespace testing;

namespace {

double lift_error(const SLLift& L, const Fn& M, const Fn& N) {
  return std::max(anchored_error(L.M, M, L.basepoint), anchored_error(L.N, N, L.basepoint));
}

}  // namespace

TEST_CASE("catenoid lifts to the Lagrangian catenoid") {
  auto M = [](double x, double y) { return std::sqrt(1 - 1 / (x * x + y * y)) * x; };
  auto N = [](double x, double y) { return std::sqrt(1 - 1 / (x * x + y * y)) * y; };
  const double a = lift_error(sl_lift(sample(catenoid_grid(65, 33), {catenoid})), M, N);
  const double b = lift_error(sl_lift(sample(catenoid_grid(129, 65), {catenoid})), M, N);
  CHECK(b < 5e-3);
  CHECK(a / b > 3.0);
  CHECK(a / b < 5.0);
}

TEST_CASE("helicoid and scherk lifts") {
  auto Mh = [](double x, double y) { return std::sqrt(1 + 1 / (x * x + y * y)) * x; };
  auto Nh = [](double x, double y) { return std::sqrt(1 + 1 / (x * x + y * y)) * y; };
  CHECK(lift_error(sl_lift(sample(helicoid_grid(65), {helicoid})), Mh, Nh) < 5e-4);
  auto Ms = [](double x, double y) { return std::asinh(std::tan(x) * std::cos(y)); };
  auto Ns = [](double x, double y) { return std::asinh(std::tan(y) * std::cos(x)); };
  CHECK(lift_error(sl_lift(sample(scherk_grid(65), {scherk})), Ms, Ns) < 5e-4);
}

TEST_CASE("lift potential is unimodular and solves the equation at right angle") {
  const auto L = sl_lift(sample(scherk_grid(97), {scherk}), {48, 48});
  CHECK(L.hessian_det_residual < 1e-2);
  CHECK(sl_residual(L.h, std::numbers::pi / 2).scaled_max_abs < 1e-2);
  const auto a = detect_angle(L.h, Signature::euclidean);
  CHECK(a.theta == doctest::Approx(std::numbers::pi / 2).epsilon(1e-3));
  CHECK(a.constancy_residual < 1e-2);
}

TEST_CASE("lift preconditions") {
  const auto d = GridDomain::span(0, 0, 1, 1, 33, 33);
  try {
    sl_lift(sample(d, {[](double x, double) { return x * x * x; }}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotMinimal);
  }
}

TEST_CASE("rotation of a harmonic function at lambda2 = 0") {
  const auto d = GridDomain::span(-1, -1, 1, 1, 9, 9);
  const auto F = ScalarField::sample(d, [](double x, double y) { return x * x - y * y; });
  const auto h = graph_rotate(F, {1.0, 0.0, 1, 0.0});
  CHECK(max_error(h, [](double x, double y) { return -(x * x + y * y) / 2; }) < 1e-15);
  const auto h2 = graph_rotate(F, {-1.0, 0.0, 1, 0.0});
  CHECK(max_error(h2, [](double x, double y) { return (x * x + y * y) / 2; }) < 1e-15);
}

TEST_CASE("constraint violation") {
  const auto d = GridDomain::span(-1, -1, 1, 1, 9, 9);
  try {
    graph_rotate(ScalarField(d), {1.0, 1.0, 1, 0.0});
    FAIL("expected PARAM_CONSTRAINT_VIOLATION");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParamConstraintViolation);
  }
  CHECK_THROWS_AS(graph_rotate(ScalarField(d), {1.0, 0.0, 2, 0.0}), Error);
}

TEST_CASE("rotation algebra on random quadratics") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 2), th(0.1, 1.5);
  const GridDomain d{-1, -1, 0.5, 0.5, 5, 5};
  int done = 0;
  for (int trial = 0; done < 40 && trial < 1000; ++trial) {
    const int eps = trial % 2 ? 1 : -1;
    const auto mode = trial % 4 < 2 ? RotationMode::standard : RotationMode::reverse;
    const auto p = SLParams::from_theta(th(rng), eps, mode);
    const double l1 = p.lambda1, l2 = p.lambda2, a = u(rng), c = u(rng);
    const double den = mode == RotationMode::standard ? l1 - eps * l2 * a : l1 + l2 * a;
    if (std::abs(den) < 0.25) continue;
    const double b = mode == RotationMode::standard ? -(l1 * a + l2 + eps * l2 * c * c) / den
                                                    : -(l1 * eps * a + l2 - l2 * c * c) / den;
    if (std::abs(b) > 4.0) continue;
    const auto F = ScalarField::sample(d, [&](double x, double y) { return 0.5 * a * x * x + c * x * y + 0.5 * b * y * y; });
    const auto det = hessian_determinant(graph_rotate(F, p, mode));
    const double target = mode == RotationMode::standard ? 1.0 : -1.0;
    double worst = 0.0;
    for (double v : det.values) worst = std::max(worst, std::abs(v - target));
    CHECK(worst <= 1e-12);
    ++done;
  }
  CHECK(done == 40);
}

TEST_CASE("special Lagrangian residual") {
  const auto d = GridDomain::span(-1, -1, 1, 1, 9, 9);
  const auto q = ScalarField::sample(d, [](double x, double y) { return (x * x + y * y) / 2; });
  CHECK(sl_residual(q, std::numbers::pi / 2).raw_max_abs < 1e-12);
  const auto xy = ScalarField::sample(d, [](double x, double y) { return x * y; });
  CHECK(sl_residual(xy, 0.0).raw_max_abs < 1e-12);
  CHECK(sl_residual(q, 0.0).raw_max_abs == doctest::Approx(2.0));
}

TEST_CASE("split special Lagrangian residual") {
  const auto d = GridDomain::span(-1, -1, 1, 1, 9, 9);
  const auto sh = ScalarField::sample(d, [](double x, double y) { return 0.5 * x * y; });
  const auto r0 = split_sl_residual(sh, 0.0);
  CHECK(r0.raw_max_abs < 1e-12);
  CHECK(r0.diagnostics.empty());
  for (double theta : {0.3, -0.8, 1.7}) {
    const double a = -std::tanh(theta / 2);
    const auto h = ScalarField::sample(d, [&](double x, double y) { return a * (x * x + y * y) / 2; });
    CHECK(split_sl_residual(h, theta).raw_max_abs < 1e-12);
    const auto est = detect_angle(h, Signature::split);
    CHECK(est.theta == doctest::Approx(theta).epsilon(1e-10));
  }
  const auto x4 = ScalarField::sample(d, [](double x, double) { return x * x * x * x; });
  const auto r = split_sl_residual(x4, 0.5);
  CHECK((!r.diagnostics.empty() || r.raw_max_abs > 0.1));
}

TEST_CASE("angle detection") {
  const auto d = GridDomain::span(-1, -1, 1, 1, 17, 17);
  const auto xy = ScalarField::sample(d, [](double x, double y) { return 0.7 * x * y; });
  const auto a = detect_angle(xy, Signature::euclidean);
  CHECK(std::abs(a.theta) < 1e-12);
  CHECK(a.constancy_residual < 1e-12);
  const auto c = detect_angle(ScalarField::sample(d, [](double x, double) { return x * x * x; }), Signature::euclidean);
  CHECK(c.constancy_residual > 0.1);
}
