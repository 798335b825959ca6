#include <cmath>
#include <cstring>

#include "doctest.h"
#include "support.hpp"
#include "twinsurf/error.hpp"
#include "twinsurf/parallel.hpp"
#include "twinsurf/solver.hpp"
#include "twinsurf/systems.hpp"
#include "twinsurf/twin.hpp"

using namespace twinsurf;
using namespace testing;

TEST_CASE("transfinite interpolation reproduces bilinear data") {
  const auto d = GridDomain::span(0, 0, 1, 2, 9, 11);
  auto bl = [](double x, double y) { return 1 + 2 * x - y + 0.5 * x * y; };
  CHECK(max_error(transfinite_interpolation(sample(d, {bl})).components[0], bl) < 1e-14);
}

TEST_CASE("affine boundary data") {
  const auto d = GridDomain::span(0, 0, 1, 1, 17, 17);
  auto plane = [](double x, double y) { return 0.4 * x - 0.7 * y + 0.1; };
  const auto r = solve_minimal(sample(d, {plane}));
  CHECK(r.converged);
  CHECK(r.outer_iterations <= 2);
  CHECK(max_error(r.solution.components[0], plane) < 1e-9);
  CHECK(minimal_residual(r.solution).scaled_max_abs <= 1e-9);
}

TEST_CASE("zero boundary for the maximal problem") {
  const auto d = GridDomain::span(0, 0, 1, 1, 9, 9);
  const auto r = solve_maximal(HeightMap(d, 2));
  CHECK(r.converged);
  for (const auto& c : r.solution.components) CHECK(max_abs(c) == 0.0);
}

TEST_CASE("scherk Dirichlet problem") {
  const auto f = sample(scherk_grid(65), {scherk});
  HeightMap b = f;
  for (int j = 1; j < 64; ++j)
    for (int i = 1; i < 64; ++i) b.components[0](i, j) = 0.0;
  const auto r = solve_minimal(b);
  CHECK(r.converged);
  CHECK(max_interior_error(r.solution.components[0], scherk) < 4e-3);
}

TEST_CASE("catenoid Dirichlet problem") {
  const auto f = sample(catenoid_grid(49, 49), {catenoid});
  const auto r = solve_minimal(f);
  CHECK(max_interior_error(r.solution.components[0], catenoid) < 4e-3);
  const double tol = 10 * SolveOptions{}.outer_tol / std::pow(f.domain.spacing(), 2);
  CHECK(minimal_residual(r.solution).scaled_max_abs <= std::max(tol, 1e-2));
}

TEST_CASE("maximal Dirichlet problem recovers the twin") {
  const auto p = twin_forward(sample(scherk_grid(49), {scherk}));
  const auto r = solve_maximal(p.g);
  CHECK(r.converged);
  double err = 0.0;
  for (std::size_t k = 0; k < p.g.domain.size(); ++k)
    err = std::max(err, std::abs(r.solution.components[0].values[k] - p.g.components[0].values[k]));
  CHECK(err < 5e-3);
}

TEST_CASE("non-spacelike boundary") {
  const auto d = GridDomain::span(0, 0, 1, 1, 9, 9);
  try {
    solve_maximal(sample(d, {[](double x, double) { return 2 * x; }}));
    FAIL("expected SPACELIKE_UNREACHABLE");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpacelikeUnreachable);
  }
}

TEST_CASE("iteration cap") {
  SolveOptions o;
  o.max_outer = 1;
  const auto d = catenoid_grid(17, 17);
  try {
    solve_minimal(sample(d, {catenoid}), o);
    FAIL("expected MAX_ITERATIONS");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MaxIterations);
  }
}

TEST_CASE("option validation") {
  SolveOptions o;
  o.relaxation = 2.5;
  CHECK_THROWS_AS(o.validate(), Error);
  o = {};
  o.outer_tol = -1;
  CHECK_THROWS_AS(o.validate(), Error);
}

TEST_CASE("solutions do not depend on the thread count") {
  const auto f = sample(catenoid_grid(33, 33), {catenoid});
  set_num_threads(1);
  const auto a = solve_minimal(f);
  set_num_threads(4);
  const auto b = solve_minimal(f);
  set_num_threads(1);
  REQUIRE(a.solution.domain == b.solution.domain);
  CHECK(std::memcmp(a.solution.components[0].values.data(), b.solution.components[0].values.data(),
                    sizeof(double) * a.solution.domain.size()) == 0);
  CHECK(a.outer_iterations == b.outer_iterations);
}
