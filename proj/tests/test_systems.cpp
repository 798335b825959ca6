#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "twinsurf/systems.hpp"

using namespace twinsurf;
using namespace testing;

namespace {

double ratio(double coarse, double fine) { return coarse / fine; }

}  // namespace

TEST_CASE("planes solve every system exactly") {
  const auto d = GridDomain::span(-1, -1, 1, 1, 11, 9);
  const auto f = sample(d, {[](double x, double y) { return 3 * x - 2 * y + 1; },
                            [](double x, double y) { return 0.5 * x + y; }});
  CHECK(minimal_residual(f).scaled_max_abs < 1e-12);
  CHECK(divergence_residual(f).scaled_max_abs < 1e-12);
  CHECK(closedness_identities(f, Signature::euclidean).scaled_max_abs < 1e-12);
  const auto g = sample(d, {[](double x, double y) { return 0.3 * x - 0.2 * y; }});
  const auto r = maximal_residual(g);
  CHECK(r.scaled_max_abs < 1e-12);
  CHECK(r.diagnostics.empty());
}

TEST_CASE("catenoid is minimal at second order") {
  auto res = [](int n) { return minimal_residual(sample(catenoid_grid(n, n), {catenoid})).scaled_max_abs; };
  const double a = res(97), b = res(193);
  CHECK(a < 1e-3);
  CHECK(ratio(a, b) > 3.5);
  CHECK(ratio(a, b) < 4.5);
}

TEST_CASE("scherk satisfies the divergence form") {
  auto res = [](int n) { return divergence_residual(sample(scherk_grid(n), {scherk})).scaled_max_abs; };
  const double a = res(49), b = res(97);
  CHECK(a < 1e-2);
  CHECK(ratio(a, b) > 3.0);
}

TEST_CASE("helicoid satisfies the closedness identities") {
  auto res = [](int n) {
    return closedness_identities(sample(helicoid_grid(n), {helicoid}), Signature::euclidean).scaled_max_abs;
  };
  const double a = res(33), b = res(65);
  CHECK(a < 1e-3);
  CHECK(ratio(a, b) > 3.0);
}

TEST_CASE("non-minimal map") {
  const auto d = GridDomain::span(0, 0, 1, 1, 17, 17);
  const auto f = sample(d, {[](double x, double) { return x * x; }, [](double, double) { return 0.0; }});
  const auto r = minimal_residual(f);
  const auto m = first_fundamental_form(f, Signature::euclidean);
  for (int j = 1; j < 16; ++j)
    for (int i = 1; i < 16; ++i) {
      CHECK(r.raw[0](i, j) == doctest::Approx(2 * m.G(i, j)));
      CHECK(r.raw[0](i, j) >= 2.0);
    }
  // Divergence form agrees in sign.
  const auto dv = divergence_residual(f);
  for (int j = 2; j < 15; ++j)
    for (int i = 2; i < 15; ++i) CHECK(dv.raw[0](i, j) > 0.0);
  CHECK(closedness_identities(sample(d, {[](double x, double) { return x * x * x; }}), Signature::euclidean)
            .raw_max_abs > 0.1);
}

TEST_CASE("non-maximal spacelike graph") {
  const auto d = GridDomain::span(0, 0, 1, 1, 17, 17);
  const auto r = maximal_residual(sample(d, {[](double x, double) { return x * x / 8; }}));
  CHECK(r.diagnostics.empty());
  CHECK(r.raw_max_abs > 0.1);
  CHECK(r.scaled_max_abs > 0.05);
}

TEST_CASE("maximal residual masks timelike nodes") {
  const auto d = GridDomain::span(0, 0, 1, 1, 17, 17);
  const auto r = maximal_residual(sample(d, {[](double x, double) { return x * x; }}));
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].code == ErrorCode::NotSpacelike);
}

TEST_CASE("normalization selects the aggregate") {
  const auto d = GridDomain::span(0, 0, 1, 1, 9, 9);
  auto r = minimal_residual(sample(d, {[](double x, double y) { return x * x + x * y; }}));
  r.normalization = Normalization::raw;
  CHECK(r.max_abs() == r.raw_max_abs);
  r.normalization = Normalization::scaled;
  CHECK(r.max_abs() == r.scaled_max_abs);
  CHECK(r.scaled_max_abs < r.raw_max_abs);
}
