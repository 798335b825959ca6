#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "twinsurf/error.hpp"
#include "twinsurf/gauss.hpp"

using namespace twinsurf;
using namespace testing;

namespace {

const Complex I(0.0, 1.0);

double point_distance(const ProjectivePointField& g, std::vector<Complex> expected) {
  normalize_point(expected);
  double worst = 0.0;
  for (std::size_t k = 0; k < g.domain.size(); ++k) worst = std::max(worst, chordal_distance(g.point(k), expected));
  return worst;
}

ProjectivePointField constant_field(const GridDomain& d, const std::vector<Complex>& z) {
  ProjectivePointField g;
  g.domain = d;
  for (const auto& c : z) {
    ComplexField f(d);
    std::fill(f.values.begin(), f.values.end(), c);
    g.components.push_back(f);
  }
  return g;
}

}  // namespace

TEST_CASE("Gauss map of the horizontal plane") {
  const auto d = GridDomain::span(0, 0, 1, 1, 7, 7);
  const auto g = gauss_map(HeightMap(d, 1));
  REQUIRE(g.n_plus_2() == 3);
  const double r = 1 / std::sqrt(2.0);
  for (std::size_t k = 0; k < d.size(); ++k) {
    const auto z = g.point(k);
    CHECK(std::abs(z[0] - Complex(r, 0)) < 1e-15);
    CHECK(std::abs(z[1] - Complex(0, r)) < 1e-15);
    CHECK(std::abs(z[2]) < 1e-15);
  }
}

TEST_CASE("gradient graph of the unit paraboloid") {
  const auto d = GridDomain::span(-1, -1, 1, 1, 9, 9);
  const auto g = gauss_map(sample(d, {[](double x, double) { return x; }, [](double, double y) { return y; }}));
  CHECK(point_distance(g, {1, I, 1, I}) < 1e-12);
  const auto J = jorgens_gauss(ScalarField::sample(d, [](double x, double y) { return (x * x + y * y) / 2; }));
  CHECK(J.epsilon == 1);
  CHECK(projective_distance(g, J.field) < 1e-10);
}

TEST_CASE("quadric identity holds for arbitrary maps") {
  const auto d = GridDomain::span(-1, -1, 1, 1, 17, 17);
  const auto f = sample(d, {[](double x, double y) { return std::sin(3 * x) * y; },
                            [](double x, double y) { return std::exp(x - y); },
                            [](double x, double y) { return x * x * y; }});
  CHECK(quadric_residual(gauss_map(f)) < 1e-10);
  CHECK(quadric_residual(gauss_map_alt(f)) < 1e-10);
  CHECK(projective_distance(gauss_map(f), gauss_map_alt(f)) < 1e-10);
  CHECK(quadric_residual(gauss_map(sample(catenoid_grid(17, 17), {catenoid}))) < 1e-10);
}

TEST_CASE("hand-built points") {
  const auto d = GridDomain::span(0, 0, 1, 1, 5, 5);
  CHECK(quadric_residual(constant_field(d, {1, 0, 0})) == doctest::Approx(1.0));
  auto on = constant_field(d, {1, I, 0});
  normalize(on);
  CHECK(quadric_residual(on) == 0.0);
}

TEST_CASE("hyperplane fits") {
  const auto d = GridDomain::span(-1, -1, 1, 1, 9, 9);
  const auto J = jorgens_gauss(ScalarField::sample(d, [](double x, double y) { return (x * x + y * y) / 2; }));
  const auto f21 = hyperplane_fit(J.field, 2, 1);
  CHECK(std::abs(f21.lambda - I) < 1e-12);
  CHECK(f21.residual <= 1e-12);
  CHECK(f21.is_nonreal);

  const auto h = GridDomain::span(-0.3, -0.3, 0.3, 0.3, 33, 33);
  const auto hol = gauss_map(sample(h, {[](double x, double y) { return x * x - y * y; },
                                        [](double x, double y) { return 2 * x * y; }}));
  const auto f34 = hyperplane_fit(hol, 3, 4);
  CHECK(f34.residual < 1e-8);
  CHECK(std::abs(f34.lambda.imag()) > 0.5);

  const auto cat = gauss_map(sample(catenoid_grid(33, 33), {catenoid}));
  CHECK(hyperplane_fit(cat, 1, 3).residual > 0.05);
  CHECK_THROWS_AS(hyperplane_fit(cat, 1, 5), Error);
  CHECK_THROWS_AS(hyperplane_fit(cat, 2, 2), Error);
}

TEST_CASE("planarity") {
  const auto d = GridDomain::span(-1, -1, 1, 1, 9, 9);
  CHECK(planarity_score(gauss_map(sample(d, {[](double x, double y) { return 2 * x - y; }}))) <= 1e-12);
  CHECK(planarity_score(gauss_map(sample(catenoid_grid(33, 33), {catenoid}))) > 0.1);
  // a field with more than 4096 nodes goes through the sampled path
  const auto big = GridDomain::span(1.5, -0.75, 3, 0.75, 81, 81);
  CHECK(planarity_score(gauss_map(sample(big, {catenoid}))) > 0.1);
}

TEST_CASE("Jorgens fields") {
  const auto d = GridDomain::span(-1, -1, 1, 1, 9, 9);
  const auto neg = jorgens_gauss(ScalarField::sample(d, [](double x, double y) { return -(x * x + y * y) / 2; }));
  CHECK(neg.epsilon == -1);
  CHECK(point_distance(neg.field, {1, I, -1, -I}) < 1e-12);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.3, 2.0), v(-1, 1);
  for (int t = 0; t < 5; ++t) {
    const double a = u(rng), c = v(rng), b = (1 + c * c) / a;
    const auto J = jorgens_gauss(
        ScalarField::sample(d, [&](double x, double y) { return 0.5 * a * x * x + c * x * y + 0.5 * b * y * y; }));
    CHECK(planarity_score(J.field) <= 1e-12);
    CHECK(std::abs(hyperplane_fit(J.field, 2, 3).lambda - I * double(J.epsilon)) <= 1e-10);
    CHECK(std::abs(hyperplane_fit(J.field, 4, 1).lambda - I * double(J.epsilon)) <= 1e-10);
  }

  try {
    jorgens_gauss(ScalarField::sample(d, [](double x, double y) { return x * x + y * y; }));
    FAIL("expected NOT_UNIMODULAR");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUnimodular);
  }
}
