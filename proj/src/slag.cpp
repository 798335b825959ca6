#include "twinsurf/slag.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>


namespace twinsurf {

namespace {

constexpr double kConstraintTol = 1e-12;
constexpr double kVanishing = 1e-8;

double hessian_scale(const HessianField& H, std::size_t k) {
  const double m = std::max({1.0, std::abs(H.xx.values[k]), std::abs(H.xy.values[k]), std::abs(H.yy.values[k])});
  return m * m;
}

}  // namespace

const char* to_string(RotationMode m) { return m == RotationMode::standard ? "standard" : "reverse"; }

std::pair<PotentialResult, PotentialResult> lift_potentials(const HeightMap& f, NodeIndex bp) {
  f.validate();
  const auto& d = f.domain;
  const auto m = first_fundamental_form(f, Signature::euclidean);
  ScalarField e(d), fw(d), g(d);
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double w = m.omega.values[k];
    e.values[k] = m.E.values[k] / w;
    fw.values[k] = m.F.values[k] / w;
    g.values[k] = m.G.values[k] / w;
  }
  return {integrate_exact_form(e, fw, bp), integrate_exact_form(fw, g, bp)};
}

SLLift sl_lift(const HeightMap& f, NodeIndex bp, std::optional<double> tol) {
  f.validate();
  const auto& d = f.domain;
  if (!d.contains(bp)) throw Error(ErrorCode::InvalidArgument, "basepoint outside the grid", {bp});
  const double h2 = d.spacing() * d.spacing();
  const double t = tol.value_or(50.0 * h2);

  const auto mr = minimal_residual(f);
  if (mr.max_abs() > t) throw Error(ErrorCode::NotMinimal, "input is not minimal within tolerance");
  const auto closed = closedness_identities(f, Signature::euclidean);
  if (closed.max_abs() > t) throw Error(ErrorCode::NotClosed, "lift forms are not closed within tolerance");

  auto [M, N] = lift_potentials(f, bp);
  SLLift out;
  out.basepoint = bp;
  out.M = std::move(M.potential);
  out.N = std::move(N.potential);
  out.h = integrate_exact_form(out.M, out.N, bp).potential;

  const ScalarField Mx = partial_x(out.M), My = partial_y(out.M), Nx = partial_x(out.N), Ny = partial_y(out.N);
  ScalarField sym(d), area(d);
  for (std::size_t k = 0; k < d.size(); ++k) {
    sym.values[k] = My.values[k] - Nx.values[k];
    area.values[k] = Mx.values[k] * Ny.values[k] - My.values[k] * Nx.values[k] - 1.0;
  }
  ScalarField det = hessian_determinant(out.h);
  for (double& v : det.values) v -= 1.0;
  out.gradient_symmetry_residual = max_abs_interior(sym);
  out.area_residual = max_abs_interior(area);
  out.hessian_det_residual = max_abs_interior(det);
  return out;
}

SLParams SLParams::from_theta(double theta, int epsilon, RotationMode mode) {
  if (epsilon != 1 && epsilon != -1) throw Error(ErrorCode::InvalidArgument, "epsilon must be +1 or -1");
  SLParams p;
  p.epsilon = epsilon;
  p.theta = theta;
  const bool circular = (mode == RotationMode::standard) == (epsilon == 1);
  if (circular) {
    p.lambda1 = std::cos(theta);
    p.lambda2 = std::sin(theta);
  } else if (mode == RotationMode::standard) {
    p.lambda1 = std::cosh(theta);
    p.lambda2 = std::sinh(theta);
  } else {
    p.lambda1 = std::sinh(theta);
    p.lambda2 = std::cosh(theta);
  }
  return p;
}

double SLParams::constraint_defect(RotationMode mode) const {
  const double l1 = lambda1 * lambda1, l2 = lambda2 * lambda2;
  return mode == RotationMode::standard ? l1 + epsilon * l2 - 1.0 : -epsilon * l1 + l2 - 1.0;
}

ScalarField graph_rotate(const ScalarField& F, const SLParams& p, RotationMode mode) {
  F.domain.validate();
  if (p.epsilon != 1 && p.epsilon != -1)
    throw Error(ErrorCode::ParamConstraintViolation, "epsilon must be +1 or -1");
  if (!(std::abs(p.constraint_defect(mode)) <= kConstraintTol))
    throw Error(ErrorCode::ParamConstraintViolation, "lambda1, lambda2 violate the rotation constraint");
  const auto& d = F.domain;
  const double l1 = p.lambda1, l2 = p.lambda2, eps = p.epsilon;
  ScalarField h(d);
  for (int j = 0; j < d.ny; ++j) {
    for (int i = 0; i < d.nx; ++i) {
      const double x = d.x(i), y = d.y(j);
      h(i, j) = mode == RotationMode::standard ? l2 * F(i, j) - eps * l1 * 0.5 * (x * x + y * y)
                                               : l2 * F(i, j) + l1 * 0.5 * (x * x + eps * y * y);
    }
  }
  return h;
}

ScalarField hessian_determinant(const ScalarField& h) {
  const auto H = hessian(h);
  ScalarField det(h.domain);
  for (std::size_t k = 0; k < det.values.size(); ++k)
    det.values[k] = H.xx.values[k] * H.yy.values[k] - H.xy.values[k] * H.xy.values[k];
  return det;
}

ResidualReport sl_residual(const ScalarField& h, double theta) {
  h.domain.validate();
  const auto& d = h.domain;
  const auto H = hessian(h);
  const double c = std::cos(theta), s = std::sin(theta);
  ResidualReport r;
  r.op = "sl_residual";
  r.grid = d;
  ScalarField raw(d), scaled(d);
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double a = H.xx.values[k], b = H.yy.values[k], x = H.xy.values[k];
    raw.values[k] = c * (a + b) + s * (1.0 - a * b + x * x);
    scaled.values[k] = raw.values[k] / hessian_scale(H, k);
  }
  r.raw.push_back(std::move(raw));
  r.scaled.push_back(std::move(scaled));
  aggregate(r);
  return r;
}

ResidualReport split_sl_residual(const ScalarField& h, double theta) {
  h.domain.validate();
  const auto& d = h.domain;
  const auto H = hessian(h);
  const double c = std::cosh(theta), s = std::sinh(theta);
  ResidualReport r;
  r.op = "split_sl_residual";
  r.signature = Signature::split;
  r.grid = d;
  ScalarField raw(d), scaled(d);
  std::vector<unsigned char> mask(d.size(), 1);
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double a = H.xx.values[k], b = H.yy.values[k], x = H.xy.values[k];
    const double lap = a + b, q = 1.0 + a * b - x * x;
    if (!(q * q - lap * lap > 0.0)) mask[k] = 0;
    raw.values[k] = c * lap + s * q;
    scaled.values[k] = raw.values[k] / hessian_scale(H, k);
  }
  auto bad = collect_nodes(d, [&](std::size_t k) { return !mask[k]; });
  if (!bad.empty()) r.diagnostics.push_back({ErrorCode::NotSpacelike, std::move(bad), "gradient graph is not spacelike"});
  r.raw.push_back(std::move(raw));
  r.scaled.push_back(std::move(scaled));
  aggregate(r, mask);
  return r;
}

AngleEstimate detect_angle(const ScalarField& h, Signature mode) {
  h.domain.validate();
  const auto& d = h.domain;
  const auto H = hessian(h);
  const std::size_t count = static_cast<std::size_t>(d.nx - 2) * static_cast<std::size_t>(d.ny - 2);
  std::vector<double> lap, one_minus, one_plus;
  lap.reserve(count);
  one_minus.reserve(count);
  one_plus.reserve(count);
  for (int j = 1; j < d.ny - 1; ++j) {
    for (int i = 1; i < d.nx - 1; ++i) {
      const std::size_t k = d.index(i, j);
      const double a = H.xx.values[k], b = H.yy.values[k], x = H.xy.values[k];
      const double det = a * b - x * x;
      lap.push_back(a + b);
      one_minus.push_back(1.0 - det);
      one_plus.push_back(1.0 + det);
    }
  }
  auto min_abs = [](const std::vector<double>& v) {
    double m = INFINITY;
    for (double x : v) m = std::min(m, std::abs(x));
    return m;
  };

  AngleEstimate out;
  std::vector<double> q(count);
  if (mode == Signature::split) {
    if (min_abs(one_plus) < kVanishing)
      throw Error(ErrorCode::DenominatorVanishes, "1 + det D^2 h vanishes on the grid");
    for (std::size_t k = 0; k < count; ++k) q[k] = lap[k] / one_plus[k];
    for (std::size_t k = 0; k < count; ++k)
      if (std::abs(q[k]) >= 1.0) throw Error(ErrorCode::PhiOutOfRange, "quotient leaves (-1, 1)");
  } else {
    const double m1 = min_abs(one_minus), m2 = min_abs(lap);
    if (m1 < kVanishing && m2 < kVanishing)
      throw Error(ErrorCode::DenominatorVanishes, "both 1 - det D^2 h and the Laplacian vanish on the grid");
    out.inverted = m2 > m1;
    for (std::size_t k = 0; k < count; ++k) q[k] = out.inverted ? one_minus[k] / lap[k] : lap[k] / one_minus[k];
  }

  double sum = 0.0;
  for (double v : q) sum += v;
  const double mean = sum / static_cast<double>(count);
  double spread = 0.0;
  for (double v : q) spread = std::max(spread, std::abs(v - mean));
  out.mean_quotient = mean;
  out.constancy_residual = spread;
  if (mode == Signature::split) {
    if (std::abs(mean) >= 1.0) throw Error(ErrorCode::PhiOutOfRange, "mean quotient leaves (-1, 1)");
    out.theta = -std::atanh(mean);
  } else {
    out.theta = out.inverted ? std::numbers::pi / 2.0 + std::atan(mean) : -std::atan(mean);
  }
  return out;
}

}  // namespace twinsurf
