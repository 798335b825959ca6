#include "twinsurf/systems.hpp"

#include <algorithm>
#include <cmath>

#include "twinsurf/parallel.hpp"

namespace twinsurf {

const char* to_string(Normalization n) { return n == Normalization::raw ? "raw" : "scaled"; }

ScalarField residual_scale(const MetricData& m, const std::vector<HessianField>& hessians) {
  const auto& d = m.E.domain;
  ScalarField s(d);
  for (std::size_t k = 0; k < d.size(); ++k) {
    double h2 = 1.0;
    for (const auto& h : hessians)
      h2 = std::max({h2, std::abs(h.xx.values[k]), std::abs(h.xy.values[k]), std::abs(h.yy.values[k])});
    s.values[k] = (m.E.values[k] + m.G.values[k]) * h2;
  }
  return s;
}

void aggregate(ResidualReport& r, const std::vector<unsigned char>& mask) {
  r.raw_max_abs = r.raw_l2 = r.scaled_max_abs = r.scaled_l2 = 0.0;
  double raw_sq = 0.0, scaled_sq = 0.0;
  for (std::size_t c = 0; c < r.raw.size(); ++c) {
    r.raw_max_abs = std::max(r.raw_max_abs, max_abs_interior(r.raw[c], mask));
    r.scaled_max_abs = std::max(r.scaled_max_abs, max_abs_interior(r.scaled[c], mask));
    const double a = rms_interior(r.raw[c], mask), b = rms_interior(r.scaled[c], mask);
    raw_sq += a * a;
    scaled_sq += b * b;
  }
  if (!r.raw.empty()) {
    r.raw_l2 = std::sqrt(raw_sq / static_cast<double>(r.raw.size()));
    r.scaled_l2 = std::sqrt(scaled_sq / static_cast<double>(r.raw.size()));
  }
}

namespace {

std::vector<HessianField> hessians_of(const HeightMap& f) {
  std::vector<HessianField> out;
  out.reserve(f.components.size());
  for (const auto& c : f.components) out.push_back(hessian(c));
  return out;
}

ScalarField divide(const ScalarField& num, const ScalarField& den) {
  ScalarField out(num.domain);
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = den.values[k] != 0.0 ? num.values[k] / den.values[k] : 0.0;
  return out;
}

ResidualReport quasilinear_residual(const HeightMap& f, Signature signature, const char* op) {
  f.validate();
  const auto& d = f.domain;
  const auto metric = first_fundamental_form(f, signature);
  const auto hess = hessians_of(f);
  const ScalarField scale = residual_scale(metric, hess);

  ResidualReport r;
  r.op = op;
  r.signature = signature;
  r.grid = d;
  for (const auto& h : hess) {
    ScalarField res(d);
    for_each_row(d.ny, [&](int j) {
      for (int i = 0; i < d.nx; ++i) {
        const std::size_t k = d.index(i, j);
        res.values[k] = metric.G.values[k] * h.xx.values[k] - 2.0 * metric.F.values[k] * h.xy.values[k] +
                        metric.E.values[k] * h.yy.values[k];
      }
    });
    r.scaled.push_back(divide(res, scale));
    r.raw.push_back(std::move(res));
  }
  if (metric.diagnostic) {
    r.diagnostics.push_back({ErrorCode::NotSpacelike, metric.diagnostic->nodes, "graph is not spacelike"});
  }
  aggregate(r, signature == Signature::split ? metric.valid : std::vector<unsigned char>{});
  return r;
}

}  // namespace

ResidualReport minimal_residual(const HeightMap& f) {
  return quasilinear_residual(f, Signature::euclidean, "minimal_residual");
}

ResidualReport maximal_residual(const HeightMap& g) {
  return quasilinear_residual(g, Signature::split, "maximal_residual");
}

ResidualReport divergence_residual(const HeightMap& f) {
  f.validate();
  const auto& d = f.domain;
  const auto grads = gradients(f);
  const auto metric = metric_from_gradients(d, grads, Signature::euclidean);
  const ScalarField scale = residual_scale(metric, hessians_of(f));

  ResidualReport r;
  r.op = "divergence_residual";
  r.grid = d;
  for (const auto& g : grads) {
    ScalarField P(d), Q(d);
    for (std::size_t k = 0; k < d.size(); ++k) {
      const double w = metric.omega.values[k];
      P.values[k] = (metric.G.values[k] * g.x.values[k] - metric.F.values[k] * g.y.values[k]) / w;
      Q.values[k] = (metric.E.values[k] * g.y.values[k] - metric.F.values[k] * g.x.values[k]) / w;
    }
    const ScalarField Px = partial_x(P), Qy = partial_y(Q);
    ScalarField res(d);
    for (std::size_t k = 0; k < d.size(); ++k) res.values[k] = Px.values[k] + Qy.values[k];
    r.scaled.push_back(divide(res, scale));
    r.raw.push_back(std::move(res));
  }
  aggregate(r);
  return r;
}

ResidualReport closedness_identities(const HeightMap& f, Signature signature) {
  f.validate();
  const auto& d = f.domain;
  const auto metric = first_fundamental_form(f, signature);
  const ScalarField scale = residual_scale(metric, hessians_of(f));

  ScalarField e(d), fw(d), gw(d);
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double w = metric.omega.values[k];
    if (w > 0.0) {
      e.values[k] = metric.E.values[k] / w;
      fw.values[k] = metric.F.values[k] / w;
      gw.values[k] = metric.G.values[k] / w;
    }
  }
  const ScalarField gx = partial_x(gw), fy = partial_y(fw), fx = partial_x(fw), ey = partial_y(e);

  ResidualReport r;
  r.op = "closedness_identities";
  r.signature = signature;
  r.grid = d;
  ScalarField first(d), second(d);
  for (std::size_t k = 0; k < d.size(); ++k) {
    first.values[k] = std::abs(gx.values[k] - fy.values[k]);
    second.values[k] = std::abs(fx.values[k] - ey.values[k]);
  }
  r.scaled.push_back(divide(first, scale));
  r.scaled.push_back(divide(second, scale));
  r.raw.push_back(std::move(first));
  r.raw.push_back(std::move(second));
  if (metric.diagnostic) {
    r.diagnostics.push_back({ErrorCode::NotSpacelike, metric.diagnostic->nodes, "graph is not spacelike"});
  }
  aggregate(r, signature == Signature::split ? metric.valid : std::vector<unsigned char>{});
  return r;
}

}  // namespace twinsurf
