#include "twinsurf/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "twinsurf/parallel.hpp"

namespace twinsurf {

namespace {

constexpr Complex I(0.0, 1.0);

ProjectivePointField blank(const GridDomain& d, int count) {
  ProjectivePointField g;
  g.domain = d;
  g.components.assign(static_cast<std::size_t>(count), ComplexField(d));
  return g;
}

void set_point(ProjectivePointField& g, std::size_t k, std::vector<Complex>& z) {
  normalize_point(z);
  for (std::size_t c = 0; c < z.size(); ++c) g.components[c].values[k] = z[c];
}

template <class Row>
ProjectivePointField build(const HeightMap& f, Row&& row) {
  f.validate();
  const auto& d = f.domain;
  const auto grads = gradients(f);
  const auto m = metric_from_gradients(d, grads, Signature::euclidean);
  auto g = blank(d, f.n() + 2);
  for_each_row(d.ny, [&](int j) {
    std::vector<Complex> z(static_cast<std::size_t>(f.n()) + 2);
    for (int i = 0; i < d.nx; ++i) {
      const std::size_t k = d.index(i, j);
      const double w = m.omega.values[k];
      row(m.E.values[k] / w, m.F.values[k] / w, m.G.values[k] / w, z[0], z[1]);
      for (std::size_t c = 0; c < grads.size(); ++c) z[c + 2] = z[0] * grads[c].x.values[k] + z[1] * grads[c].y.values[k];
      set_point(g, k, z);
    }
  });
  return g;
}

}  // namespace

std::vector<Complex> ProjectivePointField::point(std::size_t k) const {
  std::vector<Complex> z(components.size());
  for (std::size_t c = 0; c < z.size(); ++c) z[c] = components[c].values[k];
  return z;
}

void normalize_point(std::vector<Complex>& z) {
  double s = 0.0;
  for (const auto& v : z) s += std::norm(v);
  const double norm = std::sqrt(s);
  if (!(norm > 0.0)) return;
  Complex phase = 1.0;
  for (const auto& v : z) {
    if (std::abs(v) > 1e-14 * norm) {
      phase = std::conj(v) / std::abs(v);
      break;
    }
  }
  for (auto& v : z) v *= phase / norm;
  for (auto& v : z) {
    if (std::abs(v) > 1e-14) {
      v = Complex(std::abs(v), 0.0);
      break;
    }
  }
}

void normalize(ProjectivePointField& g) {
  const auto& d = g.domain;
  for (std::size_t k = 0; k < d.size(); ++k) {
    auto z = g.point(k);
    set_point(g, k, z);
  }
}

ProjectivePointField gauss_map(const HeightMap& f) {
  return build(f, [](double, double F, double G, Complex& z1, Complex& z2) {
    z1 = G;
    z2 = I - F;
  });
}

ProjectivePointField gauss_map_alt(const HeightMap& f) {
  return build(f, [](double E, double F, double, Complex& z1, Complex& z2) {
    z1 = 1.0 - I * F;
    z2 = I * E;
  });
}

double quadric_residual(const ProjectivePointField& g) {
  double m = 0.0;
  for (std::size_t k = 0; k < g.domain.size(); ++k) {
    Complex s = 0.0;
    for (const auto& c : g.components) s += c.values[k] * c.values[k];
    m = std::max(m, std::abs(s));
  }
  return m;
}

double chordal_distance(const std::vector<Complex>& z, const std::vector<Complex>& w) {
  // |w - <z, w> z| equals sqrt(1 - |<z, w>|^2) for unit vectors without the
  // cancellation of the closed form.
  Complex ip = 0.0;
  for (std::size_t c = 0; c < z.size(); ++c) ip += std::conj(z[c]) * w[c];
  double s = 0.0;
  for (std::size_t c = 0; c < z.size(); ++c) s += std::norm(w[c] - ip * z[c]);
  return std::sqrt(s);
}

double projective_distance(const ProjectivePointField& a, const ProjectivePointField& b) {
  if (!(a.domain == b.domain) || a.components.size() != b.components.size())
    throw Error(ErrorCode::InvalidArgument, "projective fields differ in shape");
  double m = 0.0;
  for (std::size_t k = 0; k < a.domain.size(); ++k) m = std::max(m, chordal_distance(a.point(k), b.point(k)));
  return m;
}

HyperplaneFit hyperplane_fit(const ProjectivePointField& g, int i, int j, double min_fraction) {
  const int n2 = g.n_plus_2();
  if (i < 1 || j < 1 || i > n2 || j > n2 || i == j)
    throw Error(ErrorCode::InvalidArgument, "component indices must be distinct and in 1.." + std::to_string(n2));
  const auto& zi = g.components[i - 1].values;
  const auto& zj = g.components[j - 1].values;
  const std::size_t total = g.domain.size();

  Complex num = 0.0;
  double den = 0.0;
  std::size_t valid = 0;
  for (std::size_t k = 0; k < total; ++k) {
    if (std::abs(zj[k]) <= 1e-8) continue;
    ++valid;
    num += zi[k] * std::conj(zj[k]);
    den += std::norm(zj[k]);
  }
  HyperplaneFit fit;
  fit.i = i;
  fit.j = j;
  fit.valid_fraction = static_cast<double>(valid) / static_cast<double>(total);
  if (fit.valid_fraction < min_fraction)
    throw Error(ErrorCode::DegenerateFit, "component " + std::to_string(j) + " vanishes on too many nodes");
  fit.lambda = num / den;
  for (std::size_t k = 0; k < total; ++k) {
    if (std::abs(zj[k]) <= 1e-8) continue;
    fit.residual = std::max(fit.residual, std::abs(zi[k] - fit.lambda * zj[k]));
  }
  fit.is_nonreal = std::abs(fit.lambda.imag()) > kNonrealThreshold;
  return fit;
}

double planarity_score(const ProjectivePointField& g) {
  const std::size_t total = g.domain.size();
  constexpr std::size_t kSample = 4096;
  std::vector<std::size_t> nodes(total);
  std::iota(nodes.begin(), nodes.end(), std::size_t{0});
  if (total > kSample) {
    std::mt19937_64 rng(0x5eed);
    for (std::size_t a = 0; a < kSample; ++a) {
      std::uniform_int_distribution<std::size_t> pick(a, total - 1);
      std::swap(nodes[a], nodes[pick(rng)]);
    }
    nodes.resize(kSample);
    std::sort(nodes.begin(), nodes.end());
  }
  const std::size_t m = nodes.size();
  std::vector<std::vector<Complex>> pts(m);
  for (std::size_t a = 0; a < m; ++a) pts[a] = g.point(nodes[a]);

  std::vector<double> row_max(m, 0.0);
  for_each_row(static_cast<int>(m), [&](int a) {
    double best = 0.0;
    for (std::size_t b = static_cast<std::size_t>(a) + 1; b < m; ++b) best = std::max(best, chordal_distance(pts[a], pts[b]));
    row_max[a] = best;
  });
  double score = 0.0;
  for (double v : row_max) score = std::max(score, v);
  return score;
}

JorgensGauss jorgens_gauss(const ScalarField& F, double tol) {
  F.domain.validate();
  const auto& d = F.domain;
  const auto H = hessian(F);

  std::vector<NodeIndex> off;
  double lo = INFINITY, hi = -INFINITY;
  for (int j = 1; j < d.ny - 1; ++j) {
    for (int i = 1; i < d.nx - 1; ++i) {
      const std::size_t k = d.index(i, j);
      const double det = H.xx.values[k] * H.yy.values[k] - H.xy.values[k] * H.xy.values[k];
      if (!(std::abs(det - 1.0) <= tol)) off.push_back({i, j});
    }
  }
  if (!off.empty()) throw Error(ErrorCode::NotUnimodular, "det D^2 F differs from 1", std::move(off));
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double lap = H.xx.values[k] + H.yy.values[k];
    lo = std::min(lo, lap);
    hi = std::max(hi, lap);
  }
  if (!(lo > 0.0) && !(hi < 0.0)) throw Error(ErrorCode::SignChange, "F_xx + F_yy is not of one sign");

  JorgensGauss out;
  out.epsilon = lo > 0.0 ? 1 : -1;
  const double eps = out.epsilon;
  out.field = blank(d, 4);
  std::vector<Complex> z(4);
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double fxy = H.xy.values[k], fyy = H.yy.values[k];
    z[0] = eps * fyy;
    z[1] = I - eps * fxy;
    z[2] = eps + I * fxy;
    z[3] = I * fyy;
    set_point(out.field, k, z);
  }
  return out;
}

}  // namespace twinsurf
