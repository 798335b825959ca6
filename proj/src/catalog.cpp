#include "twinsurf/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <regex>

namespace twinsurf {

double arcosh(double x) { return std::log(x + std::sqrt(x * x - 1.0)); }

double arsinh(double x) {
  const double a = std::abs(x);
  const double r = std::log(a + std::sqrt(a * a + 1.0));
  return x < 0.0 ? -r : r;
}

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double param(const Params& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

Jet blank_jet(int n) {
  Jet j;
  for (auto* v : {&j.value, &j.fx, &j.fy, &j.fxx, &j.fxy, &j.fyy}) v->assign(static_cast<std::size_t>(n), 0.0);
  return j;
}

double rect_distance_to_origin(const GridDomain& d) {
  const double cx = std::clamp(0.0, d.x0, d.x1());
  const double cy = std::clamp(0.0, d.y0, d.y1());
  return std::hypot(cx, cy);
}

double rect_max_abs_x(const GridDomain& d) { return std::max(std::abs(d.x0), std::abs(d.x1())); }
double rect_max_abs_y(const GridDomain& d) { return std::max(std::abs(d.y0), std::abs(d.y1())); }

double positive_rho(const Params& p) {
  const double rho = param(p, "rho", 1.0);
  if (!(rho > 0.0)) throw Error(ErrorCode::InvalidArgument, "rho must be positive");
  return rho;
}

// f_k = a_k x + b_k y + c_k
class Plane final : public CatalogEntry {
 public:
  explicit Plane(Params p) : CatalogEntry(std::move(p)) {
    n_ = static_cast<int>(param(params_, "n", 1.0));
    if (n_ < 1) throw Error(ErrorCode::InvalidArgument, "plane needs n >= 1");
  }
  std::string name() const override { return "plane"; }
  int n() const override { return n_; }
  bool admissible(const GridDomain&) const override { return true; }
  Jet jet(double x, double y) const override {
    Jet j = blank_jet(n_);
    for (int k = 0; k < n_; ++k) {
      const auto idx = std::to_string(k + 1);
      const double a = param(params_, "a" + idx, 0.0), b = param(params_, "b" + idx, 0.0),
                   c = param(params_, "c" + idx, 0.0);
      j.value[k] = a * x + b * y + c;
      j.fx[k] = a;
      j.fy[k] = b;
    }
    return j;
  }

 private:
  int n_ = 1;
};

// rho * arcosh(r / rho)
class Catenoid final : public CatalogEntry {
 public:
  explicit Catenoid(Params p) : CatalogEntry(std::move(p)), rho_(positive_rho(params_)) {}
  std::string name() const override { return "catenoid"; }
  int n() const override { return 1; }
  bool admissible(const GridDomain& d) const override { return rect_distance_to_origin(d) > rho_; }
  Jet jet(double x, double y) const override {
    Jet j = blank_jet(1);
    const double r2 = x * x + y * y, r = std::sqrt(r2);
    const double s = std::sqrt(r2 - rho_ * rho_);
    const double fr = rho_ / s;                // df/dr
    const double frr = -rho_ * r / (s * s * s);  // d2f/dr2
    j.value[0] = rho_ * arcosh(r / rho_);
    j.fx[0] = fr * x / r;
    j.fy[0] = fr * y / r;
    j.fxx[0] = frr * x * x / r2 + fr * y * y / (r2 * r);
    j.fyy[0] = frr * y * y / r2 + fr * x * x / (r2 * r);
    j.fxy[0] = (frr - fr / r) * x * y / r2;
    return j;
  }

 private:
  double rho_;
};

// rho * arctan(y / x) on the x > 0 branch
class Helicoid final : public CatalogEntry {
 public:
  explicit Helicoid(Params p) : CatalogEntry(std::move(p)), rho_(positive_rho(params_)) {}
  std::string name() const override { return "helicoid"; }
  int n() const override { return 1; }
  bool admissible(const GridDomain& d) const override { return d.x0 > 0.0; }
  Jet jet(double x, double y) const override {
    Jet j = blank_jet(1);
    const double r2 = x * x + y * y, r4 = r2 * r2;
    j.value[0] = rho_ * std::atan(y / x);
    j.fx[0] = -rho_ * y / r2;
    j.fy[0] = rho_ * x / r2;
    j.fxx[0] = 2.0 * rho_ * x * y / r4;
    j.fyy[0] = -2.0 * rho_ * x * y / r4;
    j.fxy[0] = rho_ * (y * y - x * x) / r4;
    return j;
  }

 private:
  double rho_;
};

// (1/rho) [ln cos(rho x) - ln cos(rho y)]
class Scherk final : public CatalogEntry {
 public:
  explicit Scherk(Params p) : CatalogEntry(std::move(p)), rho_(positive_rho(params_)) {}
  std::string name() const override { return "scherk"; }
  int n() const override { return 1; }
  bool admissible(const GridDomain& d) const override {
    return rho_ * rect_max_abs_x(d) < kHalfPi && rho_ * rect_max_abs_y(d) < kHalfPi;
  }
  Jet jet(double x, double y) const override {
    Jet j = blank_jet(1);
    const double cx = std::cos(rho_ * x), cy = std::cos(rho_ * y);
    j.value[0] = (std::log(cx) - std::log(cy)) / rho_;
    j.fx[0] = -std::tan(rho_ * x);
    j.fy[0] = std::tan(rho_ * y);
    j.fxx[0] = -rho_ / (cx * cx);
    j.fyy[0] = rho_ / (cy * cy);
    return j;
  }

 private:
  double rho_;
};

// Components (Re phi_1, Im phi_1, ..., Re phi_k, Im phi_k) of polynomials
// phi_m(z) = sum_p (re{m}_{p} + i im{m}_{p}) z^p.
class Holomorphic final : public CatalogEntry {
 public:
  explicit Holomorphic(Params p) : CatalogEntry(std::move(p)) {
    static const std::regex coeff(R"((re|im)(\d+)_(\d+))");
    k_ = static_cast<int>(param(params_, "k", 1.0));
    if (k_ < 1) throw Error(ErrorCode::InvalidArgument, "holomorphic needs k >= 1");
    coeffs_.assign(static_cast<std::size_t>(k_), {});
    bool any = false;
    for (const auto& [key, v] : params_) {
      std::smatch m;
      if (!std::regex_match(key, m, coeff)) continue;
      const int fn = std::stoi(m[2]) - 1, pw = std::stoi(m[3]);
      if (fn < 0 || fn >= k_) throw Error(ErrorCode::InvalidArgument, "coefficient '" + key + "' exceeds k");
      auto& c = coeffs_[fn];
      if (static_cast<int>(c.size()) <= pw) c.resize(static_cast<std::size_t>(pw) + 1);
      if (m[1] == "re") c[pw].real(v); else c[pw].imag(v);
      any = true;
    }
    if (!any) coeffs_[0] = {0.0, 0.0, 1.0};  // phi = z^2
  }
  std::string name() const override { return "holomorphic"; }
  int n() const override { return 2 * k_; }
  bool admissible(const GridDomain&) const override { return true; }
  Jet jet(double x, double y) const override {
    Jet j = blank_jet(2 * k_);
    const std::complex<double> z(x, y);
    for (int m = 0; m < k_; ++m) {
      std::complex<double> v = 0.0, d1 = 0.0, d2 = 0.0;
      const auto& c = coeffs_[m];
      for (int p = static_cast<int>(c.size()) - 1; p >= 0; --p) {  // Horner, with derivatives
        d2 = d2 * z + 2.0 * d1;
        d1 = d1 * z + v;
        v = v * z + c[p];
      }
      const int re = 2 * m, im = 2 * m + 1;
      j.value[re] = v.real();
      j.value[im] = v.imag();
      // d/dx = phi', d/dy = i phi'
      j.fx[re] = d1.real();
      j.fy[re] = -d1.imag();
      j.fx[im] = d1.imag();
      j.fy[im] = d1.real();
      j.fxx[re] = d2.real();
      j.fyy[re] = -d2.real();
      j.fxy[re] = -d2.imag();
      j.fxx[im] = d2.imag();
      j.fyy[im] = -d2.imag();
      j.fxy[im] = d2.real();
    }
    return j;
  }

 private:
  int k_ = 1;
  std::vector<std::vector<std::complex<double>>> coeffs_;
};

// Gradient graph (F_x, F_y) of F = (a x^2 + 2 c x y + b y^2) / 2.
class QuadraticGradient final : public CatalogEntry {
 public:
  explicit QuadraticGradient(Params p) : CatalogEntry(std::move(p)) {}
  std::string name() const override { return "quadratic_gradient"; }
  int n() const override { return 2; }
  bool admissible(const GridDomain&) const override { return true; }
  Jet jet(double x, double y) const override {
    const double a = param(params_, "a", 1.0), b = param(params_, "b", 1.0), c = param(params_, "c", 0.0);
    Jet j = blank_jet(2);
    j.value[0] = a * x + c * y;
    j.value[1] = c * x + b * y;
    j.fx[0] = a;
    j.fy[0] = c;
    j.fx[1] = c;
    j.fy[1] = b;
    return j;
  }
};

// (s x, s y) with s = sqrt(1 - rho^2 / r^2): the catenoid's lift as a graph.
class LagrangianCatenoid final : public CatalogEntry {
 public:
  explicit LagrangianCatenoid(Params p) : CatalogEntry(std::move(p)), rho_(positive_rho(params_)) {}
  std::string name() const override { return "lagrangian_catenoid"; }
  int n() const override { return 2; }
  bool admissible(const GridDomain& d) const override { return rect_distance_to_origin(d) > rho_; }
  Jet jet(double x, double y) const override {
    Jet j = blank_jet(2);
    const double q = x * x + y * y, r2 = rho_ * rho_;
    const double s = std::sqrt(1.0 - r2 / q);
    const double ds = r2 / (q * q) / (2.0 * s);                         // ds/dq
    const double t = r2 / (q * q * s);                                  // s_x = x t
    const double dt = r2 * (-2.0 / (q * q * q * s) - ds / (q * q * s * s));  // dt/dq
    j.value[0] = s * x;
    j.value[1] = s * y;
    j.fx[0] = s + x * x * t;
    j.fy[0] = x * y * t;
    j.fx[1] = x * y * t;
    j.fy[1] = s + y * y * t;
    j.fxx[0] = 3.0 * x * t + 2.0 * x * x * x * dt;
    j.fxy[0] = y * t + 2.0 * x * x * y * dt;
    j.fyy[0] = x * t + 2.0 * x * y * y * dt;
    j.fxx[1] = y * t + 2.0 * x * x * y * dt;
    j.fxy[1] = x * t + 2.0 * x * y * y * dt;
    j.fyy[1] = 3.0 * y * t + 2.0 * y * y * y * dt;
    return j;
  }

 private:
  double rho_;
};

// h = x y + sum_p c{p} x^p, a solution of h_xx h_yy - h_xy^2 = -1.
class ChamberlandReverse final : public CatalogEntry {
 public:
  explicit ChamberlandReverse(Params p) : CatalogEntry(std::move(p)) {
    static const std::regex coeff(R"(c(\d+))");
    bool any = false;
    for (const auto& [key, v] : params_) {
      std::smatch m;
      if (!std::regex_match(key, m, coeff)) continue;
      const int pw = std::stoi(m[1]);
      if (static_cast<int>(c_.size()) <= pw) c_.resize(static_cast<std::size_t>(pw) + 1, 0.0);
      c_[pw] = v;
      any = true;
    }
    if (!any) c_ = {0.0, 0.0, 0.0, 0.0, 1.0};  // f(x) = x^4
  }
  std::string name() const override { return "chamberland_reverse"; }
  int n() const override { return 1; }
  bool admissible(const GridDomain&) const override { return true; }
  Jet jet(double x, double y) const override {
    double v = 0.0, d1 = 0.0, d2 = 0.0;
    for (int p = static_cast<int>(c_.size()) - 1; p >= 0; --p) {
      d2 = d2 * x + 2.0 * d1;
      d1 = d1 * x + v;
      v = v * x + c_[p];
    }
    Jet j = blank_jet(1);
    j.value[0] = x * y + v;
    j.fx[0] = y + d1;
    j.fy[0] = x;
    j.fxx[0] = d2;
    j.fxy[0] = 1.0;
    return j;
  }

 private:
  std::vector<double> c_;
};

void check_keys(const std::string& name, const Params& params) {
  static const std::regex plane_key(R"([abc]\d+)");
  static const std::regex holo_key(R"((re|im)\d+_\d+)");
  static const std::regex poly_key(R"(c\d+)");
  const Params defaults = default_params(name);
  for (const auto& [key, v] : params) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "parameter '" + key + "' is not finite");
    if (defaults.count(key)) continue;
    if (name == "plane" && std::regex_match(key, plane_key)) continue;
    if (name == "holomorphic" && std::regex_match(key, holo_key)) continue;
    if (name == "chamberland_reverse" && std::regex_match(key, poly_key)) continue;
    throw Error(ErrorCode::InvalidArgument, "unknown parameter '" + key + "' for " + name);
  }
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"plane",       "catenoid",           "helicoid",
                                              "scherk",      "holomorphic",        "quadratic_gradient",
                                              "lagrangian_catenoid", "chamberland_reverse"};
  return names;
}

Params default_params(const std::string& name) {
  if (name == "plane") return {{"n", 1.0}};
  if (name == "catenoid" || name == "helicoid" || name == "scherk" || name == "lagrangian_catenoid")
    return {{"rho", 1.0}};
  if (name == "holomorphic") return {{"k", 1.0}};
  if (name == "quadratic_gradient") return {{"a", 1.0}, {"b", 1.0}, {"c", 0.0}};
  if (name == "chamberland_reverse") return {};
  throw Error(ErrorCode::InvalidArgument, "unknown catalog entry '" + name + "'");
}

std::unique_ptr<CatalogEntry> make_entry(const std::string& name, const Params& params) {
  check_keys(name, params);
  if (name == "plane") return std::make_unique<Plane>(params);
  if (name == "catenoid") return std::make_unique<Catenoid>(params);
  if (name == "helicoid") return std::make_unique<Helicoid>(params);
  if (name == "scherk") return std::make_unique<Scherk>(params);
  if (name == "holomorphic") return std::make_unique<Holomorphic>(params);
  if (name == "quadratic_gradient") return std::make_unique<QuadraticGradient>(params);
  if (name == "lagrangian_catenoid") return std::make_unique<LagrangianCatenoid>(params);
  return std::make_unique<ChamberlandReverse>(params);
}

HeightMap make_surface(const std::string& name, const Params& params, const GridDomain& domain,
                       bool attach_gradients) {
  domain.validate();
  const auto entry = make_entry(name, params);
  if (!entry->admissible(domain))
    throw Error(ErrorCode::DomainNotAdmissible, "grid leaves the region where " + name + " is defined");
  const int n = entry->n();
  HeightMap h(domain, n);
  std::vector<GradientField> grads(static_cast<std::size_t>(n), GradientField{ScalarField(domain), ScalarField(domain)});
  for (int j = 0; j < domain.ny; ++j) {
    for (int i = 0; i < domain.nx; ++i) {
      const Jet jet = entry->jet(domain.x(i), domain.y(j));
      for (int k = 0; k < n; ++k) {
        h.components[k](i, j) = jet.value[k];
        grads[k].x(i, j) = jet.fx[k];
        grads[k].y(i, j) = jet.fy[k];
      }
    }
  }
  if (attach_gradients) h.analytic = std::move(grads);
  return h;
}

std::optional<LiftEvaluator> known_lift(const std::string& name, const Params& params) {
  check_keys(name, params);
  if (name == "catenoid") {
    const double rho = positive_rho(params);
    return LiftEvaluator([rho](double x, double y) {
      const double s = std::sqrt(1.0 - rho * rho / (x * x + y * y));
      return std::pair{s * x, s * y};
    });
  }
  if (name == "helicoid") {
    const double rho = positive_rho(params);
    return LiftEvaluator([rho](double x, double y) {
      const double s = std::sqrt(1.0 + rho * rho / (x * x + y * y));
      return std::pair{s * x, s * y};
    });
  }
  if (name == "scherk") {
    const double rho = positive_rho(params);
    return LiftEvaluator([rho](double x, double y) {
      return std::pair{arsinh(std::tan(rho * x) * std::cos(rho * y)) / rho,
                       arsinh(std::tan(rho * y) * std::cos(rho * x)) / rho};
    });
  }
  return std::nullopt;
}

std::vector<double> default_rectangle(const std::string& name) {
  if (name == "catenoid" || name == "lagrangian_catenoid") return {1.5, -0.75, 3.0, 0.75};
  if (name == "helicoid") return {1.0, 1.0, 2.0, 2.0};
  if (name == "scherk") return {-0.6, -0.6, 0.6, 0.6};
  if (name == "holomorphic") return {-0.3, -0.3, 0.3, 0.3};
  if (name == "chamberland_reverse" || name == "quadratic_gradient") return {-1.0, -1.0, 1.0, 1.0};
  if (name == "plane") return {0.0, 0.0, 1.0, 1.0};
  throw Error(ErrorCode::InvalidArgument, "unknown catalog entry '" + name + "'");
}

}  // namespace twinsurf
