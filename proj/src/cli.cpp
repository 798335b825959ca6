#include "twinsurf/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "twinsurf/catalog.hpp"
#include "twinsurf/gfield.hpp"
#include "twinsurf/parallel.hpp"
#include "twinsurf/report.hpp"
#include "twinsurf/verify.hpp"

namespace twinsurf {

namespace {

constexpr int kOk = 0, kInvalid = 1, kComputation = 2, kCheckFailed = 3;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v))
    throw Error(ErrorCode::InvalidArgument, "bad number '" + s + "' in " + what);
  return v;
}

int to_int(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw Error(ErrorCode::InvalidArgument, "bad integer '" + s + "' in " + what);
  return static_cast<int>(v);
}

std::vector<double> number_list(const std::string& s, std::size_t count, const std::string& what) {
  const auto parts = split(s, ',');
  if (parts.size() != count)
    throw Error(ErrorCode::InvalidArgument, what + " needs " + std::to_string(count) + " comma-separated values");
  std::vector<double> out;
  for (const auto& p : parts) out.push_back(to_double(p, what));
  return out;
}

Params parse_params(const std::vector<std::string>& items) {
  Params p;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::InvalidArgument, "--param expects k=v, got '" + item + "'");
    p[item.substr(0, eq)] = to_double(item.substr(eq + 1), "--param " + item.substr(0, eq));
  }
  return p;
}

GridDomain parse_domain(const std::string& rect, const std::string& grid) {
  const auto r = number_list(rect, 4, "--domain");
  const auto parts = split(grid, ',');
  if (parts.size() != 2) throw Error(ErrorCode::InvalidArgument, "--grid needs nx,ny");
  const int nx = to_int(parts[0], "--grid"), ny = to_int(parts[1], "--grid");
  if (!(r[2] > r[0]) || !(r[3] > r[1])) throw Error(ErrorCode::InvalidGrid, "--domain needs x0 < x1 and y0 < y1");
  if (nx < 5 || ny < 5) throw Error(ErrorCode::InvalidGrid, "grid needs at least 5 nodes per axis");
  return GridDomain::span(r[0], r[1], r[2], r[3], nx, ny);
}

NodeIndex parse_index(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw Error(ErrorCode::InvalidArgument, "--basepoint needs i,j");
  return {to_int(parts[0], "--basepoint"), to_int(parts[1], "--basepoint")};
}

HeightMap read_height(const std::string& path) { return to_height_map(read_gfield(path)); }

void write_height(const std::string& path, const HeightMap& h) { write_gfield(path, h.domain, h.components); }

ProjectivePointField read_projective(const std::string& path) {
  const auto g = read_gfield(path);
  if (g.components.size() < 6 || g.components.size() % 2)
    throw Error(ErrorCode::GfieldParse, "projective field needs an even number (>= 6) of Re/Im components");
  ProjectivePointField p;
  p.domain = g.domain;
  for (std::size_t c = 0; c < g.components.size(); c += 2) {
    ComplexField z(g.domain);
    for (std::size_t k = 0; k < g.domain.size(); ++k)
      z.values[k] = Complex(g.components[c].values[k], g.components[c + 1].values[k]);
    p.components.push_back(std::move(z));
  }
  normalize(p);
  return p;
}

void write_projective(const std::string& path, const ProjectivePointField& p) {
  std::vector<ScalarField> comps;
  for (const auto& z : p.components) {
    ScalarField re(p.domain), im(p.domain);
    for (std::size_t k = 0; k < p.domain.size(); ++k) {
      re.values[k] = z.values[k].real();
      im.values[k] = z.values[k].imag();
    }
    comps.push_back(std::move(re));
    comps.push_back(std::move(im));
  }
  write_gfield(path, p.domain, comps);
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string report;  // JSON destination, stdout when empty

  void emit(const Json& j) const {
    const std::string text = dump(j) + "\n";
    if (report.empty()) {
      out << text;
      return;
    }
    std::ofstream f(report);
    if (!f) throw Error(ErrorCode::Io, "cannot open '" + report + "' for writing");
    f << text;
    if (!f) throw Error(ErrorCode::Io, "write to '" + report + "' failed");
  }
};

std::optional<double> opt_value(const CLI::Option* o, double v) {
  return o->count() ? std::optional<double>(v) : std::nullopt;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal graphs, their maximal twins, special Lagrangian lifts and Gauss maps on grids"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  int threads = 1;
  app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 1024));
  Context ctx{out, err, ""};
  app.add_option("--report", ctx.report, "Write the JSON report to this path instead of stdout");

  std::function<int()> action;
  // Shared option storage.
  std::string in, out_path, f_path, g_path, name, domain, grid = "129,129", basepoint = "0,0", target;
  std::vector<std::string> params;
  double tol = 0.0, theta = 0.0, lambda1 = 0.0, lambda2 = 0.0;
  int epsilon = 1, fit_i = 1, fit_j = 2;
  std::string signature = "euclidean", mode = "standard";
  bool alt = false, from_height = false;
  SolveOptions solve;

  auto add_in = [&](CLI::App* c) { c->add_option("--in", in, "Input GFIELD file")->required(); };
  auto add_out = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--out", out_path, "Output GFIELD file");
    if (required) o->required();
  };
  auto add_bp = [&](CLI::App* c) { c->add_option("--basepoint", basepoint, "Anchor node i,j (default 0,0)"); };
  auto add_tol = [&](CLI::App* c) { return c->add_option("--tol", tol, "Scaled precondition tolerance (default 50 h^2)"); };
  auto set = [&](CLI::App* c, std::function<int()> fn) { c->callback([&action, fn] { action = fn; }); };

  // catalog
  auto* catalog = app.add_subcommand("catalog", "Closed-form surfaces")->require_subcommand(1);
  set(catalog->add_subcommand("list", "List entries"), [&] {
    Json list = Json::array();
    for (const auto& n : catalog_names()) {
      Json p = Json::object();
      for (const auto& [k, v] : default_params(n)) p[k] = v;
      const auto r = default_rectangle(n);
      list.push_back({{"name", n}, {"n", make_entry(n)->n()}, {"params", p}, {"domain", r}, {"known_lift", known_lift(n).has_value()}});
    }
    ctx.emit(list);
    return kOk;
  });
  auto* sample = catalog->add_subcommand("sample", "Sample an entry to GFIELD");
  sample->add_option("--name", name, "Entry name")->required();
  sample->add_option("--param", params, "Parameter k=v (repeatable)");
  sample->add_option("--domain", domain, "x0,y0,x1,y1 (default: entry rectangle)");
  sample->add_option("--grid", grid, "nx,ny");
  add_out(sample, true);
  set(sample, [&] {
    const auto p = parse_params(params);
    make_entry(name, p);
    const auto r = default_rectangle(name);
    const auto d = parse_domain(domain.empty() ? std::to_string(r[0]) + "," + std::to_string(r[1]) + "," +
                                                     std::to_string(r[2]) + "," + std::to_string(r[3])
                                               : domain,
                                grid);
    write_height(out_path, make_surface(name, p, d));
    return kOk;
  });

  // residual
  auto* residual = app.add_subcommand("residual", "Residual of the minimal / maximal systems");
  std::string system;
  std::string normalization = "scaled";
  residual->add_option("--system", system, "minimal|maximal|divergence|closedness")
      ->required()
      ->check(CLI::IsMember({"minimal", "maximal", "divergence", "closedness"}));
  residual->add_option("--signature", signature, "euclidean|split (closedness only)")
      ->check(CLI::IsMember({"euclidean", "split"}));
  residual->add_option("--normalization", normalization, "raw|scaled")->check(CLI::IsMember({"raw", "scaled"}));
  add_in(residual);
  set(residual, [&] {
    const auto f = read_height(in);
    ResidualReport r = system == "minimal"      ? minimal_residual(f)
                       : system == "maximal"    ? maximal_residual(f)
                       : system == "divergence" ? divergence_residual(f)
                                                : closedness_identities(f, signature == "split" ? Signature::split
                                                                                                : Signature::euclidean);
    r.normalization = normalization == "raw" ? Normalization::raw : Normalization::scaled;
    ctx.emit(to_json(r));
    return kOk;
  });

  // twin
  auto* twin = app.add_subcommand("twin", "Twin correspondence")->require_subcommand(1);
  for (const char* dir : {"forward", "backward"}) {
    const bool fwd = std::string(dir) == "forward";
    auto* c = twin->add_subcommand(dir, fwd ? "Maximal twin of a minimal graph" : "Minimal twin of a maximal graph");
    add_in(c);
    add_out(c, false);
    add_bp(c);
    auto* t = add_tol(c);
    set(c, [&, fwd, t] {
      const auto h = read_height(in);
      const auto pair = fwd ? twin_forward(h, parse_index(basepoint), opt_value(t, tol))
                            : twin_backward(h, parse_index(basepoint), opt_value(t, tol));
      if (!out_path.empty()) write_height(out_path, fwd ? pair.g : pair.f);
      ctx.emit(to_json(pair.diagnostics, pair.tol));
      return kOk;
    });
  }
  auto* tverify = twin->add_subcommand("verify", "Recompute the twin diagnostics of two files");
  tverify->add_option("--f", f_path, "Minimal side")->required();
  tverify->add_option("--g", g_path, "Maximal side")->required();
  std::string given = "minimal";
  tverify->add_option("--given", given, "Side that was given: minimal|maximal")->check(CLI::IsMember({"minimal", "maximal"}));
  add_bp(tverify);
  set(tverify, [&] {
    TwinPair p;
    p.f = read_height(f_path);
    p.g = read_height(g_path);
    if (!(p.f.domain == p.g.domain) || p.f.n() != p.g.n())
      throw Error(ErrorCode::InvalidArgument, "--f and --g differ in grid or component count");
    p.basepoint = parse_index(basepoint);
    if (!p.f.domain.contains(p.basepoint)) throw Error(ErrorCode::InvalidArgument, "basepoint outside the grid");
    p.from_minimal = given == "minimal";
    p.tol = default_twin_tol(p.f.domain);
    ctx.emit(to_json(verify_twin(p), p.tol));
    return kOk;
  });

  // sl
  auto* sl = app.add_subcommand("sl", "Special Lagrangian lift and equations")->require_subcommand(1);
  auto* lift = sl->add_subcommand("lift", "Lift (M, N, h) of a minimal graph");
  add_in(lift);
  add_out(lift, false);
  add_bp(lift);
  auto* lift_tol = add_tol(lift);
  set(lift, [&] {
    const auto f = read_height(in);
    const auto L = sl_lift(f, parse_index(basepoint), opt_value(lift_tol, tol));
    if (!out_path.empty()) write_gfield(out_path, f.domain, {L.M, L.N, L.h});
    ctx.emit(to_json(L));
    return kOk;
  });
  auto* rotate = sl->add_subcommand("rotate", "Symplectic graph rotation of a potential");
  add_in(rotate);
  add_out(rotate, true);
  auto* o_l1 = rotate->add_option("--lambda1", lambda1);
  auto* o_l2 = rotate->add_option("--lambda2", lambda2);
  auto* o_th = rotate->add_option("--theta", theta, "Derive lambda1, lambda2 from an angle");
  o_th->excludes(o_l1)->excludes(o_l2);
  rotate->add_option("--epsilon", epsilon)->check(CLI::IsMember({-1, 1}));
  rotate->add_option("--mode", mode)->check(CLI::IsMember({"standard", "reverse"}));
  set(rotate, [&] {
    const auto F = read_height(in);
    if (F.n() != 1) throw Error(ErrorCode::InvalidArgument, "rotation expects a single-component potential");
    const RotationMode m = mode == "reverse" ? RotationMode::reverse : RotationMode::standard;
    SLParams p;
    if (o_th->count()) {
      p = SLParams::from_theta(theta, epsilon, m);
    } else {
      if (!o_l1->count() || !o_l2->count())
        throw Error(ErrorCode::InvalidArgument, "give --theta or both --lambda1 and --lambda2");
      p.lambda1 = lambda1;
      p.lambda2 = lambda2;
      p.epsilon = epsilon;
    }
    const auto h = graph_rotate(F.components[0], p, m);
    write_gfield(out_path, h.domain, {h});
    ctx.emit(Json{{"lambda1", p.lambda1}, {"lambda2", p.lambda2}, {"epsilon", p.epsilon}, {"mode", to_string(m)},
                  {"constraint_defect", p.constraint_defect(m)}});
    return kOk;
  });
  auto* slres = sl->add_subcommand("residual", "Special Lagrangian equation residual of a potential");
  add_in(slres);
  slres->add_option("--theta", theta)->required();
  bool split_eq = false;
  slres->add_flag("--split", split_eq, "Use the split equation");
  set(slres, [&] {
    const auto h = read_height(in);
    if (h.n() != 1) throw Error(ErrorCode::InvalidArgument, "expects a single-component potential");
    ctx.emit(to_json(split_eq ? split_sl_residual(h.components[0], theta) : sl_residual(h.components[0], theta)));
    return kOk;
  });
  auto* detect = sl->add_subcommand("detect-angle", "Estimate the phase of a potential");
  add_in(detect);
  detect->add_option("--mode", signature, "euclidean|split")->check(CLI::IsMember({"euclidean", "split"}));
  set(detect, [&] {
    const auto h = read_height(in);
    if (h.n() != 1) throw Error(ErrorCode::InvalidArgument, "expects a single-component potential");
    ctx.emit(to_json(detect_angle(h.components[0], signature == "split" ? Signature::split : Signature::euclidean)));
    return kOk;
  });

  // gauss
  auto* gauss = app.add_subcommand("gauss", "Generalized Gauss map")->require_subcommand(1);
  auto* gmap = gauss->add_subcommand("map", "Gauss map of a height map (Re/Im interleaved GFIELD)");
  add_in(gmap);
  add_out(gmap, true);
  gmap->add_flag("--alt", alt, "Use the second homogeneous form");
  set(gmap, [&] {
    const auto f = read_height(in);
    const auto g = alt ? gauss_map_alt(f) : gauss_map(f);
    write_projective(out_path, g);
    ctx.emit(Json{{"n_plus_2", g.n_plus_2()}, {"quadric_residual", quadric_residual(g)}});
    return kOk;
  });
  auto projective_input = [&]() {
    return from_height ? gauss_map(read_height(in)) : read_projective(in);
  };
  auto* quad = gauss->add_subcommand("quadric", "Quadric residual max |sum z_k^2|");
  add_in(quad);
  quad->add_flag("--from-height", from_height, "Input is a height map; apply the Gauss map first");
  set(quad, [&] {
    ctx.emit(Json{{"quadric_residual", quadric_residual(projective_input())}});
    return kOk;
  });
  auto* fit = gauss->add_subcommand("fit", "Hyperplane fit z_i = lambda z_j");
  add_in(fit);
  fit->add_flag("--from-height", from_height, "Input is a height map; apply the Gauss map first");
  fit->add_option("--i", fit_i)->required();
  fit->add_option("--j", fit_j)->required();
  set(fit, [&] {
    ctx.emit(to_json(hyperplane_fit(projective_input(), fit_i, fit_j)));
    return kOk;
  });
  auto* plan = gauss->add_subcommand("planarity", "Largest chordal distance between Gauss map values");
  add_in(plan);
  plan->add_flag("--from-height", from_height, "Input is a height map; apply the Gauss map first");
  set(plan, [&] {
    ctx.emit(Json{{"planarity_score", planarity_score(projective_input())}});
    return kOk;
  });
  auto* jorg = gauss->add_subcommand("jorgens", "Closed-form Gauss field of a unimodular potential");
  add_in(jorg);
  add_out(jorg, false);
  tol = 0.0;
  auto* jtol = jorg->add_option("--tol", tol, "Tolerance on |det D^2 F - 1| (default 1e-8)");
  set(jorg, [&] {
    const auto F = read_height(in);
    if (F.n() != 1) throw Error(ErrorCode::InvalidArgument, "expects a single-component potential");
    const auto J = jorgens_gauss(F.components[0], jtol->count() ? tol : 1e-8);
    if (!out_path.empty()) write_projective(out_path, J.field);
    ctx.emit(Json{{"epsilon", J.epsilon}, {"planarity_score", planarity_score(J.field)},
                  {"quadric_residual", quadric_residual(J.field)}});
    return kOk;
  });

  // chart
  auto* chart = app.add_subcommand("chart", "Conformal chart and null curves")->require_subcommand(1);
  auto* cbuild = chart->add_subcommand("build", "Chart fields M, N, xi1, xi2, J_psi, conformal factor");
  add_in(cbuild);
  add_out(cbuild, false);
  add_bp(cbuild);
  auto* cb_tol = add_tol(cbuild);
  set(cbuild, [&] {
    const auto c = build_chart(read_height(in), parse_index(basepoint), opt_value(cb_tol, tol));
    if (!out_path.empty()) write_gfield(out_path, c.domain, {c.M, c.N, c.xi1, c.xi2, c.J_psi, c.conformal_factor});
    double jmin = INFINITY;
    for (double v : c.J_psi.values) jmin = std::min(jmin, v);
    ctx.emit(Json{{"min_J_psi", jmin}, {"target", to_json(auto_target(c))}});
    return kOk;
  });
  auto* cres = chart->add_subcommand("resample", "Resample onto the conformal grid: x, y, h_1..h_n");
  add_in(cres);
  add_out(cres, true);
  add_bp(cres);
  std::string field_path;
  cres->add_option("--field", field_path, "Resample this height map instead of the input");
  cres->add_option("--target", target, "xi-rectangle x0,y0,x1,y1 (default: inscribed)");
  set(cres, [&] {
    const auto f = read_height(in);
    const auto c = build_chart(f, parse_index(basepoint));
    std::optional<GridDomain> t;
    if (!target.empty()) {
      t = parse_domain(target, std::to_string(f.domain.nx) + "," + std::to_string(f.domain.ny));
    }
    const auto X = resample_to_chart(c, field_path.empty() ? f : read_height(field_path), t);
    write_height(out_path, X);
    const auto pm = pullback_metric(X);
    ctx.emit(Json{{"grid", to_json(X.domain)}, {"pullback", to_json(pm)}});
    return kOk;
  });
  auto* cnull = chart->add_subcommand("nullcurve", "Null curve of a resampled immersion");
  add_in(cnull);
  add_out(cnull, false);
  cnull->add_option("--signature", signature)->check(CLI::IsMember({"euclidean", "split"}));
  set(cnull, [&] {
    const auto X = read_height(in);
    if (X.n() < 3) throw Error(ErrorCode::InvalidArgument, "immersion needs x, y and at least one height");
    const auto nc = null_curve(X, signature == "split" ? Signature::split : Signature::euclidean);
    if (!out_path.empty()) {
      ProjectivePointField p{nc.domain, nc.phi};
      write_projective(out_path, p);
    }
    ctx.emit(to_json(nc));
    return kOk;
  });
  auto* cw = chart->add_subcommand("weierstrass", "Weierstrass twin relation of a minimal graph and its twin");
  cw->add_option("--f", f_path, "Minimal side")->required();
  cw->add_option("--g", g_path, "Maximal side (default: computed twin)");
  add_bp(cw);
  set(cw, [&] {
    const auto f = read_height(f_path);
    const NodeIndex bp = parse_index(basepoint);
    TwinPair pair;
    if (g_path.empty()) {
      pair = twin_forward(f, bp);
    } else {
      pair.f = f;
      pair.g = read_height(g_path);
      if (!(pair.f.domain == pair.g.domain) || pair.f.n() != pair.g.n())
        throw Error(ErrorCode::InvalidArgument, "--f and --g differ in grid or component count");
    }
    ctx.emit(to_json(verify_weierstrass_twin(pair, build_chart(f, bp))));
    return kOk;
  });

  // solve
  auto* solvec = app.add_subcommand("solve", "Dirichlet problems for the minimal / maximal systems")->require_subcommand(1);
  for (const char* kind : {"minimal", "maximal"}) {
    const bool minimal = std::string(kind) == "minimal";
    auto* c = solvec->add_subcommand(kind, minimal ? "Minimal graph with given boundary values"
                                                   : "Maximal graph with given boundary values");
    c->add_option("--in", in, "Boundary data GFIELD (interior ignored)")->required();
    add_out(c, true);
    c->add_option("--max-outer", solve.max_outer);
    c->add_option("--max-inner", solve.max_inner);
    c->add_option("--inner-tol", solve.inner_tol);
    c->add_option("--outer-tol", solve.outer_tol);
    c->add_option("--relaxation", solve.relaxation);
    c->add_option("--spacelike-margin", solve.spacelike_margin);
    set(c, [&, minimal] {
      solve.validate();
      const auto b = read_height(in);
      const auto r = minimal ? solve_minimal(b, solve) : solve_maximal(b, solve);
      write_height(out_path, r.solution);
      ctx.emit(to_json(r));
      return kOk;
    });
  }

  // verify-all
  auto* va = app.add_subcommand("verify-all", "Run the invariant suite on a catalog surface");
  va->add_option("--name", name, "Entry name")->required();
  va->add_option("--param", params, "Parameter k=v (repeatable)");
  va->add_option("--domain", domain, "x0,y0,x1,y1 (default: entry rectangle)");
  va->add_option("--grid", grid, "nx,ny (default 129,129)");
  set(va, [&] {
    const auto p = parse_params(params);
    make_entry(name, p);
    std::string rect = domain;
    if (rect.empty()) {
      const auto r = default_rectangle(name);
      rect = format_double(r[0]) + "," + format_double(r[1]) + "," + format_double(r[2]) + "," + format_double(r[3]);
    }
    const auto report = verify_all(name, p, parse_domain(rect, grid));
    ctx.emit(to_json(report));
    return report.pass ? kOk : kCheckFailed;
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "INVALID_ARGUMENT: " << e.what() << "\n";
    return kInvalid;
  }

  set_num_threads(threads);
  try {
    return action ? action() : kInvalid;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return is_validation_error(e.code()) ? kInvalid : kComputation;
  } catch (const std::exception& e) {
    err << "INTERNAL: " << e.what() << "\n";
    return kComputation;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace twinsurf
