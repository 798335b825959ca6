#include "twinsurf/gfield.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace twinsurf {

namespace {

void put(std::ostream& os, double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  os.write(buf, len);
}

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::GfieldParse, what); }

double parse_double(const std::string& tok) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') parse_error("bad number '" + tok + "'");
  return v;
}

int parse_int(const std::string& tok) {
  int v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) parse_error("bad integer '" + tok + "'");
  return v;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ls(line);
  std::vector<std::string> out;
  for (std::string t; ls >> t;) out.push_back(t);
  return out;
}

bool next_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

void write_gfield(std::ostream& os, const GridDomain& d, const std::vector<ScalarField>& components) {
  d.validate();
  for (const auto& c : components) {
    if (!(c.domain == d) || c.values.size() != d.size())
      throw Error(ErrorCode::InvalidArgument, "GFIELD components must share the grid");
    for (double v : c.values)
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "GFIELD values must be finite");
  }
  os << "GFIELD 1\n" << d.nx << ' ' << d.ny << ' ' << components.size() << '\n';
  put(os, d.x0);
  os << ' ';
  put(os, d.y0);
  os << ' ';
  put(os, d.dx);
  os << ' ';
  put(os, d.dy);
  os << '\n';
  for (const auto& c : components) {
    for (int j = 0; j < d.ny; ++j) {
      for (int i = 0; i < d.nx; ++i) {
        if (i) os << ' ';
        put(os, c(i, j));
      }
      os << '\n';
    }
  }
}

void write_gfield(const std::string& path, const GridDomain& domain, const std::vector<ScalarField>& components) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  write_gfield(os, domain, components);
  if (!os) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

GField read_gfield(std::istream& is) {
  std::string line;
  if (!next_line(is, line) || tokens_of(line) != std::vector<std::string>{"GFIELD", "1"})
    parse_error("missing 'GFIELD 1' header");

  if (!next_line(is, line)) parse_error("missing size line");
  auto t = tokens_of(line);
  if (t.size() != 3) parse_error("size line must be 'nx ny ncomp'");
  const int nx = parse_int(t[0]), ny = parse_int(t[1]), ncomp = parse_int(t[2]);
  if (ncomp < 1) parse_error("ncomp must be positive");

  if (!next_line(is, line)) parse_error("missing geometry line");
  t = tokens_of(line);
  if (t.size() != 4) parse_error("geometry line must be 'x0 y0 dx dy'");
  GField g;
  g.domain = GridDomain{parse_double(t[0]), parse_double(t[1]), parse_double(t[2]), parse_double(t[3]), nx, ny};
  g.domain.validate();

  for (int c = 0; c < ncomp; ++c) {
    ScalarField f(g.domain);
    for (int j = 0; j < ny; ++j) {
      if (!next_line(is, line)) parse_error("truncated data in component " + std::to_string(c));
      t = tokens_of(line);
      if (static_cast<int>(t.size()) != nx)
        parse_error("row " + std::to_string(j) + " of component " + std::to_string(c) + " has " +
                    std::to_string(t.size()) + " values, expected " + std::to_string(nx));
      for (int i = 0; i < nx; ++i) {
        const double v = parse_double(t[i]);
        if (!std::isfinite(v)) parse_error("non-finite value");
        f(i, j) = v;
      }
    }
    g.components.push_back(std::move(f));
  }
  if (next_line(is, line)) parse_error("trailing data after last component");
  return g;
}

GField read_gfield(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return read_gfield(is);
}

}  // namespace twinsurf
