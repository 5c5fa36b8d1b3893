#include "io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace cylradon::cli {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string grid_csv(const char* header, const std::vector<double>& a, const std::vector<double>& b,
                     const std::vector<cplx>& values) {
  std::string out = header;
  out += '\n';
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const cplx v = values[i * b.size() + j];
      out += fmt(a[i]) + ',' + fmt(b[j]) + ',' + fmt(v.real()) + ',' + fmt(v.imag()) + '\n';
    }
  return out;
}

struct Grid {
  std::vector<double> a, b;
  std::vector<cplx> values;
};

double parse_number(const std::string& s, const std::filesystem::path& path, std::size_t line) {
  double v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || end != s.data() + s.size() || (ec != std::errc{} && ec != std::errc::result_out_of_range))
    throw ConfigError(path.string() + ":" + std::to_string(line) + ": not a number: '" + s + "'");
  return v;
}

Grid read_grid(const std::filesystem::path& path, const std::string& header) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != header)
    throw ConfigError(path.string() + ": expected header '" + header + "'");
  std::vector<std::array<double, 4>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::array<double, 4> r{};
    std::stringstream ss(line);
    std::string cell;
    int k = 0;
    while (std::getline(ss, cell, ',')) {
      if (k == 4) throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": too many columns");
      r[k++] = parse_number(cell, path, lineno);
    }
    if (k != 4) throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected 4 columns");
    rows.push_back(r);
  }
  Grid g;
  for (const auto& r : rows) {
    if (g.a.empty() || g.a.back() != r[0]) g.a.push_back(r[0]);
    if (g.a.size() == 1) g.b.push_back(r[1]);
  }
  if (g.a.empty() || rows.size() != g.a.size() * g.b.size())
    throw ConfigError(path.string() + ": rows do not form a full product grid");
  for (std::size_t i = 0; i < g.a.size(); ++i)
    for (std::size_t j = 0; j < g.b.size(); ++j) {
      const auto& r = rows[i * g.b.size() + j];
      if (r[0] != g.a[i] || r[1] != g.b[j]) throw ConfigError(path.string() + ": rows are not in grid order");
      g.values.emplace_back(r[2], r[3]);
    }
  return g;
}

}  // namespace

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw ConfigError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string sphere_csv(const SphereSamples& g) { return grid_csv("theta,rho,re,im", g.thetas, g.rhos, g.values); }

std::string cylinder_csv(const CylinderSamples& f) { return grid_csv("s,t,re,im", f.s, f.t, f.values); }

SphereSamples read_sphere_csv(const std::filesystem::path& path) {
  auto g = read_grid(path, "theta,rho,re,im");
  return {std::move(g.a), std::move(g.b), std::move(g.values)};
}

CylinderSamples read_cylinder_csv(const std::filesystem::path& path) {
  auto g = read_grid(path, "s,t,re,im");
  return {std::move(g.a), std::move(g.b), std::move(g.values)};
}

}  // namespace cylradon::cli
