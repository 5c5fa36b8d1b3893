#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>

#include <json.hpp>

#include "cylradon/checks.hpp"
#include "cylradon/dual.hpp"
#include "cylradon/errors.hpp"
#include "cylradon/forward.hpp"
#include "cylradon/fourier.hpp"
#include "cylradon/inversion.hpp"
#include "cylradon/parallel.hpp"
#include "cylradon/phantoms.hpp"
#include "cylradon/version.hpp"
#include "io.hpp"

namespace cylradon::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

Range read_range(const json& j, const char* key) {
  static const std::set<std::string> allowed{"min", "max", "count"};
  if (!j.is_object()) throw ConfigError(std::string("'") + key + "' must be an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ConfigError(std::string("unknown key '") + k + "' in '" + key + "'");
  Range r;
  r.min = j.at("min").get<double>();
  r.max = j.at("max").get<double>();
  r.count = j.at("count").get<int>();
  if (!(r.count >= 1) || !(r.min <= r.max) || !std::isfinite(r.min) || !std::isfinite(r.max))
    throw ConfigError(std::string("'") + key + "' needs finite min <= max and count >= 1");
  return r;
}

int read_count(const json& j, const char* key) {
  if (!j.is_object() || j.size() != 1 || !j.contains("count"))
    throw ConfigError(std::string("'") + key + "' takes only {\"count\": n}");
  const int n = j.at("count").get<int>();
  if (n < 1) throw ConfigError(std::string("'") + key + ".count' must be positive");
  return n;
}

void read_quadrature(const json& j, QuadratureSpec& q) {
  if (!j.is_object()) throw ConfigError("'quadrature' must be an object");
  for (const auto& [k, v] : j.items()) {
    if (k == "n_angular") q.n_angular = v.get<int>();
    else if (k == "n_tail") q.n_tail = v.get<int>();
    else if (k == "tail_panels") q.tail_panels = v.get<int>();
    else if (k == "r_max") q.r_max = v.get<double>();
    else if (k == "tail_tol") q.tail_tol = v.get<double>();
    else if (k == "fd_step") q.fd_step = v.get<double>();
    else if (k == "n_rho") q.n_rho = v.get<int>();
    else if (k == "max_amplification") q.max_amplification = v.get<double>();
    else if (k == "singular_tol") q.singular_tol = v.get<double>();
    else if (k == "singular_abs") q.singular_abs = v.get<double>();
    else throw ConfigError("unknown key '" + k + "' in 'quadrature'");
  }
}

json quadrature_json(const QuadratureSpec& q) {
  return {{"n_angular", q.n_angular}, {"n_tail", q.n_tail},   {"tail_panels", q.tail_panels},
          {"r_max", q.r_max},         {"tail_tol", q.tail_tol}, {"fd_step", q.fd_step},
          {"n_rho", q.n_rho},         {"max_amplification", q.max_amplification},
          {"singular_tol", q.singular_tol}, {"singular_abs", q.singular_abs}};
}

json range_json(const std::vector<double>& v) {
  return {{"min", v.front()}, {"max", v.back()}, {"count", v.size()}};
}

json sidecar(const Config& c) {
  json j;
  j["command"] = c.command;
  j["version"] = version;
  j["modes"] = c.modes;
  j["seed"] = c.seed;
  j["quadrature"] = quadrature_json(c.quad);
  if (!c.phantom.empty()) j["phantom"] = c.phantom;
  if (!c.input.empty()) j["input"] = c.input;
  if (!c.reference.empty()) j["reference"] = c.reference;
  return j;
}

std::vector<double> points(const Range& r) { return linspace(r.min, r.max, r.count); }

void write_outputs(const Config& c, const std::string& stem, const std::string& csv, const json& meta) {
  fs::create_directories(c.out_dir);
  write_atomic(c.out_dir / (stem + ".csv"), csv);
  write_atomic(c.out_dir / (stem + ".json"), meta.dump(2) + "\n");
}

Phantom require_phantom(const std::string& id) {
  try {
    return phantom_by_id(id);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

/// Relative discrete L2 and max errors of `got` against `ref` on the sample grid.
template <class Ref>
json compare(const std::vector<double>& a, const std::vector<double>& b, const std::vector<cplx>& got, Ref ref) {
  double num = 0, den = 0, worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const cplx want = ref(a[i], b[j]);
      const double e = std::abs(got[i * b.size() + j] - want);
      num += e * e;
      den += std::norm(want);
      worst = std::max(worst, e);
    }
  json m;
  m["max_abs_error"] = worst;
  m["rel_l2_error"] = den > 0 ? std::sqrt(num / den) : std::sqrt(num);
  return m;
}

CylinderField sampled_cylinder_field(const CylinderSamples& samples, int N) {
  const auto ms = analyze_cyl(samples, N, Parity::even);
  CylinderField f;
  f.eval = [ms](double s, double t) { return synthesize(ms, s, t); };
  f.parity = Parity::even;
  return f;
}

SphereField sampled_sphere_field(const SphereSamples& samples, int N) {
  const auto ms = analyze_sph(samples, N);
  return {[ms](double th, double rho) { return synthesize(ms, th, rho); }, Parity::even};
}

int cmd_forward(const Config& c) {
  CylinderField f;
  json meta = sidecar(c);
  Phantom p;
  if (!c.phantom.empty()) {
    p = require_phantom(c.phantom);
    if (!p.cylinder) throw ConfigError("phantom '" + c.phantom + "' is not a cylinder field");
    f = *p.cylinder;
  } else {
    const auto samples = read_cylinder_csv(c.input);
    const double reach = std::tan(c.rho ? c.rho->max : std::atan(2.5));
    if (samples.t.front() != 0.0 || samples.t.back() < reach)
      throw ConfigError("input t grid must start at 0 and reach tan(rho max)");
    f = sampled_cylinder_field(samples, c.modes);
  }
  const auto thetas = uniform_angles(c.theta_count > 0 ? c.theta_count : 32);
  const auto rhos = points(c.rho.value_or(Range{0.0, std::atan(2.5), 64}));
  const auto g = radon_grid(f, thetas, rhos, c.quad);
  meta["grid"] = {{"theta_count", thetas.size()}, {"rho", range_json(rhos)}};
  if (p.radon) {
    double worst = 0;
    for (std::size_t i = 0; i < thetas.size(); ++i)
      for (std::size_t j = 0; j < rhos.size(); ++j)
        worst = std::max(worst, std::abs(g.at(i, j) - p.radon(thetas[i], rhos[j])));
    meta["closed_form_max_error"] = worst;
  }
  write_outputs(c, "forward", sphere_csv(g), meta);
  std::printf("forward: %zu x %zu samples written to %s\n", thetas.size(), rhos.size(),
              (c.out_dir / "forward.csv").string().c_str());
  return exit_ok;
}

int cmd_invert(const Config& c) {
  const auto t_grid = points(c.t.value_or(Range{0.2, 2.0, 10}));
  if (!(t_grid.front() > 0)) throw ConfigError("invert needs t min > 0");
  json meta = sidecar(c);
  Reconstruction rec;
  if (!c.phantom.empty()) {
    const auto p = require_phantom(c.phantom);
    if (!p.cylinder) throw ConfigError("phantom '" + c.phantom + "' is not a cylinder field");
    rec = reconstruct(radon_field(*p.cylinder, c.quad), c.modes, t_grid, c.quad, c.s_count);
  } else {
    const auto samples = read_sphere_csv(c.input);
    if (samples.rhos.front() != 0.0 || samples.rhos.back() < std::atan(t_grid.back()))
      throw ConfigError("input rho grid must start at 0 and reach arctan(t max)");
    ModeSet ms;
    try {
      ms = analyze_sph(samples, c.modes);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("input: ") + e.what());
    }
    rec = reconstruct_modes(std::move(ms), t_grid, c.quad, c.s_count);
  }
  meta["grid"] = {{"s_count", rec.field.s.size()}, {"t", range_json(t_grid)}};
  meta["inverted_modes"] = rec.inverted_modes;
  if (!c.reference.empty()) {
    const auto ref = require_phantom(c.reference);
    if (!ref.cylinder) throw ConfigError("reference '" + c.reference + "' is not a cylinder field");
    const auto even = even_part(*ref.cylinder);
    meta["metrics"] = compare(rec.field.s, rec.field.t, rec.field.values, [&](double s, double t) { return even(s, t); });
  }
  write_outputs(c, "invert", cylinder_csv(rec.field), meta);
  std::printf("invert: %zu modes inverted", rec.inverted_modes.size());
  if (meta.contains("metrics")) std::printf(", rel L2 error %.3e", meta["metrics"]["rel_l2_error"].get<double>());
  std::printf("\n");
  return exit_ok;
}

int cmd_dual(const Config& c) {
  SphereField g;
  json meta = sidecar(c);
  Phantom p;
  if (!c.phantom.empty()) {
    p = require_phantom(c.phantom);
    if (!p.sphere) throw ConfigError("phantom '" + c.phantom + "' is not a sphere field");
    g = *p.sphere;
  } else {
    const auto samples = read_sphere_csv(c.input);
    if (samples.rhos.front() != 0.0 || samples.rhos.back() < half_pi)
      throw ConfigError("input rho grid must cover [0, pi/2]");
    try {
      g = sampled_sphere_field(samples, c.modes);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("input: ") + e.what());
    }
  }
  CylinderSamples out;
  out.s = uniform_angles(c.s_count > 0 ? c.s_count : 32);
  out.t = points(c.t.value_or(Range{0.0, 3.0, 31}));
  out.values.resize(out.s.size() * out.t.size());
  parallel_for(out.values.size(), [&](std::size_t k) {
    const std::size_t i = k / out.t.size(), j = k % out.t.size();
    out.values[k] = dual_point(g, CylPoint(out.s[i], out.t[j]), c.quad);
  });
  meta["grid"] = {{"s_count", out.s.size()}, {"t", range_json(out.t)}};
  if (p.dual) meta["closed_form"] = compare(out.s, out.t, out.values, p.dual);
  write_outputs(c, "dual", cylinder_csv(out), meta);
  std::printf("dual: %zu x %zu samples written to %s\n", out.s.size(), out.t.size(),
              (c.out_dir / "dual.csv").string().c_str());
  return exit_ok;
}

/// Sphere modes of g sampled on [0, pi/2], then H_n sampled on [0, t_far] with a t^-2 tail.
ModeSet dual_modes_from_phantom(const SphereField& g, int N, double t_far, const QuadratureSpec& q) {
  const auto G = analyze_sph(g, N, linspace(0.0, half_pi, 4 * q.n_rho + 1), q);
  const auto t_grid = linspace(0.0, t_far, 1601);
  ModeSet H(Side::dual, N);
  std::vector<std::vector<cplx>> values(2 * N + 1, std::vector<cplx>(t_grid.size()));
  parallel_for(values.size() * t_grid.size(), [&](std::size_t k) {
    const int n = static_cast<int>(k / t_grid.size()) - N;
    const std::size_t j = k % t_grid.size();
    values[n + N][j] = dual_mode_forward(G[n], n, t_grid[j], q);
  });
  for (int n = -N; n <= N; ++n)
    H[n] = ModeProfile::from_samples(t_grid, values[n + N], Tail::power(2), sign_pow(n));
  return H;
}

int cmd_dualinvert(const Config& c) {
  const auto t_grid = points(c.t.value_or(Range{0.2, 3.0, 15}));
  if (!(t_grid.front() > 0)) throw ConfigError("dualinvert needs t min > 0");
  json meta = sidecar(c);
  ModeSet H;
  if (!c.phantom.empty()) {
    const auto p = require_phantom(c.phantom);
    if (!p.sphere) throw ConfigError("phantom '" + c.phantom + "' is not a sphere field");
    H = dual_modes_from_phantom(*p.sphere, c.modes, std::max(40.0, 10 * t_grid.back()), c.quad);
  } else {
    const auto samples = read_cylinder_csv(c.input);
    if (samples.t.front() != 0.0 || samples.t.back() <= t_grid.back())
      throw ConfigError("input t grid must start at 0 and extend past t max");
    try {
      H = analyze_cyl(samples, c.modes, Parity::even, Tail::power(2), Side::dual);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("input: ") + e.what());
    }
  }
  const int N = c.modes;
  SphereSamples out;
  out.thetas = uniform_angles(c.theta_count > 0 ? c.theta_count : std::max(16, 4 * N));
  for (double t : t_grid) out.rhos.push_back(std::atan(t));
  std::vector<std::vector<cplx>> G(2 * N + 1, std::vector<cplx>(t_grid.size()));
  parallel_for(G.size() * t_grid.size(), [&](std::size_t k) {
    const int n = static_cast<int>(k / t_grid.size()) - N;
    const std::size_t j = k % t_grid.size();
    G[n + N][j] = dual_mode_invert(H[n], n, t_grid[j], c.quad);
  });
  out.values.assign(out.thetas.size() * out.rhos.size(), cplx{});
  for (std::size_t i = 0; i < out.thetas.size(); ++i)
    for (std::size_t j = 0; j < out.rhos.size(); ++j) {
      cplx sum{};
      for (int n = -N; n <= N; ++n) sum += G[n + N][j] * std::polar(1.0, n * out.thetas[i]);
      out.at(i, j) = sum;
    }
  meta["grid"] = {{"theta_count", out.thetas.size()}, {"t", range_json(t_grid)}};
  if (!c.reference.empty()) {
    const auto ref = require_phantom(c.reference);
    if (!ref.sphere) throw ConfigError("reference '" + c.reference + "' is not a sphere field");
    meta["metrics"] = compare(out.thetas, out.rhos, out.values, *ref.sphere);
  }
  write_outputs(c, "dualinvert", sphere_csv(out), meta);
  std::printf("dualinvert: %zu x %zu samples", out.thetas.size(), out.rhos.size());
  if (meta.contains("metrics")) std::printf(", max error %.3e", meta["metrics"]["max_abs_error"].get<double>());
  std::printf("\n");
  return exit_ok;
}

int cmd_check(const Config& c) {
  if (!c.suite || c.suite->empty()) throw ConfigError("check needs a suite name: cormack, bound, nullspace, support, duality or all");
  std::vector<SuiteReport> reports;
  try {
    reports = run_suite(*c.suite, c.seed, c.quad_given ? std::optional<QuadratureSpec>(c.quad) : std::nullopt);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  json j = sidecar(c);
  j["suite"] = *c.suite;
  bool all = true;
  for (const auto& r : reports) {
    json items = json::array();
    for (const auto& it : r.items) {
      json x{{"name", it.name}, {"value", it.value}, {"limit", it.limit}, {"pass", it.pass}};
      if (!it.note.empty()) x["note"] = it.note;
      items.push_back(x);
    }
    j["suites"].push_back({{"suite", r.suite}, {"passed", r.passed()}, {"max_value", r.max_value()}, {"items", items}});
    std::printf("%-10s %s  max %.3e over %zu checks\n", r.suite.c_str(), r.passed() ? "PASS" : "FAIL", r.max_value(),
                r.items.size());
    all = all && r.passed();
  }
  j["passed"] = all;
  fs::create_directories(c.out_dir);
  write_atomic(c.out_dir / "check.json", j.dump(2) + "\n");
  return all ? exit_ok : exit_check_failed;
}

}  // namespace

Config load_config(const std::string& command, const Overrides& o) {
  Config c;
  c.command = command;
  if (o.config) {
    std::ifstream in(*o.config);
    if (!in) throw ConfigError("cannot open config " + *o.config);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError("config " + *o.config + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    try {
      for (const auto& [k, v] : j.items()) {
        if (k == "phantom") c.phantom = v.get<std::string>();
        else if (k == "input") c.input = v.get<std::string>();
        else if (k == "reference") c.reference = v.get<std::string>();
        else if (k == "modes") c.modes = v.get<int>();
        else if (k == "seed") c.seed = v.get<unsigned>();
        else if (k == "suite") c.suite = v.get<std::string>();
        else if (k == "out") c.out_dir = v.get<std::string>();
        else if (k == "quadrature") {
          read_quadrature(v, c.quad);
          c.quad_given = true;
        } else if (k == "theta") c.theta_count = read_count(v, "theta");
        else if (k == "s") c.s_count = read_count(v, "s");
        else if (k == "rho") c.rho = read_range(v, "rho");
        else if (k == "t") c.t = read_range(v, "t");
        else throw ConfigError("unknown config key '" + k + "'");
      }
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  if (o.out) c.out_dir = *o.out;
  if (o.modes) c.modes = *o.modes;
  if (o.seed) c.seed = *o.seed;
  if (o.suite) c.suite = *o.suite;
  if (o.quad_nodes) {
    c.quad.n_angular = *o.quad_nodes;
    c.quad_given = true;
  }
  if (c.modes < 0) throw ConfigError("modes must be nonnegative");
  try {
    c.quad.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (command != "check") {
    if (c.phantom.empty() == c.input.empty()) throw ConfigError(command + " needs exactly one of 'phantom' or 'input'");
    if (c.reference.empty() && !c.phantom.empty() && (command == "invert" || command == "dualinvert"))
      c.reference = c.phantom;
  }
  return c;
}

int run(const std::string& command, const Overrides& o) {
  try {
    const Config c = load_config(command, o);
    if (command == "forward") return cmd_forward(c);
    if (command == "invert") return cmd_invert(c);
    if (command == "dual") return cmd_dual(c);
    if (command == "dualinvert") return cmd_dualinvert(c);
    if (command == "check") return cmd_check(c);
    std::fprintf(stderr, "error: unknown command '%s'\n", command.c_str());
    return exit_usage;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_usage;
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_usage;
  } catch (const Error& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return exit_numeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return exit_numeric;
  }
}

}  // namespace cylradon::cli
