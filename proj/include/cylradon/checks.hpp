#pragma once

// Property suites run by the command-line `check` subcommand and by the acceptance binary.
// Each item records a measured value, the limit it is held to, and the verdict.

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cylradon/chebyshev.hpp"
#include "cylradon/dual.hpp"
#include "cylradon/forward.hpp"
#include "cylradon/fourier.hpp"
#include "cylradon/inversion.hpp"
#include "cylradon/nullspace.hpp"
#include "cylradon/phantoms.hpp"
#include "cylradon/quadrature.hpp"

namespace cylradon {

struct CheckItem {
  std::string name;
  double value = 0;
  double limit = 0;
  bool pass = false;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckItem> items;

  [[nodiscard]] bool passed() const {
    return !items.empty() && std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.pass; });
  }
  [[nodiscard]] double max_value() const {
    double m = 0;
    for (const auto& c : items) m = std::max(m, c.value);
    return m;
  }
  void add(std::string name, double value, double limit, std::string note = {}) {
    items.push_back({std::move(name), value, limit, std::isfinite(value) && value <= limit, std::move(note)});
  }
  void fail(std::string name, std::string note) {
    items.push_back({std::move(name), NAN, 0.0, false, std::move(note)});
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"cormack", "bound", "nullspace", "support", "duality"};
  return names;
}

/// |integral - pi/2| for l = 0..8 on `pairs` random (z, r) with 0 < z < r <= 3.
inline SuiteReport check_cormack(unsigned seed = 1, int pairs = 20, double tol = 1e-6) {
  SuiteReport rep{"cormack", {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (unsigned l = 0; l <= 8; ++l)
    for (int k = 0; k < pairs; ++k) {
      const double r = 3.0 * (1.0 - U(rng));  // (0, 3]
      const double z = r * std::max(U(rng), 1e-300);
      const std::string name = "l=" + std::to_string(l) + " z=" + std::to_string(z) + " r=" + std::to_string(r);
      try {
        rep.add(name, cormack_check(l, z, r).residual, tol);
      } catch (const Error& e) {
        rep.fail(name, e.what());
      }
    }
  return rep;
}

/// Square-integrable cylinder phantoms.
inline std::vector<std::string> l2_phantoms() { return {"gauss0", "gauss1", "gauss2", "gauss3", "odd", "shell"}; }

/// ||Rf|| / ||f|| at q and at q.refined(), held to sqrt(2) (1 + 1e-3).
inline SuiteReport check_bound(const QuadratureSpec& q = {}) {
  SuiteReport rep{"bound", {}};
  const double limit = std::sqrt(2.0) * (1 + 1e-3);
  for (const auto& id : l2_phantoms()) {
    const auto f = *phantom_by_id(id).cylinder;
    for (const auto& [label, spec] : {std::pair{"", q}, std::pair{" refined", q.refined()}}) {
      const double ratio = norm_sph(radon_field(f, spec), spec) / norm_cyl(f, spec);
      rep.add(id + label, ratio, limit);
    }
  }
  return rep;
}

/// Forward residuals of every basis null generator for |n| <= N, plus generator counts.
inline SuiteReport check_nullspace(int N = 8, const QuadratureSpec& q = {}, double tol = 1e-6) {
  SuiteReport rep{"nullspace", {}};
  const auto nr = nullspace_report(N, q);
  for (const auto& g : nr.r_generators)
    rep.add("R n=" + std::to_string(g.n) + " t^" + std::to_string(g.exponent), g.residual, tol);
  for (const auto& g : nr.rstar_generators)
    rep.add("R* n=" + std::to_string(g.n) + " w^" + std::to_string(g.exponent), g.residual, tol);
  for (int n = -N; n <= N; ++n) {
    int r_count = 0, s_count = 0;
    for (const auto& g : nr.r_generators) r_count += g.n == n;
    for (const auto& g : nr.rstar_generators) s_count += g.n == n;
    const int want = std::abs(n) / 2 * (std::abs(n) >= 2);
    rep.add("count n=" + std::to_string(n), std::abs(r_count - want) + std::abs(s_count - want), 0.0);
  }
  return rep;
}

/// Locality of mode_invert on sampled sphere modes, and vanishing of the reconstruction
/// from a transform that is zero on the cap.
inline SuiteReport check_support(const QuadratureSpec& q = {}, double tol = 1e-6) {
  SuiteReport rep{"support", {}};
  for (const char* id : {"gauss0", "gauss1", "gauss2"}) {
    const auto f = *phantom_by_id(id).cylinder;
    const auto modes = analyze_sph(radon_field(f, q), 2, linspace(0.0, std::atan(3.0), q.n_rho), q);
    for (double t : {0.3, 1.0, 2.0}) {
      long outside = 0;
      int refused = 0;
      for (int n = -2; n <= 2; ++n) {
        ReadRecorder rec(std::atan(t));
        try {
          (void)mode_invert(rec.wrap(modes[n]), n, t, q);
        } catch (const SingularityError&) {
          ++refused;
        }
        outside += rec.outside.load();
      }
      rep.add(std::string("reads beyond cap ") + id + " t=" + std::to_string(t), static_cast<double>(outside), 0.0,
              refused ? std::to_string(refused) + " mode(s) refused as singular" : std::string{});
    }
  }
  const auto shell = radon_field(*phantom_by_id("shell").cylinder, q);
  const auto v = support_check(shell, 1.0, tol, q, 4);
  rep.add("zero cap |f| on t in (0, 1]", v.max_abs, tol);
  rep.add("zero cap reads beyond cap", static_cast<double>(v.outside_reads), 0.0);
  return rep;
}

/// Duality gaps for three pairs at q and q.refined(); the refined gap must not exceed the
/// coarse one by more than roundoff.
inline SuiteReport check_duality(const QuadratureSpec& q = {}, double tol = 1e-3) {
  SuiteReport rep{"duality", {}};
  const std::vector<std::pair<std::string, std::string>> pairs{
      {"gauss0", "const-sphere:1"}, {"gauss1", "sgauss1"}, {"gauss2", "sgauss2"}};
  for (const auto& [fid, gid] : pairs) {
    const auto f = *phantom_by_id(fid).cylinder;
    const auto g = *phantom_by_id(gid).sphere;
    const double coarse = duality_gap(f, g, q);
    const double fine = duality_gap(f, g, q.refined());
    rep.add(fid + "/" + gid, coarse, tol);
    rep.add(fid + "/" + gid + " refined", fine, tol);
    rep.add(fid + "/" + gid + " refined - coarse", fine - coarse, 1e-12);
  }
  return rep;
}

/// Quadrature used by the duality suite when none is given: small enough to run in seconds.
inline QuadratureSpec duality_quadrature() {
  QuadratureSpec q;
  q.n_angular = 32;
  q.n_tail = 16;
  return q;
}

/// Quadrature used by the bound suite when none is given.
inline QuadratureSpec bound_quadrature() {
  QuadratureSpec q;
  q.n_angular = 64;
  q.n_tail = 32;
  return q;
}

/// Runs one named suite; "all" runs every suite. Throws std::invalid_argument on unknown names.
inline std::vector<SuiteReport> run_suite(const std::string& name, unsigned seed = 1,
                                          const std::optional<QuadratureSpec>& q = std::nullopt) {
  std::vector<SuiteReport> out;
  auto want = [&](const char* s) { return name == "all" || name == s; };
  bool known = name == "all";
  for (const auto& s : suite_names()) known = known || name == s;
  if (!known) throw std::invalid_argument("unknown suite '" + name + "'");
  if (want("cormack")) out.push_back(check_cormack(seed));
  if (want("bound")) out.push_back(check_bound(q.value_or(bound_quadrature())));
  if (want("nullspace")) out.push_back(check_nullspace(8, q.value_or(QuadratureSpec{})));
  if (want("support")) out.push_back(check_support(q.value_or(QuadratureSpec{})));
  if (want("duality")) out.push_back(check_duality(q.value_or(duality_quadrature())));
  return out;
}

}  // namespace cylradon
