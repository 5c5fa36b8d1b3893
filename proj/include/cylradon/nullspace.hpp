#pragma once

// Null spaces mode by mode.
//   R:  F_n(t) = sum_{m=1}^{floor(|n|/2)} a_m t^{|n| - 2m}   (Y+^{|n|} annihilates it)
//   R*: G_n^#(w) = sum_{k=0}^{floor(|n|/2) - 1} c_k w^{2k - |n|}   (Y-^{|n|} annihilates it)
// Both are empty for |n| < 2. The R generators are polynomials, so only the constant
// term (|n| = 2m) is bounded.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "cylradon/dual.hpp"
#include "cylradon/fourier.hpp"
#include "cylradon/fractional.hpp"
#include "cylradon/profile.hpp"
#include "cylradon/quadrature.hpp"

namespace cylradon {

inline int null_dimension(int n) { return std::abs(n) >= 2 ? std::abs(n) / 2 : 0; }

/// Exponent/coefficient form of an R null generator.
inline PowerSum<cplx> r_nullgen_terms(int n, const std::vector<cplx>& coeffs) {
  return nullgen_plus_terms(static_cast<unsigned>(std::abs(n)), coeffs);
}

inline ModeProfile r_nullgen(int n, const std::vector<cplx>& coeffs) { return r_nullgen_terms(n, coeffs).profile(); }

/// A nonzero R generator is bounded on t >= 0 iff its only nonzero term is the constant.
inline bool r_nullgen_bounded(const PowerSum<cplx>& terms) { return terms.is_zero() || terms.max_exponent() <= 0; }

struct NullGeneratorCheck {
  int n = 0;
  int basis_index = 0;   ///< which coefficient is 1
  int exponent = 0;      ///< t^exponent (R side) or w^exponent (R* side, of G^#)
  double residual = 0;   ///< max over the probe grid of |forward| / max(1, |generator|)
  bool bounded = false;  ///< R side only: bounded on t >= 0
};

struct NullspaceReport {
  int N = 0;
  std::vector<int> dimensions;  ///< index n + N
  std::vector<NullGeneratorCheck> r_generators;
  std::vector<NullGeneratorCheck> rstar_generators;
  double max_residual = 0;
};

/// Default probe points for annihilation checks.
inline std::vector<double> null_probe_grid() { return linspace(0.25, 4.0, 16); }

/// Builds every basis generator for |n| <= N on both sides and measures how well the
/// forward maps annihilate it.
inline NullspaceReport nullspace_report(int N, const QuadratureSpec& q = {},
                                        const std::vector<double>& probes = null_probe_grid()) {
  if (N < 0) throw std::invalid_argument("nullspace_report: N must be nonnegative");
  NullspaceReport rep;
  rep.N = N;
  rep.dimensions.assign(2 * N + 1, 0);
  for (int n = -N; n <= N; ++n) {
    const int dim = null_dimension(n);
    rep.dimensions[n + N] = dim;
    for (int b = 0; b < dim; ++b) {
      std::vector<cplx> c(dim, cplx{});
      c[b] = 1.0;

      const auto rt = r_nullgen_terms(n, c);
      const auto F = rt.profile();
      NullGeneratorCheck r{n, b, rt.max_exponent(), 0.0, r_nullgen_bounded(rt)};
      for (double x : probes)
        r.residual = std::max(r.residual, std::abs(mode_forward(F, n, x, q)) / std::max(1.0, std::abs(F(x))));
      rep.r_generators.push_back(r);

      const auto st = nullgen_minus_terms(static_cast<unsigned>(std::abs(n)), c);
      const auto Gs = st.profile();
      NullGeneratorCheck d{n, b, st.max_exponent(), 0.0, false};
      for (double t : probes)
        d.residual = std::max(d.residual, std::abs(dual_mode_forward_hash(Gs, n, t, q)) / std::max(1.0, std::abs(Gs(t))));
      rep.rstar_generators.push_back(d);

      rep.max_residual = std::max({rep.max_residual, r.residual, d.residual});
    }
  }
  return rep;
}

}  // namespace cylradon
