#include "tcdirac/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace tcdirac {

void gauss_legendre_01(int n, std::vector<Real>& x, std::vector<Real>& w) {
  x.resize(n);
  w.resize(n);
  constexpr Real pi = std::numbers::pi_v<Real>;
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n over [-1, 1]
    Real z = std::cos(pi * (i + 0.75) / (n + 0.5));
    Real pp = 0;
    for (int it = 0; it < 100; ++it) {
      Real p0 = 1, p1 = 0;
      for (int j = 0; j < n; ++j) {
        const Real p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
      }
      pp = n * (z * p0 - p1) / (z * z - 1);
      const Real dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // refine weight with final z
    Real p0 = 1, p1 = 0;
    for (int j = 0; j < n; ++j) {
      const Real p2 = p1;
      p1 = p0;
      p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
    }
    pp = n * (z * p0 - p1) / (z * z - 1);
    x[n - 1 - i] = 0.5 * (1 + z);
    w[n - 1 - i] = 1.0 / ((1 - z * z) * pp * pp);
  }
}

QuadratureRule triangle_quadrature(int n_I) {
  if (n_I < 2 || n_I > 40)
    throw invalid_parameter_error("triangle quadrature requires 2 <= n_I <= 40");
  std::vector<Real> a, wa;
  gauss_legendre_01(n_I, a, wa);
  QuadratureRule rule;
  rule.n_I = n_I;
  rule.x.reserve(static_cast<size_t>(n_I) * n_I);
  rule.y.reserve(static_cast<size_t>(n_I) * n_I);
  rule.w.reserve(static_cast<size_t>(n_I) * n_I);
  // Duffy collapse of the unit square: (x, y) = (a(1-b), b), jacobian 1-b.
  for (int i = 0; i < n_I; ++i) {
    for (int j = 0; j < n_I; ++j) {
      const Real b = a[j];
      rule.x.push_back(a[i] * (1 - b));
      rule.y.push_back(b);
      rule.w.push_back(wa[i] * wa[j] * (1 - b));
    }
  }
  return rule;
}

}  // namespace tcdirac
