#pragma once

#include <vector>

#include "tcdirac/types.hpp"

namespace tcdirac {

// Collapsed tensor-product Gauss rule on the reference triangle
// {(x, y): x, y >= 0, x + y <= 1}.  n_I points per direction, n_I^2 total.
// Exact for all monomials x^a y^b with a + b <= 2 n_I - 2; weights positive,
// points strictly interior, sum of weights = 1/2.
struct QuadratureRule {
  int n_I = 0;
  std::vector<Real> x, y, w;
  size_t size() const { return w.size(); }
};

QuadratureRule triangle_quadrature(int n_I);

// Gauss-Legendre nodes/weights on [0, 1].
void gauss_legendre_01(int n, std::vector<Real>& x, std::vector<Real>& w);

}  // namespace tcdirac
