#include "tcdirac/shapes.hpp"

#include <cmath>

namespace tcdirac {

namespace {

constexpr int kMaxOrder = 12;

// P_a(lam) = prod_{r=0}^{a-1} (p*lam - r)/(a - r) and its lam-derivative,
// for a = 0..p, accumulated by the product rule.
void factor_polys(int p, Real lam, Real* P, Real* dP) {
  P[0] = 1;
  dP[0] = 0;
  for (int a = 1; a <= p; ++a) {
    const Real u = (p * lam - (a - 1)) / a;
    dP[a] = dP[a - 1] * u + P[a - 1] * (static_cast<Real>(p) / a);
    P[a] = P[a - 1] * u;
  }
}

}  // namespace

ShapeSet::ShapeSet(int p) : p_(p), nloc_((p + 1) * (p + 2) / 2) {
  if (p < 1 || p > kMaxOrder)
    throw invalid_parameter_error("shape order p must be in 1..12");
  ref_nodes_.reserve(nloc_);
  for (int j = 0; j <= p; ++j)
    for (int i = 0; i <= p - j; ++i)
      ref_nodes_.push_back({static_cast<Real>(i) / p, static_cast<Real>(j) / p});

  // Nodal residual check (Kronecker property).
  std::vector<Real> vals(nloc_), dx(nloc_), dy(nloc_);
  Real worst = 0;
  for (int a = 0; a < nloc_; ++a) {
    evaluate(ref_nodes_[a][0], ref_nodes_[a][1], vals.data(), dx.data(), dy.data());
    for (int b = 0; b < nloc_; ++b)
      worst = std::max(worst, std::abs(vals[b] - (a == b ? 1.0 : 0.0)));
  }
  if (worst > 1e-10)
    throw construction_error("nodal interpolation residual above 1e-10");
}

void ShapeSet::evaluate(Real x, Real y, Real* vals, Real* dx, Real* dy) const {
  Real P1[kMaxOrder + 1], dP1[kMaxOrder + 1];
  Real P2[kMaxOrder + 1], dP2[kMaxOrder + 1];
  Real P3[kMaxOrder + 1], dP3[kMaxOrder + 1];
  factor_polys(p_, 1.0 - x - y, P1, dP1);  // lambda_0
  factor_polys(p_, x, P2, dP2);            // lambda_1
  factor_polys(p_, y, P3, dP3);            // lambda_2
  int idx = 0;
  for (int j = 0; j <= p_; ++j) {
    for (int i = 0; i <= p_ - j; ++i, ++idx) {
      const int k = p_ - i - j;
      vals[idx] = P2[i] * P3[j] * P1[k];
      dx[idx] = dP2[i] * P3[j] * P1[k] - P2[i] * P3[j] * dP1[k];
      dy[idx] = P2[i] * dP3[j] * P1[k] - P2[i] * P3[j] * dP1[k];
    }
  }
}

ShapeSet reference_shapes(int p) { return ShapeSet(p); }

}  // namespace tcdirac
