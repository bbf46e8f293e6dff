#pragma once

#include <utility>
#include <vector>

#include "tcdirac/types.hpp"

namespace tcdirac {

// Singular coordinate transformation xi(s), eta(t) of order nu.
//
// Both branches have the form Y(x) = 1 + sum_i d_i S^(nu+2(i-1))(x/2) with
// S = sinh (xi branch, s in [0, inf)) or S = sin (eta branch, t in [0, pi]).
// The coefficients follow from dY/dx = +D_n sinh^(2n+1)(x) respectively
// dY/dx = -K_n sin^(2n+1)(t), n = nu/2 - 1.  D_n = (2n+1)!/(n! 2^n); the eta
// prefactor K_n = D_n/(2^n n!) is fixed by eta(pi) = -1.  All coefficients
// are exact integers.

enum class Branch { sinh_xi, sin_eta };

// Derivative prefactor D_n = (2n+1)!/(n! 2^n).
long long derivative_prefactor(int n);

// Exact integer coefficients d_1..d_{nu/2} for one branch.
// Throws invalid_parameter_error unless nu is even and in [2, 10].
std::vector<long long> transform_coefficients(int nu, Branch branch);

struct TransformSpec {
  int nu = 0;
  std::vector<long long> d_sinh, d_sin;
  Real dpre_sinh = 0;  // D_n
  Real dpre_sin = 0;   // K_n
  Real D_max = 0;      // perpendicular domain radius (bohr); 0 if sized directly
  Real xi_max = 1;
  Real s_max = 0;
};

// Pointwise evaluations.  The *_m1 / one_m_* / one_p_* members are computed
// without cancellation so that the corner regions (where xi-1 ~ s^nu and
// 1-eta ~ t^nu underflow the representable neighbourhood of 1) keep full
// relative accuracy.
struct XiEval {
  Real xi;
  Real xi_m1;    // xi - 1 >= 0
  Real dxi_ds;   // > 0 for s > 0
};

struct EtaEval {
  Real eta;
  Real one_m_eta;  // 1 - eta in [0, 2]
  Real one_p_eta;  // 1 + eta in [0, 2]
  Real deta_dt;    // <= 0
};

XiEval eval_xi(const TransformSpec& spec, Real s);
EtaEval eval_eta(const TransformSpec& spec, Real t);

// Spec-facing map: (Y, dY/dx) for the given branch.
std::pair<Real, Real> map_coordinate(Real x, const TransformSpec& spec, Branch branch);

// Domain sizing: xi_max solves D_max = (R/2)(xi^2-1)/xi, s_max solves
// xi(s_max) = xi_max by bisection to 1e-13 relative.
std::pair<Real, Real> domain_from_dmax(Real D_max, Real R, int nu);

// Full construction: coefficients plus domain sizing.
TransformSpec make_transform(int nu, Real D_max, Real R);

}  // namespace tcdirac
