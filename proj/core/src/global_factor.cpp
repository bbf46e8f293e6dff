#include "tcdirac/global_factor.hpp"

#include <cmath>

namespace tcdirac {

Real log_g2(const PointKinematics& kin, const GlobalFactorParams& par) {
  Real lg = 0;
  if (par.gamma1 != 1.0) lg += (par.gamma1 - 1.0) * std::log(kin.r1);
  if (par.gamma2 != 1.0) lg += (par.gamma2 - 1.0) * std::log(kin.r2);
  return lg;
}

GlobalFactor global_factor(int k, const PointKinematics& kin, const GlobalFactorParams& par) {
  const int mk = par.m_k(k);
  const Real g2 = std::exp(log_g2(kin, par));
  if (kin.u == 0) {
    if (mk > 0) return {0, 0, 0};
    if (mk < 0) throw singular_point_error("u^{m_k} with m_k < 0 on the axis");
  }
  Real um = 1;
  for (int i = 0; i < std::abs(mk); ++i) um *= kin.u;
  if (mk < 0) um = 1 / um;
  const Real G = um * g2;

  // logarithmic derivatives: d ln G = m_k d ln u + sum (gamma_l - 1) d ln r_l
  const Real half_r = 0.5; // d r / d xi etc. carry a factor R/2
  const Real R = kin.r1 + kin.r2 > 0 ? (kin.r1 + kin.r2) / kin.xi : 0;  // r1 + r2 = xi R
  const Real dr_fac = half_r * R;
  Real dlg_dxi = 0, dlg_deta = 0;
  if (par.gamma1 != 1.0) {
    dlg_dxi += (par.gamma1 - 1.0) / kin.r1 * dr_fac;
    dlg_deta += (par.gamma1 - 1.0) / kin.r1 * dr_fac;
  }
  if (par.gamma2 != 1.0) {
    dlg_dxi += (par.gamma2 - 1.0) / kin.r2 * dr_fac;
    dlg_deta -= (par.gamma2 - 1.0) / kin.r2 * dr_fac;
  }
  Real dlnu_dxi = 0, dlnu_deta = 0;
  if (mk != 0 && kin.u > 0) {
    dlnu_dxi = kin.xi * kin.one_m_eta2 / kin.u2;
    dlnu_deta = -kin.xi2_m1 * kin.eta / kin.u2;
  }
  const Real dG_dxi = G * (mk * dlnu_dxi + dlg_dxi);
  const Real dG_deta = G * (mk * dlnu_deta + dlg_deta);
  return {G, dG_dxi * kin.dxi_ds, dG_deta * kin.deta_dt};
}

}  // namespace tcdirac
