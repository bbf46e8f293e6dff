#pragma once

#include <cmath>

#include "tcdirac/geometry.hpp"
#include "tcdirac/types.hpp"

namespace tcdirac {

// Global factors G^k = G_1^k * G_2 of the two-component ansatz:
// G_1^k = u^{m_k} carries the angular-momentum dependence and
// G_2 = r1^(gamma_1 - 1) r2^(gamma_2 - 1) the singular behaviour at the
// nuclei, with m_k = jz + (-1)^k / 2.
struct GlobalFactorParams {
  Real jz = 0.5;
  Real gamma1 = 1, gamma2 = 1;

  int m_k(int k) const {
    return static_cast<int>(std::llround(jz + (k == 1 ? -0.5 : 0.5)));
  }
  static GlobalFactorParams from_system(const PhysicalSystem& sys) {
    return {sys.jz, sys.gamma(1), sys.gamma(2)};
  }
};

struct GlobalFactor {
  Real G;
  Real dG_ds, dG_dt;
};

// G and gradient at a strictly interior point.  On the axis (u = 0) with
// m_k > 0 the factor vanishes; zeros are returned for the gradient there.
GlobalFactor global_factor(int k, const PointKinematics& kin, const GlobalFactorParams& par);

// log G_2 = (gamma1-1) ln r1 + (gamma2-1) ln r2, with exact-gamma=1 terms
// skipped; shared by assembly.
Real log_g2(const PointKinematics& kin, const GlobalFactorParams& par);

}  // namespace tcdirac
