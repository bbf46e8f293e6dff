#pragma once

#include "tcdirac/transform.hpp"
#include "tcdirac/types.hpp"

namespace tcdirac {

enum class Mode { relativistic, nonrelativistic };

// Two nuclei of charge Z1, Z2 at distance R on the z axis, one electron.
// Atomic units throughout (hbar = m_e = e = 1, c = 1/alpha).
struct PhysicalSystem {
  Real Z1 = 0, Z2 = 0;
  Real R = 0;
  Real alpha = kAlphaCodata2018;
  Real jz = 0.5;       // z-projection of total angular momentum, positive half-integer
  int kappa_abs = 1;   // |kappa| = |jz| + 1/2
  Mode mode = Mode::relativistic;

  static PhysicalSystem make(Real Z1, Real Z2, Real R, Mode mode,
                             Real jz = 0.5, Real alpha = kAlphaCodata2018);

  Real c() const { return 1.0 / alpha; }
  // Singular exponent gamma_{l,kappa} = sqrt(kappa^2 - (alpha Z_l)^2);
  // the nonrelativistic limit replaces it by |kappa|.
  Real gamma(int center) const;
  PhysicalSystem with_mode(Mode m) const {
    PhysicalSystem out = *this;
    out.mode = m;
    return out;
  }
};

// All pointwise geometric quantities entering the weak form, evaluated from
// the cancellation-free primitives xi-1 and 1-+eta.
struct PointKinematics {
  Real s, t;
  Real xi, eta;
  Real xi_m1, one_m_eta, one_p_eta;
  Real dxi_ds, deta_dt;
  Real r1, r2;          // distances to the nuclei
  Real u2, u;           // u^2 = (xi^2-1)(1-eta^2)
  Real xi2_m1;          // xi^2 - 1
  Real one_m_eta2;      // 1 - eta^2
  Real xi2_m_eta2;      // xi^2 - eta^2
  Real V;               // -Z1/r1 - Z2/r2
  Real V_weighted;      // V * (xi^2 - eta^2), analytically cancelled (finite)
};

// Throws singular_point_error when (s,t) lands exactly on a nucleus.
PointKinematics point_kinematics(Real s, Real t, const PhysicalSystem& sys,
                                 const TransformSpec& spec);

}  // namespace tcdirac
