#include "tcdirac/geometry.hpp"

#include <cmath>

namespace tcdirac {

PhysicalSystem PhysicalSystem::make(Real Z1, Real Z2, Real R, Mode mode, Real jz, Real alpha) {
  if (!(Z1 >= 0) || !(Z2 >= 0) || !(Z1 + Z2 > 0))
    throw invalid_parameter_error("charges must satisfy Z1 >= 0, Z2 >= 0, Z1 + Z2 > 0");
  if (!(R > 0)) throw invalid_parameter_error("internuclear distance R must be positive");
  if (!(alpha > 0)) throw invalid_parameter_error("alpha must be positive");
  if (alpha * std::max(Z1, Z2) >= 1.0)
    throw invalid_parameter_error("alpha*max(Z1,Z2) must be < 1 (self-adjointness window)");
  const Real two_jz = 2 * jz;
  const long long tj = std::llround(two_jz);
  if (std::abs(two_jz - static_cast<Real>(tj)) > 1e-12 || tj % 2 == 0)
    throw invalid_parameter_error("jz must be a half-integer");
  // The angular factors u^{m_k} are integrable only for jz > 0; the jz < 0
  // states are degenerate partners with the same energies.
  if (jz < 0) throw invalid_parameter_error("jz must be positive (energies of -jz equal +jz)");
  PhysicalSystem sys;
  sys.Z1 = Z1;
  sys.Z2 = Z2;
  sys.R = R;
  sys.alpha = alpha;
  sys.jz = jz;
  sys.kappa_abs = static_cast<int>((tj + 1) / 2);
  sys.mode = mode;
  return sys;
}

Real PhysicalSystem::gamma(int center) const {
  const Real k = static_cast<Real>(kappa_abs);
  if (mode == Mode::nonrelativistic) return k;
  const Real az = alpha * (center == 1 ? Z1 : Z2);
  return std::sqrt(k * k - az * az);
}

PointKinematics point_kinematics(Real s, Real t, const PhysicalSystem& sys,
                                 const TransformSpec& spec) {
  const XiEval xe = eval_xi(spec, s);
  const EtaEval ee = eval_eta(spec, t);
  PointKinematics k;
  k.s = s;
  k.t = t;
  k.xi = xe.xi;
  k.xi_m1 = xe.xi_m1;
  k.dxi_ds = xe.dxi_ds;
  k.eta = ee.eta;
  k.one_m_eta = ee.one_m_eta;
  k.one_p_eta = ee.one_p_eta;
  k.deta_dt = ee.deta_dt;
  const Real xi_m_eta = k.xi_m1 + k.one_m_eta;  // all-positive sums, no cancellation
  const Real xi_p_eta = k.xi_m1 + k.one_p_eta;
  k.r1 = 0.5 * sys.R * xi_p_eta;
  k.r2 = 0.5 * sys.R * xi_m_eta;
  if (k.r1 == 0 || k.r2 == 0) throw singular_point_error("evaluation at a nucleus");
  k.xi2_m1 = k.xi_m1 * (k.xi + 1.0);
  k.one_m_eta2 = k.one_m_eta * k.one_p_eta;
  k.xi2_m_eta2 = xi_m_eta * xi_p_eta;
  k.u2 = k.xi2_m1 * k.one_m_eta2;
  k.u = std::sqrt(k.u2);
  k.V = -sys.Z1 / k.r1 - sys.Z2 / k.r2;
  k.V_weighted = -(2.0 / sys.R) * (sys.Z1 * xi_m_eta + sys.Z2 * xi_p_eta);
  return k;
}

}  // namespace tcdirac
