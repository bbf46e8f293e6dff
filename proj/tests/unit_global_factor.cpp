#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tcdirac/global_factor.hpp"

using namespace tcdirac;

namespace {
constexpr Real kPi = std::numbers::pi_v<Real>;
}

TEST_CASE("m_k from jz") {
  GlobalFactorParams par{0.5, 1, 1};
  CHECK(par.m_k(1) == 0);
  CHECK(par.m_k(2) == 1);
  GlobalFactorParams par32{1.5, 1, 1};
  CHECK(par32.m_k(1) == 1);
  CHECK(par32.m_k(2) == 2);
}

TEST_CASE("nonrelativistic limit: G2 == 1") {
  const PhysicalSystem sys = PhysicalSystem::make(90, 90, 2.0 / 90, Mode::nonrelativistic);
  const TransformSpec spec = make_transform(4, 0.35, sys.R);
  const GlobalFactorParams par = GlobalFactorParams::from_system(sys);
  CHECK(par.gamma1 == 1.0);
  const PointKinematics kin = point_kinematics(0.4, 1.0, sys, spec);
  // k = 1 has m_1 = 0, so the whole factor degenerates to G2 = 1
  const GlobalFactor g = global_factor(1, kin, par);
  CHECK(g.G == 1.0);
  CHECK(g.dG_ds == 0.0);
  CHECK(g.dG_dt == 0.0);
}

TEST_CASE("alpha -> 0 limit within relativistic mode") {
  const PhysicalSystem sys =
      PhysicalSystem::make(1, 1, 2.0, Mode::relativistic, 0.5, 1e-20);
  CHECK(sys.gamma(1) == 1.0);
}

TEST_CASE("gradients match finite differences away from nuclei") {
  const PhysicalSystem sys = PhysicalSystem::make(90, 90, 2.0 / 90, Mode::relativistic);
  const TransformSpec spec = make_transform(10, 0.35, sys.R);
  const GlobalFactorParams par = GlobalFactorParams::from_system(sys);
  for (int k : {1, 2}) {
    for (Real s : {0.3 * spec.s_max, 0.7 * spec.s_max}) {
      for (Real t : {0.9, 2.0}) {
        const PointKinematics kin = point_kinematics(s, t, sys, spec);
        const GlobalFactor g = global_factor(k, kin, par);
        const Real h = 1e-6;
        const Real gps = global_factor(k, point_kinematics(s + h, t, sys, spec), par).G;
        const Real gms = global_factor(k, point_kinematics(s - h, t, sys, spec), par).G;
        const Real gpt = global_factor(k, point_kinematics(s, t + h, sys, spec), par).G;
        const Real gmt = global_factor(k, point_kinematics(s, t - h, sys, spec), par).G;
        CHECK(std::abs((gps - gms) / (2 * h) - g.dG_ds) <= 1e-7 * std::abs(g.dG_ds));
        CHECK(std::abs((gpt - gmt) / (2 * h) - g.dG_dt) <= 1e-7 * std::abs(g.dG_dt));
      }
    }
  }
}

TEST_CASE("symmetric charges: G symmetric under t -> pi - t") {
  const PhysicalSystem sys = PhysicalSystem::make(90, 90, 2.0 / 90, Mode::relativistic);
  const TransformSpec spec = make_transform(10, 0.35, sys.R);
  const GlobalFactorParams par = GlobalFactorParams::from_system(sys);
  for (int k : {1, 2}) {
    for (Real t : {0.4, 1.1}) {
      const Real a = global_factor(k, point_kinematics(0.5 * spec.s_max, t, sys, spec), par).G;
      const Real b =
          global_factor(k, point_kinematics(0.5 * spec.s_max, kPi - t, sys, spec), par).G;
      CHECK(a == doctest::Approx(b).epsilon(1e-13));
    }
  }
}

TEST_CASE("axis evaluation: zero with finite directional data for m_k > 0") {
  const PhysicalSystem sys = PhysicalSystem::make(2, 1, 1.5, Mode::relativistic);
  const TransformSpec spec = make_transform(6, 5.0, sys.R);
  const GlobalFactorParams par = GlobalFactorParams::from_system(sys);
  const PointKinematics kin = point_kinematics(0.5, 0.0, sys, spec);  // on the axis
  CHECK(kin.u == 0.0);
  const GlobalFactor g = global_factor(2, kin, par);  // m_2 = 1
  CHECK(g.G == 0.0);
  CHECK(std::isfinite(g.dG_ds));
  CHECK(std::isfinite(g.dG_dt));
}
