#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tcdirac/geometry.hpp"

using namespace tcdirac;

namespace {
constexpr Real kPi = std::numbers::pi_v<Real>;
}

TEST_CASE("PhysicalSystem validation") {
  CHECK_THROWS_AS(PhysicalSystem::make(-1, 0, 2, Mode::relativistic), invalid_parameter_error);
  CHECK_THROWS_AS(PhysicalSystem::make(0, 0, 2, Mode::relativistic), invalid_parameter_error);
  CHECK_THROWS_AS(PhysicalSystem::make(1, 1, 0, Mode::relativistic), invalid_parameter_error);
  CHECK_THROWS_AS(PhysicalSystem::make(138, 0, 2, Mode::relativistic), invalid_parameter_error);
  CHECK_THROWS_AS(PhysicalSystem::make(1, 1, 2, Mode::relativistic, 1.0), invalid_parameter_error);
  CHECK_THROWS_AS(PhysicalSystem::make(1, 1, 2, Mode::relativistic, -0.5),
                  invalid_parameter_error);
  const PhysicalSystem sys = PhysicalSystem::make(1, 1, 2, Mode::relativistic, 1.5);
  CHECK(sys.kappa_abs == 2);
  CHECK(PhysicalSystem::make(1, 1, 2, Mode::relativistic).kappa_abs == 1);
}

TEST_CASE("gamma exponents") {
  const PhysicalSystem th = PhysicalSystem::make(90, 90, 2.0 / 90, Mode::relativistic);
  const long double az = 90.0L / 137.035999084L;
  const long double ref = sqrtl(1.0L - az * az);
  CHECK(th.gamma(1) == doctest::Approx(static_cast<Real>(ref)).epsilon(1e-15));
  CHECK(th.gamma(1) == doctest::Approx(0.754098155669733).epsilon(1e-12));
  CHECK(th.with_mode(Mode::nonrelativistic).gamma(1) == 1.0);
  const PhysicalSystem h = PhysicalSystem::make(1, 0, 2, Mode::relativistic);
  CHECK(h.gamma(2) == 1.0);  // Z2 = 0
}

TEST_CASE("point kinematics: closed-form points") {
  // nu = 2 gives xi = cosh s, eta = cos t, so target points are invertible
  const TransformSpec spec = make_transform(2, 10.0, 2.0);
  const PhysicalSystem sys = PhysicalSystem::make(1, 1, 2, Mode::relativistic);
  const PointKinematics k = point_kinematics(std::acosh(2.0), kPi / 2, sys, spec);
  CHECK(k.xi == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(k.eta) <= 1e-15);
  CHECK(k.r1 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(k.r2 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(k.V == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("point kinematics: focus point is singular") {
  const TransformSpec spec = make_transform(2, 10.0, 2.0);
  const PhysicalSystem sys = PhysicalSystem::make(1, 1, 2, Mode::relativistic);
  CHECK_THROWS_AS(point_kinematics(0.0, 0.0, sys, spec), singular_point_error);
  CHECK_THROWS_AS(point_kinematics(0.0, kPi, sys, spec), singular_point_error);
}

TEST_CASE("cancelled potential equals direct product") {
  const Real R = 2.0 / 90;
  const TransformSpec spec = make_transform(2, 0.35, R);
  const PhysicalSystem sys = PhysicalSystem::make(90, 90, R, Mode::relativistic);
  // xi = 1.5, eta = 0.5
  const PointKinematics k = point_kinematics(std::acosh(1.5), std::acos(0.5), sys, spec);
  const Real direct = k.V * (k.xi * k.xi - k.eta * k.eta);
  CHECK(std::abs(direct - k.V_weighted) <= 1e-14 * std::abs(k.V_weighted));
}

TEST_CASE("kinematic identities on a sample grid") {
  const TransformSpec spec = make_transform(8, 40.0, 2.0);
  const PhysicalSystem sys = PhysicalSystem::make(1, 2, 2, Mode::relativistic);
  for (int i = 1; i < 12; ++i) {
    for (int j = 1; j < 12; ++j) {
      const Real s = spec.s_max * i / 12;
      const Real t = kPi * j / 12;
      const PointKinematics k = point_kinematics(s, t, sys, spec);
      CHECK(k.r1 + k.r2 == doctest::Approx(k.xi * sys.R).epsilon(1e-13));
      CHECK(k.r1 - k.r2 == doctest::Approx(k.eta * sys.R).epsilon(1e-12));
      if (k.r1 > 1e-10 && k.r2 > 1e-10) {
        const Real direct = k.V * k.xi2_m_eta2;
        CHECK(direct == doctest::Approx(k.V_weighted).epsilon(1e-12));
      }
      CHECK(k.u2 == doctest::Approx((k.xi * k.xi - 1) * (1 - k.eta * k.eta)).epsilon(1e-12));
    }
  }
}
