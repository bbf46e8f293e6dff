#include <doctest.h>

#include <cmath>

#include "tcdirac/analysis.hpp"

using namespace tcdirac;

TEST_CASE("relativistic shift is the exact difference") {
  // densest reference rung of the H2+ benchmark ladder
  const Real e_rel = -1.10264158103257716411811;
  const Real e_nrel = -1.10263421449494646150895;
  const Real shift = relativistic_shift(e_rel, e_nrel);
  CHECK(std::abs(shift - (-7.36653763070260915605e-6)) <= 5e-16);
  CHECK(relativistic_shift(-1.5, -1.5) == 0.0);
  // quasi-molecular benchmark, extrapolated values
  const Real s2 = relativistic_shift(-9504.7566484340095007, -8931.3371374090663382);
  CHECK(std::abs(s2 - (-573.419511024943162514)) <= 1e-11);
}

TEST_CASE("paired shift rejects mismatched runs") {
  RunKey a{6, 10, 8, 25, 1, 1, 2.0, kAlphaCodata2018, 0.5, 40.0};
  RunKey b = a;
  b.m = 8;
  CHECK_THROWS_AS(paired_shift(a, -1.0, b, -1.0), invalid_parameter_error);
  CHECK(paired_shift(a, -1.5, a, -1.0) == doctest::Approx(-0.5));
}

TEST_CASE("convergence order of a constructed power law") {
  std::vector<DataPoint> pts;
  for (Index n : {1000, 2000, 4000, 8000, 16000})
    pts.push_back({n, -1.0 + std::pow(static_cast<Real>(n), -5.0)});
  const FitResult fit = fit_convergence_order(pts, -1.0, 0.0);
  CHECK(fit.q == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(fit.used.size() == 5);
}

TEST_CASE("fit is invariant under scaling of the error column") {
  std::vector<DataPoint> a, b;
  for (Index n : {500, 1000, 2000, 4000}) {
    const Real d = std::pow(static_cast<Real>(n), -7.3);
    a.push_back({n, d});
    b.push_back({n, 1234.5 * d});
  }
  const Real qa = fit_convergence_order(a, 0.0, 0.0).q;
  const Real qb = fit_convergence_order(b, 0.0, 0.0).q;
  CHECK(qa == doctest::Approx(qb).epsilon(1e-12));
}

TEST_CASE("noise floor excludes converged rungs") {
  std::vector<DataPoint> pts;
  for (Index n : {100, 200, 400, 800, 1600})
    pts.push_back({n, std::pow(static_cast<Real>(n), -4.0)});
  pts.push_back({3200, 1e-15});
  const FitResult fit = fit_convergence_order(pts, 0.0, 1e-13);
  CHECK(fit.excluded == std::vector<Index>{3200});
  CHECK(fit.used.size() == 5);
  CHECK(fit.q == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("too few usable rungs") {
  std::vector<DataPoint> pts = {{100, 1.0}, {200, 0.5}};
  CHECK_THROWS_AS(fit_convergence_order(pts, 0.0, 0.0), insufficient_data_error);
  std::vector<DataPoint> below = {{100, 1e-20}, {200, 1e-21}, {400, 1e-22}};
  CHECK_THROWS_AS(fit_convergence_order(below, 0.0, 1e-13), insufficient_data_error);
}

TEST_CASE("extrapolation: constant sequence is degenerate") {
  std::vector<DataPoint> pts = {{100, -2.0}, {200, -2.0}, {400, -2.0}};
  const Extrapolation ex = extrapolate(pts, std::nullopt);
  CHECK(ex.degenerate);
  CHECK(ex.value == -2.0);
  CHECK(ex.uncertainty == 0.0);
}

TEST_CASE("extrapolation recovers a synthetic power law exactly") {
  const Real Einf = -3.25;
  auto make = [&](Real q) {
    std::vector<DataPoint> pts;
    for (Index n : {1000, 1500, 2250})
      pts.push_back({n, Einf + 7.5 * std::pow(static_cast<Real>(n), -q)});
    return pts;
  };
  const Extrapolation auto8 = extrapolate(make(8.0), std::nullopt);
  CHECK(std::abs(auto8.value - Einf) <= 1e-14 * std::abs(Einf));
  CHECK(auto8.q_used == doctest::Approx(8.0).epsilon(1e-9));
  const Extrapolation given = extrapolate(make(6.5), 6.5);
  CHECK(std::abs(given.value - Einf) <= 1e-14 * std::abs(Einf));
  CHECK(given.uncertainty >= std::abs(given.value - make(6.5).back().E) /
                                 (std::pow(2250.0 / 1500.0, 6.5) - 1) * 0.99);
}

TEST_CASE("extrapolation is shift equivariant") {
  std::vector<DataPoint> pts, shifted;
  for (Index n : {1000, 1400, 1960}) {
    const Real e = -1.0 + 3.0 * std::pow(static_cast<Real>(n), -9.0);
    pts.push_back({n, e});
    shifted.push_back({n, e + 17.25});
  }
  const Extrapolation a = extrapolate(pts, std::nullopt);
  const Extrapolation b = extrapolate(shifted, std::nullopt);
  CHECK(b.value - a.value == doctest::Approx(17.25).epsilon(1e-12));
}

TEST_CASE("monotone-from-above data extrapolates below the last rung") {
  std::vector<DataPoint> pts;
  for (Index n : {800, 1200, 1800})
    pts.push_back({n, -5.0 + 2.0 * std::pow(static_cast<Real>(n), -6.0)});
  const Extrapolation ex = extrapolate(pts, std::nullopt);
  CHECK(ex.value <= pts.back().E);
}

TEST_CASE("benchmark ladder tail reproduces the published limit") {
  // last three rungs of the H2+ relativistic ladder, stored as offsets from
  // the published extrapolated value (shift equivariance makes this exact)
  std::vector<DataPoint> pts = {{68121, 1.28e-21}, {78961, 1.4e-22}, {90601, 3e-23}};
  const Extrapolation ex = extrapolate(pts, std::nullopt);
  CHECK(std::abs(ex.value) <= 5e-23);
}

TEST_CASE("extrapolation input validation") {
  std::vector<DataPoint> two = {{100, 1.0}, {200, 0.5}};
  CHECK_THROWS_AS(extrapolate(two, std::nullopt), insufficient_data_error);
  std::vector<DataPoint> wobble = {{100, 1.0}, {200, 2.0}, {400, 1.5}};
  CHECK_THROWS_AS(extrapolate(wobble, std::nullopt), insufficient_data_error);
  std::vector<DataPoint> ok = {{100, 1.0}, {200, 0.5}, {400, 0.25}};
  CHECK_THROWS_AS(extrapolate(ok, -2.0), invalid_parameter_error);
}

TEST_CASE("ladder driver pairs modes on identical grids") {
  LadderParams par;
  par.sys = PhysicalSystem::make(1, 1, 2.0, Mode::relativistic);
  par.nu = 8;
  par.D_max = 40.0;
  par.p = 4;
  par.m_list = {2, 3};
  par.solver.n_I = 14;
  const SequenceResult seq = run_ladder(par);
  REQUIRE(seq.rungs.size() == 2);
  for (const Rung& r : seq.rungs) {
    CHECK(r.shift == r.E_rel - r.E_nrel);
    CHECK(r.N == static_cast<Index>(4 * r.m + 1) * (4 * r.m + 1));
    CHECK(r.E_rel < 0);
    CHECK(r.outer_iters >= 1);
  }
  CHECK(seq.rungs[1].E_rel <= seq.rungs[0].E_rel);
  // two rungs cannot support fits
  CHECK(!seq.rel.q);
  CHECK(!seq.rel.E_extrap);
}

TEST_CASE("dmax scan holds the grid fixed") {
  LadderParams par;
  par.sys = PhysicalSystem::make(1, 1, 2.0, Mode::relativistic);
  par.nu = 6;
  par.p = 4;
  par.solver.n_I = 14;
  const auto scan = run_dmax_scan(par, 2, {30.0, 40.0});
  REQUIRE(scan.size() == 2);
  CHECK(scan[0].D_max == 30.0);
  CHECK(scan[1].D_max == 40.0);
  CHECK(scan[0].rung.N == scan[1].rung.N);
}
