#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcdirac/geometry.hpp"
#include "tcdirac/solver.hpp"
#include "tcdirac/transform.hpp"
#include "tcdirac/types.hpp"

namespace tcdirac {

// Identifies one paired run; the counterpoise difference is only meaningful
// between runs with identical keys.
struct RunKey {
  int m = 0, p = 0, nu = 0, n_I = 0;
  Real Z1 = 0, Z2 = 0, R = 0, alpha = 0, jz = 0, D_max = 0;
  bool operator==(const RunKey&) const = default;
};

Real relativistic_shift(Real E_rel, Real E_nrel);
// Throws invalid_parameter_error when the two runs were not produced with
// identical mesh/transform/quadrature parameters.
Real paired_shift(const RunKey& rel_key, Real E_rel, const RunKey& nrel_key, Real E_nrel);

struct Rung {
  int m = 0;
  Index Ne = 0, N = 0;
  Real E_rel = 0, E_nrel = 0, shift = 0;
  int outer_iters = 0;
};

struct DataPoint {
  Index N;
  Real E;
};

// Least-squares slope of log|E - E_ref| against log N; the reported order is
// q = -slope, i.e. |E - E_ref| ~ N^(-q).  Rungs below the noise floor are
// excluded and reported.
struct FitResult {
  Real q = 0;
  std::vector<Index> used;      // N values entering the fit
  std::vector<Index> excluded;  // N values below the noise floor
};
FitResult fit_convergence_order(const std::vector<DataPoint>& rungs, Real E_ref,
                                Real noise_floor);

// Power-law extrapolation E(N) = E_inf + C N^(-q) on the last three rungs;
// q solved by three-rung elimination when not supplied.  Uncertainty is the
// last-step Richardson estimate |E_inf - E_last| / (r^q - 1).
struct Extrapolation {
  Real value = 0;
  Real uncertainty = 0;
  Real q_used = 0;
  bool degenerate = false;
};
Extrapolation extrapolate(const std::vector<DataPoint>& rungs, std::optional<Real> q);

struct SequenceResult {
  std::vector<Rung> rungs;
  struct Observable {
    std::optional<Real> q;
    std::optional<Real> E_extrap;
    std::optional<Real> uncertainty;
    std::string note;
  };
  Observable rel, nrel, shift;
};

struct LadderParams {
  PhysicalSystem sys;  // mode field ignored; both modes run per rung
  int nu = 8;
  Real D_max = 40;
  int p = 10;
  std::vector<int> m_list;
  SolverConfig solver;
  int workers = 1;
  std::optional<Real> q_user;  // extrapolation order; auto when unset
  Real noise_floor = -1;       // < 0: default 1e-13 * max(1, |E_rel last|)
};

SequenceResult run_ladder(const LadderParams& par);

struct ScanEntry {
  Real D_max = 0;
  Rung rung;
};
// Re-runs one rung across a D_max list (Table-style domain-size study).
std::vector<ScanEntry> run_dmax_scan(const LadderParams& par, int m,
                                     const std::vector<Real>& dmax_list);

}  // namespace tcdirac
