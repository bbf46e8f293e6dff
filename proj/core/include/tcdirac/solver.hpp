#pragma once

#include <optional>

#include "tcdirac/assembly.hpp"
#include "tcdirac/eigen_solver.hpp"
#include "tcdirac/mesh.hpp"
#include "tcdirac/types.hpp"

namespace tcdirac {

struct SolverConfig {
  std::optional<Real> eps0;   // expansion point; defaults to the nonrelativistic
                              // energy on the same mesh
  int k_max = 9;
  Real tol_outer = -1;        // < 0: default 1e-15 * max(1, |eps0|)
  int max_outer = 30;
  Real tol_inner = 1e-12;
  Real shift_offset = -1;     // < 0: default 1e-2 * max(1, |target|)
  int n_I = 25;
};

struct EigenResult {
  Real energy = 0;
  VecX vector;        // S-normalized coefficients, dim = 2 * N_free
  int outer_iters = 0;
  Real residual_norm = 0;
};

// Single linear pencil solve of (A_0^nr + W, S): the exact alpha -> 0 limit.
EigenResult schroedinger_solve(const Mesh& mesh, const PhysicalSystem& sys,
                               const TransformSpec& spec, const SolverConfig& cfg);

// Nonlinear minmax iteration: A(eps^j) = A_0 + sum_k (-d_eps)^k A_k + W with
// d_eps = eps^j - eps0; the pencil (A(eps^j), S) is solved for the eigenvalue
// nearest eps^j; the next iterate follows from a Newton step on
// lambda(eps) - eps = 0 with the Hellmann-Feynman slope x' dA/d_eps x.
// Stops when |eps^{j+1} - eps^j| <= tol_outer.
EigenResult minmax_solve(const Mesh& mesh, const PhysicalSystem& sys,
                         const TransformSpec& spec, const SolverConfig& cfg);

// Shared variants that reuse an existing assembly (and expose it).
EigenResult schroedinger_solve(const AssembledSystem& as, const SolverConfig& cfg,
                               const PhysicalSystem& sys);
EigenResult minmax_solve(const AssembledSystem& as, const SolverConfig& cfg);

// Lower bound used as the default ground-state target of the linear solve.
Real coarse_energy_guess(const PhysicalSystem& sys);

}  // namespace tcdirac
