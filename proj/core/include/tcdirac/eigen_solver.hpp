#pragma once

#include <Eigen/Sparse>
#include <optional>

#include "tcdirac/assembly.hpp"
#include "tcdirac/types.hpp"

namespace tcdirac {

struct PencilOptions {
  Real shift_offset = -1;  // < 0: default 1e-2 * max(1, |target|)
  Real tol_inner = 1e-12;  // relative residual threshold
  int max_inner = 400;
  int max_shift_retries = 5;
  int max_refactor = 4;    // Rayleigh re-shifts within one solve
};

struct PencilResult {
  Real eigenvalue = 0;
  VecX vector;         // S-normalized
  int iterations = 0;
  Real residual_norm = 0;
};

// Thrown when inverse iteration fails; carries the best iterate.
struct pencil_failure : solver_error {
  PencilResult best;
  explicit pencil_failure(const std::string& what, PencilResult b)
      : solver_error(what), best(std::move(b)) {}
};

// Eigenpair of A x = eps S x nearest `target`, by Cholesky-factored shifted
// inverse iteration with Rayleigh-quotient acceleration.  A symmetric, S
// symmetric positive definite.  The pencil is equilibrated by diag(S)^{-1/2}
// internally.
PencilResult pencil_eigen_near(const SpMat& A, const SpMat& S, Real target,
                               const PencilOptions& opt = {},
                               const VecX* warm_start = nullptr);

}  // namespace tcdirac
