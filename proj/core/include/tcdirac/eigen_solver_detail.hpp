#pragma once

#include <functional>

#include "tcdirac/eigen_solver.hpp"

namespace tcdirac::detail {

// Deterministic pseudo-random start vector.
void seed_vector(VecX& x);

// Inverse-iteration core shared by the pencil primitive and the minmax loop.
// Convergence is declared when the Rayleigh quotient stabilizes to
// tol_inner * max(1, |theta|) over two consecutive steps while the residual
// guard holds; the reported residual is relative to a 1-norm estimate of A.
PencilResult inverse_iterate(Index dim, Real target, const PencilOptions& opt,
                             const VecX* warm,
                             const std::function<bool(Real)>& factorize_at,
                             const std::function<VecX(const VecX&)>& solve_K,
                             const std::function<VecX(const VecX&)>& apply_A,
                             const std::function<VecX(const VecX&)>& apply_S,
                             Real normA_est);

// m <- diag(d) m diag(d)
void scale_symmetric(SpMat& m, const VecX& d);

// max column 1-norm of a value array on a shared pattern
Real norm1_estimate(const SpMat& pattern, const Real* values);

// y' M y accumulated with exact two-products and a compensated sum, so the
// result is accurate to a few ulp of the final value even when individual
// terms are many orders larger.
Real quadratic_form_compensated(const SpMat& pattern, const Real* values, const VecX& y);

}  // namespace tcdirac::detail
