#pragma once

#include <Eigen/Sparse>
#include <iosfwd>
#include <vector>

#include "tcdirac/geometry.hpp"
#include "tcdirac/mesh.hpp"
#include "tcdirac/shapes.hpp"
#include "tcdirac/transform.hpp"
#include "tcdirac/types.hpp"

namespace tcdirac {

using SpMat = Eigen::SparseMatrix<Real>;
using VecX = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Discretized weak form.  All matrices share one sparsity pattern (full
// symmetric storage); the k-family of kinetic forms, the overlap S and the
// potential matrix W are kept as value arrays aligned with that pattern.
//
// dof layout: dof = 2 * free_node_index + component (0 or 1); only the
// Dirichlet edge s = s_max is eliminated.
struct AssembledSystem {
  Index dim = 0;
  Mode mode = Mode::relativistic;
  Real eps0 = 0;
  int k_max = 0;  // 0 in nonrelativistic mode
  Real g_inv_max = 0;
  Index n_free = 0;
  std::vector<int> free_index;  // node -> free index, -1 when constrained

  SpMat pattern;  // values are scratch, overwritten by callers
  std::vector<VecX> A_vals;
  VecX S_vals, W_vals;

  Index nnz() const { return pattern.nonZeros(); }

  // out = A_0 + sum_k (-delta_eps)^k A_k + W - sigma * S  (value arrays)
  void combine_pencil(Real delta_eps, Real sigma, VecX& out) const;
  // out = d/d eps [ sum_k (-delta_eps)^k A_k ] = -sum_k k (-delta_eps)^(k-1) A_k
  void combine_derivative(Real delta_eps, VecX& out) const;

  Eigen::Map<const SpMat> map_matrix(const VecX& vals) const;
  VecX multiply(const VecX& vals, const VecX& x) const;

  // materialized copies (tests, dumps)
  SpMat matrix_A(int k) const;
  SpMat matrix_S() const;
  SpMat matrix_W() const;
};

AssembledSystem assemble_system(const Mesh& mesh, const ShapeSet& shapes,
                                const PhysicalSystem& sys, const TransformSpec& spec,
                                Real eps0, int k_max, int n_I);

// Line-oriented coordinate dump: row col value.
void dump_matrix(const SpMat& mat, std::ostream& os);

}  // namespace tcdirac
