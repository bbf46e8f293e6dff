#pragma once

#include <array>
#include <vector>

#include "tcdirac/types.hpp"

namespace tcdirac {

// Nodal Lagrange basis of the complete polynomial space of order p on the
// reference triangle, on the equispaced lattice (i/p, j/p), i+j <= p.
// Built from the closed-form products of one-dimensional factors over the
// barycentric coordinates; the nodal interpolation residual is checked to
// 1e-10 at construction.
class ShapeSet {
 public:
  explicit ShapeSet(int p);

  int order() const { return p_; }
  int size() const { return nloc_; }
  const std::vector<std::array<Real, 2>>& ref_nodes() const { return ref_nodes_; }

  // All shape values and reference-coordinate gradients at (x, y).
  // vals/dx/dy must have room for size() entries.
  void evaluate(Real x, Real y, Real* vals, Real* dx, Real* dy) const;

 private:
  int p_;
  int nloc_;
  std::vector<std::array<Real, 2>> ref_nodes_;
};

ShapeSet reference_shapes(int p);

}  // namespace tcdirac
