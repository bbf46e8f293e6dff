#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "tcdirac/types.hpp"

namespace tcdirac {

// Structured triangulation of [0, s_max] x [0, pi]: m x m uniform cells, each
// split bottom-left to top-right into two triangles, with the order-p nodal
// lattice shared between neighbours (C0).  Local node order inside a triangle
// is lexicographic over the reference lattice (i, j), j-major.
struct Mesh {
  int m = 0;
  int p = 0;
  Real s_max = 0;

  // kind 0: lower-right triangle, vertices (c, r), (c+1, r), (c+1, r+1);
  // kind 1: upper-left triangle,  vertices (c, r), (c+1, r+1), (c, r+1).
  struct Element {
    int cell_s, cell_t;
    int kind;
  };

  std::vector<std::array<Real, 2>> nodes;      // (s, t) per global node
  std::vector<int> element_nodes;              // Ne * nloc global indices
  std::vector<Element> elements;
  std::vector<char> boundary_mask;             // true exactly where s == s_max

  int nloc() const { return (p + 1) * (p + 2) / 2; }
  Index ne() const { return static_cast<Index>(elements.size()); }
  Index n_nodes() const { return static_cast<Index>(nodes.size()); }
  int nodes_per_side() const { return p * m + 1; }
  const int* element_node_ptr(Index e) const { return element_nodes.data() + e * nloc(); }
};

Mesh build_mesh(int m, int p, Real s_max);

std::vector<Mesh> grid_ladder(const std::vector<int>& m_list, int p, Real s_max);

// Plain-text node/element listing for debugging.
void dump_mesh(const Mesh& mesh, std::ostream& os);

}  // namespace tcdirac
