#include "tcdirac/mesh.hpp"

#include <numbers>
#include <ostream>

namespace tcdirac {

Mesh build_mesh(int m, int p, Real s_max) {
  if (m < 1) throw invalid_parameter_error("mesh subdivisions m must be >= 1");
  if (p < 1) throw invalid_parameter_error("polynomial order p must be >= 1");
  if (!(s_max > 0)) throw invalid_parameter_error("s_max must be positive");

  constexpr Real pi = std::numbers::pi_v<Real>;
  Mesh mesh;
  mesh.m = m;
  mesh.p = p;
  mesh.s_max = s_max;

  const int nn = p * m + 1;
  mesh.nodes.resize(static_cast<size_t>(nn) * nn);
  mesh.boundary_mask.assign(static_cast<size_t>(nn) * nn, 0);
  for (int row = 0; row < nn; ++row) {
    const Real t = (row == nn - 1) ? pi : pi * row / (nn - 1);
    for (int col = 0; col < nn; ++col) {
      const Real s = (col == nn - 1) ? s_max : s_max * col / (nn - 1);
      const size_t id = static_cast<size_t>(row) * nn + col;
      mesh.nodes[id] = {s, t};
      mesh.boundary_mask[id] = (col == nn - 1);
    }
  }

  const int nloc = mesh.nloc();
  mesh.elements.reserve(2 * static_cast<size_t>(m) * m);
  mesh.element_nodes.reserve(2 * static_cast<size_t>(m) * m * nloc);
  for (int ct = 0; ct < m; ++ct) {
    for (int cs = 0; cs < m; ++cs) {
      for (int kind = 0; kind < 2; ++kind) {
        mesh.elements.push_back({cs, ct, kind});
        for (int j = 0; j <= p; ++j) {
          for (int i = 0; i <= p - j; ++i) {
            // reference lattice (i, j) -> cell lattice offsets
            const int a = (kind == 0) ? i + j : i;  // s offset
            const int b = (kind == 0) ? j : i + j;  // t offset
            const int row = ct * p + b;
            const int col = cs * p + a;
            mesh.element_nodes.push_back(row * nn + col);
          }
        }
      }
    }
  }
  return mesh;
}

std::vector<Mesh> grid_ladder(const std::vector<int>& m_list, int p, Real s_max) {
  if (m_list.empty()) throw invalid_parameter_error("grid ladder needs a non-empty m list");
  for (size_t i = 1; i < m_list.size(); ++i)
    if (m_list[i] <= m_list[i - 1])
      throw invalid_parameter_error("grid ladder m list must be strictly increasing");
  std::vector<Mesh> out;
  out.reserve(m_list.size());
  for (int m : m_list) out.push_back(build_mesh(m, p, s_max));
  return out;
}

void dump_mesh(const Mesh& mesh, std::ostream& os) {
  os << "nodes " << mesh.n_nodes() << "\n";
  for (Index i = 0; i < mesh.n_nodes(); ++i)
    os << i << ' ' << mesh.nodes[i][0] << ' ' << mesh.nodes[i][1] << '\n';
  os << "elements " << mesh.ne() << "\n";
  for (Index e = 0; e < mesh.ne(); ++e) {
    os << e;
    const int* idx = mesh.element_node_ptr(e);
    for (int a = 0; a < mesh.nloc(); ++a) os << ' ' << idx[a];
    os << '\n';
  }
}

}  // namespace tcdirac
