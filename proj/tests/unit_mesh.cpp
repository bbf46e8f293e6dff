#include <doctest.h>

#include <map>
#include <numbers>
#include <sstream>

#include "tcdirac/mesh.hpp"

using namespace tcdirac;

TEST_CASE("element and node counts") {
  const Mesh a = build_mesh(6, 10, 3.0);
  CHECK(a.ne() == 72);
  CHECK(a.n_nodes() == 3721);
  const Mesh b = build_mesh(30, 10, 3.0);
  CHECK(b.ne() == 1800);
  CHECK(b.n_nodes() == 90601);
  const Mesh c = build_mesh(1, 1, 3.0);
  CHECK(c.ne() == 2);
  CHECK(c.n_nodes() == 4);
}

TEST_CASE("grid ladder") {
  const std::vector<int> ms = {6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30};
  const auto ladder = grid_ladder(ms, 10, 3.0);
  const Index expect[] = {3721,  6561,  10201, 14641, 19881, 25921, 32761,
                          40401, 48841, 58081, 68121, 78961, 90601};
  for (size_t i = 0; i < ms.size(); ++i) CHECK(ladder[i].n_nodes() == expect[i]);

  const auto single = grid_ladder({2}, 10, 3.0);
  CHECK(single[0].ne() == 8);

  const auto three = grid_ladder({4, 8, 16}, 10, 3.0);
  for (size_t i = 0; i < three.size(); ++i) {
    const Index n = three[i].n_nodes();
    const int m = std::vector<int>{4, 8, 16}[i];
    CHECK(n == static_cast<Index>(10 * m + 1) * (10 * m + 1));
  }

  CHECK_THROWS_AS(grid_ladder({}, 10, 3.0), invalid_parameter_error);
  CHECK_THROWS_AS(grid_ladder({4, 4}, 10, 3.0), invalid_parameter_error);
}

TEST_CASE("C0 conformity: interior edges shared by exactly two triangles") {
  const Mesh mesh = build_mesh(3, 4, 2.0);
  // corner vertices of each triangle in local lattice terms
  const int p = mesh.p;
  auto loc = [&](int i, int j) {  // local index of reference lattice point
    int idx = 0;
    for (int jj = 0; jj < j; ++jj) idx += p + 1 - jj;
    return idx + i;
  };
  std::map<std::vector<int>, int> edge_count;
  for (Index e = 0; e < mesh.ne(); ++e) {
    const int* en = mesh.element_node_ptr(e);
    // three edges of the reference triangle, each with its p+1 lattice nodes
    std::vector<std::vector<int>> edges(3);
    for (int a = 0; a <= p; ++a) {
      edges[0].push_back(en[loc(a, 0)]);
      edges[1].push_back(en[loc(0, a)]);
      edges[2].push_back(en[loc(p - a, a)]);
    }
    for (auto& ed : edges) {
      std::vector<int> key = ed;
      std::sort(key.begin(), key.end());
      ++edge_count[key];
    }
  }
  int boundary_edges = 0, interior_edges = 0;
  for (const auto& [key, cnt] : edge_count) {
    CHECK(cnt <= 2);
    (cnt == 2 ? interior_edges : boundary_edges)++;
  }
  // 3x3 grid: 12 boundary edges, and every shared edge appears exactly twice
  CHECK(boundary_edges == 12);
  CHECK(interior_edges > 0);
}

TEST_CASE("node count from connectivity") {
  const Mesh mesh = build_mesh(4, 5, 2.0);
  std::vector<char> seen(mesh.n_nodes(), 0);
  for (int idx : mesh.element_nodes) seen[idx] = 1;
  Index used = 0;
  for (char c : seen) used += c;
  CHECK(used == mesh.n_nodes());
}

TEST_CASE("element areas cover the rectangle") {
  const Mesh mesh = build_mesh(5, 3, 1.7);
  Real total = 0;
  for (Index e = 0; e < mesh.ne(); ++e) {
    const Mesh::Element& el = mesh.elements[e];
    const int nn = mesh.nodes_per_side();
    const int c0 = el.cell_s * mesh.p, r0 = el.cell_t * mesh.p;
    const Real hs = mesh.nodes[r0 * nn + c0 + mesh.p][0] - mesh.nodes[r0 * nn + c0][0];
    const Real ht = mesh.nodes[(r0 + mesh.p) * nn + c0][1] - mesh.nodes[r0 * nn + c0][1];
    total += 0.5 * hs * ht;
  }
  const Real expect = 1.7 * std::numbers::pi_v<Real>;
  CHECK(std::abs(total - expect) <= 1e-12 * expect);
}

TEST_CASE("boundary mask marks exactly s == s_max") {
  const Mesh mesh = build_mesh(3, 4, 2.5);
  for (Index i = 0; i < mesh.n_nodes(); ++i)
    CHECK(static_cast<bool>(mesh.boundary_mask[i]) == (mesh.nodes[i][0] == 2.5));
}

TEST_CASE("construction is deterministic") {
  const Mesh a = build_mesh(4, 6, 1.3);
  const Mesh b = build_mesh(4, 6, 1.3);
  CHECK(a.element_nodes == b.element_nodes);
  CHECK(a.nodes == b.nodes);
}

TEST_CASE("mesh dump is line oriented") {
  const Mesh mesh = build_mesh(1, 1, 1.0);
  std::ostringstream os;
  dump_mesh(mesh, os);
  std::istringstream is(os.str());
  std::string word;
  is >> word;
  CHECK(word == "nodes");
  Index n;
  is >> n;
  CHECK(n == 4);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(build_mesh(0, 1, 1.0), invalid_parameter_error);
  CHECK_THROWS_AS(build_mesh(1, 0, 1.0), invalid_parameter_error);
  CHECK_THROWS_AS(build_mesh(1, 1, 0.0), invalid_parameter_error);
}
