#include "tcdirac/assembly.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "tcdirac/global_factor.hpp"
#include "tcdirac/quadrature.hpp"

namespace tcdirac {

namespace {

using MatX = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using ArrX = Eigen::Array<Real, Eigen::Dynamic, 1>;

Real ipow(Real x, int e) {
  Real r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

inline Index csc_position(const SpMat& m, int row, int col) {
  const auto* outer = m.outerIndexPtr();
  const auto* inner = m.innerIndexPtr();
  const auto* it = std::lower_bound(inner + outer[col], inner + outer[col + 1], row);
  return static_cast<Index>(it - inner);
}

}  // namespace

void AssembledSystem::combine_pencil(Real delta_eps, Real sigma, VecX& out) const {
  out = A_vals[0];
  Real c = 1;
  for (int k = 1; k <= k_max; ++k) {
    c *= -delta_eps;
    if (c != 0) out.noalias() += c * A_vals[k];
  }
  out.noalias() += W_vals;
  if (sigma != 0) out.noalias() -= sigma * S_vals;
}

void AssembledSystem::combine_derivative(Real delta_eps, VecX& out) const {
  out.setZero(A_vals[0].size());
  Real c = 1;  // (-delta_eps)^(k-1)
  for (int k = 1; k <= k_max; ++k) {
    out.noalias() -= (k * c) * A_vals[k];
    c *= -delta_eps;
  }
}

Eigen::Map<const SpMat> AssembledSystem::map_matrix(const VecX& vals) const {
  return Eigen::Map<const SpMat>(pattern.rows(), pattern.cols(), pattern.nonZeros(),
                                 pattern.outerIndexPtr(), pattern.innerIndexPtr(),
                                 vals.data());
}

VecX AssembledSystem::multiply(const VecX& vals, const VecX& x) const {
  return map_matrix(vals) * x;
}

SpMat AssembledSystem::matrix_A(int k) const {
  SpMat m = pattern;
  std::copy(A_vals.at(k).data(), A_vals.at(k).data() + m.nonZeros(), m.valuePtr());
  return m;
}

SpMat AssembledSystem::matrix_S() const {
  SpMat m = pattern;
  std::copy(S_vals.data(), S_vals.data() + m.nonZeros(), m.valuePtr());
  return m;
}

SpMat AssembledSystem::matrix_W() const {
  SpMat m = pattern;
  std::copy(W_vals.data(), W_vals.data() + m.nonZeros(), m.valuePtr());
  return m;
}

AssembledSystem assemble_system(const Mesh& mesh, const ShapeSet& shapes,
                                const PhysicalSystem& sys, const TransformSpec& spec,
                                Real eps0, int k_max, int n_I) {
  if (shapes.order() != mesh.p)
    throw invalid_parameter_error("shape order does not match mesh order");
  if (k_max < 0 || k_max > 12) throw invalid_parameter_error("k_max must be in 0..12");
  const bool rel = sys.mode == Mode::relativistic;
  const Real c2 = rel ? sys.c() * sys.c() : 0;
  if (rel && !(eps0 > -2 * c2 && eps0 < 0))
    throw invalid_parameter_error("eps0 must lie in the electronic window (-2c^2, 0)");
  if (!rel) k_max = 0;

  const QuadratureRule rule = triangle_quadrature(n_I);
  const int nq = static_cast<int>(rule.size());
  const int nloc = shapes.size();
  const int nl2 = 2 * nloc;
  const int nn = mesh.nodes_per_side();

  // shape tables at the rule points
  MatX N(nq, nloc), Nx(nq, nloc), Ny(nq, nloc);
  {
    std::vector<Real> v(nloc), gx(nloc), gy(nloc);
    for (int q = 0; q < nq; ++q) {
      shapes.evaluate(rule.x[q], rule.y[q], v.data(), gx.data(), gy.data());
      for (int a = 0; a < nloc; ++a) {
        N(q, a) = v[a];
        Nx(q, a) = gx[a];
        Ny(q, a) = gy[a];
      }
    }
  }
  // (dN/ds, dN/dt) per triangle kind; uniform cells make these element-independent
  const Real hs = mesh.s_max / mesh.m;
  const Real ht = std::numbers::pi_v<Real> / mesh.m;
  MatX dNds[2], dNdt[2];
  dNds[0] = Nx / hs;
  dNdt[0] = (Ny - Nx) / ht;
  dNds[1] = (Nx - Ny) / hs;
  dNdt[1] = Ny / ht;

  AssembledSystem out;
  out.mode = sys.mode;
  out.eps0 = rel ? eps0 : 0;
  out.k_max = k_max;
  out.free_index.assign(mesh.n_nodes(), -1);
  Index nf = 0;
  for (Index i = 0; i < mesh.n_nodes(); ++i)
    if (!mesh.boundary_mask[i]) out.free_index[i] = static_cast<int>(nf++);
  out.n_free = nf;
  out.dim = 2 * nf;

  // element-local dof layout: [component 1 for all nodes | component 2];
  // global dof = 2*free_node + component
  std::vector<int> dofs(nl2);
  auto fill_dofs = [&](Index e) {
    const int* en = mesh.element_node_ptr(e);
    for (int a = 0; a < nloc; ++a) {
      const int f = out.free_index[en[a]];
      dofs[a] = f < 0 ? -1 : 2 * f;
      dofs[nloc + a] = f < 0 ? -1 : 2 * f + 1;
    }
  };

  {
    std::vector<Eigen::Triplet<Real>> trips;
    trips.reserve(static_cast<size_t>(mesh.ne()) * nl2 * nl2);
    for (Index e = 0; e < mesh.ne(); ++e) {
      fill_dofs(e);
      for (int a = 0; a < nl2; ++a) {
        if (dofs[a] < 0) continue;
        for (int b = 0; b < nl2; ++b)
          if (dofs[b] >= 0) trips.emplace_back(dofs[a], dofs[b], Real(1));
      }
    }
    out.pattern.resize(out.dim, out.dim);
    out.pattern.setFromTriplets(trips.begin(), trips.end());
    out.pattern.makeCompressed();
  }
  const Index nnz = out.pattern.nonZeros();
  out.A_vals.assign(k_max + 1, VecX::Zero(nnz));
  out.S_vals = VecX::Zero(nnz);
  out.W_vals = VecX::Zero(nnz);

  const GlobalFactorParams gf = GlobalFactorParams::from_system(sys);
  const int m1 = gf.m_k(1);
  const int m2 = gf.m_k(2);
  const Real fm = 4.0 * m2 / sys.R;
  const Real halfR = 0.5 * sys.R;

  ArrX inv_dxi(nq), inv_deta(nq), dlg_dxi(nq), dlg_deta(nq);
  ArrX rho_xi(nq), rho_eta(nq), z_xi(nq), z_eta(nq);
  ArrX sqw(nq), wS(nq), wW(nq), inv_sqrt_g(nq);
  ArrX um1(nq), um2(nq), um2m(nq);

  MatX dPsiDxi(nq, nloc), dPsiDeta(nq, nloc), dPsiDrho(nq, nloc), dPsiDz(nq, nloc);
  MatX MT(2 * nq, nl2), Phi(nq, nloc);
  MatX Ael(nl2, nl2), Bel(nloc, nloc);
  std::vector<Index> pos(static_cast<size_t>(nl2) * nl2);

  Real g_inv_max = 0;

  for (Index e = 0; e < mesh.ne(); ++e) {
    const Mesh::Element& el = mesh.elements[e];
    const int col0 = el.cell_s * mesh.p;
    const int row0 = el.cell_t * mesh.p;
    const Real s0 = mesh.nodes[static_cast<size_t>(row0) * nn + col0][0];
    const Real t0 = mesh.nodes[static_cast<size_t>(row0) * nn + col0][1];
    const Real hs_e = mesh.nodes[static_cast<size_t>(row0) * nn + col0 + mesh.p][0] - s0;
    const Real ht_e = mesh.nodes[(static_cast<size_t>(row0) + mesh.p) * nn + col0][1] - t0;

    for (int q = 0; q < nq; ++q) {
      const Real X = rule.x[q], Y = rule.y[q];
      const Real s = el.kind == 0 ? s0 + (X + Y) * hs_e : s0 + X * hs_e;
      const Real t = el.kind == 0 ? t0 + Y * ht_e : t0 + (X + Y) * ht_e;
      const PointKinematics kin = point_kinematics(s, t, sys, spec);

      inv_dxi(q) = 1.0 / kin.dxi_ds;
      inv_deta(q) = 1.0 / kin.deta_dt;
      Real dxi_l = 0, deta_l = 0;
      if (gf.gamma1 != 1.0) {
        const Real f = (gf.gamma1 - 1.0) / kin.r1 * halfR;
        dxi_l += f;
        deta_l += f;
      }
      if (gf.gamma2 != 1.0) {
        const Real f = (gf.gamma2 - 1.0) / kin.r2 * halfR;
        dxi_l += f;
        deta_l -= f;
      }
      dlg_dxi(q) = dxi_l;
      dlg_deta(q) = deta_l;

      const Real denom = halfR * kin.xi2_m_eta2;
      rho_xi(q) = kin.xi * kin.u / denom;
      rho_eta(q) = kin.eta * kin.u / denom;
      z_xi(q) = kin.xi2_m1 * kin.eta / denom;
      z_eta(q) = kin.xi * kin.one_m_eta2 / denom;

      // G_2^2 and every volume factor folded into the row weights; shape-side
      // quantities stay polynomial-scale so nothing overflows near the nuclei
      const Real g2 = std::exp(log_g2(kin, gf));
      const Real wgeom = rule.w[q] * (hs_e * ht_e) * (halfR * halfR * halfR) *
                         kin.dxi_ds * (-kin.deta_dt) * (g2 * g2);
      const Real wvol = wgeom * kin.xi2_m_eta2;
      wS(q) = wvol;
      wW(q) = -kin.V_weighted * wgeom;
      Real w0;
      if (rel) {
        const Real g = eps0 + 2 * c2 - kin.V;
        g_inv_max = std::max(g_inv_max, 1.0 / g);
        w0 = wvol * c2 / g;
        inv_sqrt_g(q) = 1.0 / std::sqrt(g);
      } else {
        w0 = wvol * 0.5;
        inv_sqrt_g(q) = 1;
      }
      sqw(q) = std::sqrt(w0);
      um1(q) = ipow(kin.u, m1);
      um2(q) = ipow(kin.u, m2);
      um2m(q) = m2 >= 1 ? ipow(kin.u, m2 - 1) : 0;
    }

    const MatX& ds = dNds[el.kind];
    const MatX& dt = dNdt[el.kind];
    dPsiDxi = (ds.array().colwise() * inv_dxi + N.array().colwise() * dlg_dxi).matrix();
    dPsiDeta = (dt.array().colwise() * inv_deta + N.array().colwise() * dlg_deta).matrix();
    dPsiDrho = (dPsiDxi.array().colwise() * rho_xi - dPsiDeta.array().colwise() * rho_eta).matrix();
    dPsiDz = (dPsiDxi.array().colwise() * z_xi + dPsiDeta.array().colwise() * z_eta).matrix();

    // T_a rows then T_b rows; columns [component 1 | component 2]
    MT.block(0, 0, nq, nloc) = (dPsiDz.array().colwise() * (sqw * um1)).matrix();
    MT.block(0, nloc, nq, nloc) =
        (dPsiDrho.array().colwise() * (sqw * um2) + N.array().colwise() * (sqw * um2m * fm)).matrix();
    MT.block(nq, 0, nq, nloc) = (dPsiDrho.array().colwise() * (sqw * um1)).matrix();
    MT.block(nq, nloc, nq, nloc) = (-(dPsiDz.array().colwise() * (sqw * um2))).matrix();

    fill_dofs(e);
    for (int a = 0; a < nl2; ++a)
      for (int b = 0; b < nl2; ++b)
        pos[static_cast<size_t>(a) * nl2 + b] =
            (dofs[a] >= 0 && dofs[b] >= 0) ? csc_position(out.pattern, dofs[a], dofs[b]) : -1;

    for (int k = 0; k <= k_max; ++k) {
      if (k > 0) {
        MT.block(0, 0, nq, nl2).array().colwise() *= inv_sqrt_g;
        MT.block(nq, 0, nq, nl2).array().colwise() *= inv_sqrt_g;
      }
      Ael.setZero();
      Ael.selfadjointView<Eigen::Lower>().rankUpdate(MT.transpose());
      Real* av = out.A_vals[k].data();
      for (int b = 0; b < nl2; ++b) {
        if (dofs[b] < 0) continue;
        for (int a = b; a < nl2; ++a) {
          const Index pab = pos[static_cast<size_t>(a) * nl2 + b];
          if (pab < 0) continue;
          const Real v = Ael(a, b);
          av[pab] += v;
          if (a != b) av[pos[static_cast<size_t>(b) * nl2 + a]] += v;
        }
      }
    }

    // overlap and potential: block-diagonal over components (the azimuthal
    // integration removes the cross terms exactly)
    for (int comp = 0; comp < 2; ++comp) {
      const ArrX& um = comp == 0 ? um1 : um2;
      Phi = (N.array().colwise() * (wS.sqrt() * um)).matrix();
      Bel.setZero();
      Bel.selfadjointView<Eigen::Lower>().rankUpdate(Phi.transpose());
      Real* sv = out.S_vals.data();
      const int off = comp * nloc;
      for (int b = 0; b < nloc; ++b) {
        if (dofs[off + b] < 0) continue;
        for (int a = b; a < nloc; ++a) {
          const Index pab = pos[static_cast<size_t>(off + a) * nl2 + off + b];
          if (pab < 0) continue;
          sv[pab] += Bel(a, b);
          if (a != b) sv[pos[static_cast<size_t>(off + b) * nl2 + off + a]] += Bel(a, b);
        }
      }
      Phi = (N.array().colwise() * (wW.sqrt() * um)).matrix();
      Bel.setZero();
      Bel.selfadjointView<Eigen::Lower>().rankUpdate(Phi.transpose());
      Real* wv = out.W_vals.data();
      for (int b = 0; b < nloc; ++b) {
        if (dofs[off + b] < 0) continue;
        for (int a = b; a < nloc; ++a) {
          const Index pab = pos[static_cast<size_t>(off + a) * nl2 + off + b];
          if (pab < 0) continue;
          wv[pab] -= Bel(a, b);
          if (a != b) wv[pos[static_cast<size_t>(off + b) * nl2 + off + a]] -= Bel(a, b);
        }
      }
    }
  }

  out.g_inv_max = g_inv_max;

  // overlap must admit a Cholesky factorization
  {
    std::vector<Eigen::Triplet<Real>> strips;
    strips.reserve(static_cast<size_t>(nnz) / 2);
    const auto* outer = out.pattern.outerIndexPtr();
    const auto* inner = out.pattern.innerIndexPtr();
    for (int col = 0; col < out.pattern.outerSize(); ++col)
      for (auto idx = outer[col]; idx < outer[col + 1]; ++idx)
        if (out.S_vals[idx] != 0) strips.emplace_back(inner[idx], col, out.S_vals[idx]);
    SpMat Scomp(out.dim, out.dim);
    Scomp.setFromTriplets(strips.begin(), strips.end());
    Eigen::SimplicialLLT<SpMat> llt(Scomp);
    if (llt.info() != Eigen::Success)
      throw assembly_error("overlap matrix is not positive definite");
  }
  return out;
}

void dump_matrix(const SpMat& mat, std::ostream& os) {
  for (int k = 0; k < mat.outerSize(); ++k)
    for (SpMat::InnerIterator it(mat, k); it; ++it)
      os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

}  // namespace tcdirac
