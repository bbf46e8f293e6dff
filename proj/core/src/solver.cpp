#include "tcdirac/solver.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>

#include "tcdirac/eigen_solver_detail.hpp"
#include "tcdirac/shapes.hpp"

namespace tcdirac {

namespace {

Real resolve_tol_outer(const SolverConfig& cfg, Real eps0) {
  return cfg.tol_outer > 0 ? cfg.tol_outer : 1e-15 * std::max<Real>(1, std::abs(eps0));
}

PencilOptions pencil_options(const SolverConfig& cfg) {
  PencilOptions opt;
  opt.shift_offset = cfg.shift_offset;
  opt.tol_inner = cfg.tol_inner;
  return opt;
}

// Rayleigh quotient from the per-matrix value arrays; the per-matrix
// compensated forms keep the result at ulp level even though the combined
// integrands span many orders.
Real precise_rayleigh(const AssembledSystem& as, Real delta_eps, const VecX& y) {
  Real num = detail::quadratic_form_compensated(as.pattern, as.A_vals[0].data(), y);
  Real coef = 1;
  for (int k = 1; k <= as.k_max; ++k) {
    coef *= -delta_eps;
    if (coef == 0) break;
    const Real qk = detail::quadratic_form_compensated(as.pattern, as.A_vals[k].data(), y);
    const Real term = coef * qk;
    num += term;
    if (std::abs(term) < 1e-20 * std::abs(num)) break;
  }
  num += detail::quadratic_form_compensated(as.pattern, as.W_vals.data(), y);
  const Real den = detail::quadratic_form_compensated(as.pattern, as.S_vals.data(), y);
  return num / den;
}

}  // namespace

Real coarse_energy_guess(const PhysicalSystem& sys) {
  const Real zsum = sys.Z1 + sys.Z2;
  return -0.6 * zsum * zsum - 1.0;  // below the united-atom ground state
}

EigenResult schroedinger_solve(const AssembledSystem& as, const SolverConfig& cfg,
                               const PhysicalSystem& sys) {
  if (as.mode != Mode::nonrelativistic)
    throw invalid_parameter_error("schroedinger_solve needs a nonrelativistic assembly");
  VecX vals(as.nnz());
  as.combine_pencil(0, 0, vals);
  SpMat A = as.pattern;
  std::copy(vals.data(), vals.data() + A.nonZeros(), A.valuePtr());
  const SpMat S = as.matrix_S();
  const Real target = cfg.eps0.value_or(coarse_energy_guess(sys));
  const PencilResult pr = pencil_eigen_near(A, S, target, pencil_options(cfg));
  // re-extract the energy from the separate kinetic and potential forms
  const Real energy = precise_rayleigh(as, 0, pr.vector);
  return {energy, pr.vector, 1, pr.residual_norm};
}

EigenResult schroedinger_solve(const Mesh& mesh, const PhysicalSystem& sys,
                               const TransformSpec& spec, const SolverConfig& cfg) {
  if (sys.mode != Mode::nonrelativistic)
    throw invalid_parameter_error("schroedinger_solve requires nonrelativistic mode");
  const ShapeSet shapes(mesh.p);
  const AssembledSystem as = assemble_system(mesh, shapes, sys, spec, 0, 0, cfg.n_I);
  return schroedinger_solve(as, cfg, sys);
}

EigenResult minmax_solve(const AssembledSystem& as, const SolverConfig& cfg) {
  if (as.mode != Mode::relativistic)
    throw invalid_parameter_error("minmax_solve needs a relativistic assembly");
  const Real eps0 = as.eps0;
  const Real tol = resolve_tol_outer(cfg, eps0);

  // equilibrate by diag(S)^{-1/2}; the pencil spectrum is unchanged
  VecX d = as.matrix_S().diagonal();
  for (Index i = 0; i < as.dim; ++i) {
    if (!(d[i] > 0)) throw solver_error("overlap diagonal is not positive");
    d[i] = 1.0 / std::sqrt(d[i]);
  }
  VecX entry_scale(as.nnz());
  {
    const auto* outer = as.pattern.outerIndexPtr();
    const auto* inner = as.pattern.innerIndexPtr();
    for (int col = 0; col < as.pattern.outerSize(); ++col)
      for (auto idx = outer[col]; idx < outer[col + 1]; ++idx)
        entry_scale[idx] = d[inner[idx]] * d[col];
  }
  const VecX S_hat = as.S_vals.cwiseProduct(entry_scale);

  SpMat K = as.pattern;
  Eigen::SimplicialLDLT<SpMat> ldlt;
  ldlt.analyzePattern(K);

  const PencilOptions popt = pencil_options(cfg);
  VecX tmp(as.nnz()), avals_hat(as.nnz());

  Real eps = eps0;
  VecX x;  // scaled-metric iterate carried across outer iterations
  int outer = 0;
  Real residual = 0;
  Real prev_step = std::numeric_limits<Real>::infinity();
  for (int j = 0; j < cfg.max_outer; ++j) {
    const Real delta = eps - eps0;
    if (std::abs(delta) * as.g_inv_max >= 0.5)
      throw solver_error("expansion validity violated: |eps - eps0| * max(1/g) >= 0.5");
    auto factorize_at = [&](Real sigma) {
      as.combine_pencil(delta, sigma, tmp);
      tmp.array() *= entry_scale.array();
      std::copy(tmp.data(), tmp.data() + K.nonZeros(), K.valuePtr());
      ldlt.factorize(K);
      return ldlt.info() == Eigen::Success;
    };
    as.combine_pencil(delta, 0, tmp);
    avals_hat = tmp.cwiseProduct(entry_scale);
    const Real normA = detail::norm1_estimate(as.pattern, avals_hat.data());
    const PencilResult pr = detail::inverse_iterate(
        as.dim, eps, popt, x.size() == as.dim ? &x : nullptr, factorize_at,
        [&](const VecX& v) { return VecX(ldlt.solve(v)); },
        [&](const VecX& v) { return as.multiply(avals_hat, v); },
        [&](const VecX& v) { return as.multiply(S_hat, v); }, normA);
    x = pr.vector;
    residual = pr.residual_norm;
    ++outer;

    VecX y = x.cwiseProduct(d);
    const Real den = detail::quadratic_form_compensated(as.pattern, as.S_vals.data(), y);
    y /= std::sqrt(den);
    const Real lambda = precise_rayleigh(as, delta, y);

    // Newton step on lambda(eps) - eps = 0 with the Hellmann-Feynman slope
    Real slope = 0;
    if (as.k_max >= 1) {
      as.combine_derivative(delta, tmp);
      tmp.array() *= entry_scale.array();
      slope = x.dot(as.multiply(tmp, x));
    }
    const Real step = (lambda - eps) / (1.0 - slope);
    const Real eps_next = eps + step;
    const bool plateau =
        j >= 2 && std::abs(step) <= 64 * std::numeric_limits<Real>::epsilon() *
                                        std::max<Real>(1, std::abs(eps)) &&
        std::abs(step) >= 0.25 * prev_step;
    prev_step = std::abs(step);
    if (std::abs(step) <= tol || plateau) {
      eps = eps_next;
      const Real dfin = eps - eps0;
      // tail of the truncated expansion must stay below the stopping threshold
      if (as.k_max >= 1 && dfin != 0) {
        tmp = as.A_vals[as.k_max].cwiseProduct(entry_scale);
        const Real qk = std::abs(x.dot(as.multiply(tmp, x)));
        tmp = as.A_vals[as.k_max - 1].cwiseProduct(entry_scale);
        const Real qk1 = std::abs(x.dot(as.multiply(tmp, x)));
        const Real rho = qk1 > 0 ? qk / qk1 : as.g_inv_max;
        const Real r = std::abs(dfin) * rho;
        if (r < 1) {
          Real tail = qk * std::abs(dfin) * rho;
          for (int k = 0; k < as.k_max; ++k) tail *= std::abs(dfin);
          tail /= (1 - r);
          if (tail > std::max(tol, 8 * std::numeric_limits<Real>::epsilon() * std::abs(eps)))
            throw solver_error("k_max too small: truncated expansion tail exceeds tol_outer");
        }
      }
      EigenResult out;
      out.energy = eps;
      out.vector = y;
      out.outer_iters = outer;
      out.residual_norm = residual;
      return out;
    }
    eps = eps_next;
  }
  throw solver_error("minmax outer iteration did not converge within max_outer");
}

EigenResult minmax_solve(const Mesh& mesh, const PhysicalSystem& sys,
                         const TransformSpec& spec, const SolverConfig& cfg) {
  if (sys.mode != Mode::relativistic)
    throw invalid_parameter_error("minmax_solve requires relativistic mode");
  Real eps0;
  if (cfg.eps0) {
    eps0 = *cfg.eps0;
  } else {
    SolverConfig ncfg = cfg;
    ncfg.eps0.reset();
    eps0 = schroedinger_solve(mesh, sys.with_mode(Mode::nonrelativistic), spec, ncfg).energy;
  }
  const ShapeSet shapes(mesh.p);
  const AssembledSystem as =
      assemble_system(mesh, shapes, sys, spec, eps0, cfg.k_max, cfg.n_I);
  return minmax_solve(as, cfg);
}

}  // namespace tcdirac
