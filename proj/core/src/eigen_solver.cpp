#include "tcdirac/eigen_solver.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <functional>
#include <limits>

#include "tcdirac/eigen_solver_detail.hpp"

namespace tcdirac {

namespace detail {

void seed_vector(VecX& x) {
  // fixed-seed LCG; keeps runs bit-reproducible across standard libraries
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  for (Index i = 0; i < x.size(); ++i) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    x[i] = static_cast<Real>(state >> 11) / static_cast<Real>(1ull << 53) - 0.5;
  }
}

Real norm1_estimate(const SpMat& pattern, const Real* values) {
  const auto* outer = pattern.outerIndexPtr();
  Real best = 0;
  for (int col = 0; col < pattern.outerSize(); ++col) {
    Real s = 0;
    for (auto idx = outer[col]; idx < outer[col + 1]; ++idx) s += std::abs(values[idx]);
    best = std::max(best, s);
  }
  return best;
}

namespace {

// Dekker/Veltkamp exact product and Knuth two-sum.
inline void two_prod(Real a, Real b, Real& p, Real& e) {
  constexpr Real split = 134217729.0;  // 2^27 + 1
  p = a * b;
  const Real a1 = a * split, b1 = b * split;
  const Real ah = a1 - (a1 - a), bh = b1 - (b1 - b);
  const Real al = a - ah, bl = b - bh;
  e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
}

inline void two_sum(Real a, Real b, Real& s, Real& e) {
  s = a + b;
  const Real v = s - a;
  e = (a - v) + (b - (s - v));
}

}  // namespace

Real quadratic_form_compensated(const SpMat& pattern, const Real* values, const VecX& y) {
  const auto* outer = pattern.outerIndexPtr();
  const auto* inner = pattern.innerIndexPtr();
  Real hi = 0, lo = 0;
  for (int col = 0; col < pattern.outerSize(); ++col) {
    const Real yc = y[col];
    if (yc == 0) continue;
    for (auto idx = outer[col]; idx < outer[col + 1]; ++idx) {
      const Real v = values[idx];
      if (v == 0) continue;
      Real p1, e1, p2, e2;
      two_prod(v, yc, p1, e1);
      two_prod(p1, y[inner[idx]], p2, e2);
      e2 += e1 * y[inner[idx]];
      Real s, e3;
      two_sum(hi, p2, s, e3);
      hi = s;
      lo += e3 + e2;
    }
  }
  return hi + lo;
}

PencilResult inverse_iterate(Index dim, Real target, const PencilOptions& opt,
                             const VecX* warm,
                             const std::function<bool(Real)>& factorize_at,
                             const std::function<VecX(const VecX&)>& solve_K,
                             const std::function<VecX(const VecX&)>& apply_A,
                             const std::function<VecX(const VecX&)>& apply_S,
                             Real normA_est) {
  const Real offset = opt.shift_offset >= 0 ? opt.shift_offset
                                            : 1e-2 * std::max<Real>(1, std::abs(target));
  // jittered placements below the target, used when a factorization fails
  static constexpr Real kRetryScale[] = {1.0, 1.37, 0.63, 2.11, 4.0};
  Real sigma = target;
  bool ok = false;
  for (int attempt = 0; attempt < opt.max_shift_retries && !ok; ++attempt) {
    const Real scale = attempt < 5 ? kRetryScale[attempt] : std::pow(4.0, attempt - 2);
    sigma = target - offset * scale;
    ok = factorize_at(sigma);
  }
  if (!ok) throw solver_error("pencil factorization failed for every shift placement");

  VecX x(dim);
  if (warm && warm->size() == dim)
    x = *warm;
  else
    seed_vector(x);
  {
    const Real nrm = std::sqrt(x.dot(apply_S(x)));
    if (!(nrm > 0)) throw solver_error("degenerate start vector");
    x /= nrm;
  }

  PencilResult best;
  best.residual_norm = std::numeric_limits<Real>::infinity();
  Real prev_theta = std::numeric_limits<Real>::infinity();
  int stable = 0;
  int refactors = 0;
  for (int it = 1; it <= opt.max_inner; ++it) {
    VecX y = solve_K(apply_S(x));
    const Real nrm2 = y.dot(apply_S(y));
    if (!(nrm2 > 0) || !std::isfinite(nrm2)) {
      // singular or broken factorization; move the shift and restart the step
      if (refactors < opt.max_refactor &&
          factorize_at(sigma - 0.1 * std::max<Real>(std::abs(offset), 1e-8))) {
        ++refactors;
        continue;
      }
      throw pencil_failure("inverse iteration produced a degenerate vector", best);
    }
    y /= std::sqrt(nrm2);
    const VecX Ay = apply_A(y);
    const VecX Sy = apply_S(y);
    const Real theta = y.dot(Ay);
    const VecX r = Ay - theta * Sy;
    const Real res_ref = r.norm() / (std::max<Real>(normA_est, 1e-300) * y.norm());
    const Real res_guard = r.norm() / (Ay.norm() + std::abs(theta) * Sy.norm());
    x = y;
    if (res_ref < best.residual_norm) {
      best.eigenvalue = theta;
      best.vector = y;
      best.iterations = it;
      best.residual_norm = res_ref;
    }
    stable = std::abs(theta - prev_theta) <= opt.tol_inner * std::max<Real>(1, std::abs(theta))
                 ? stable + 1
                 : 0;
    prev_theta = theta;
    if (stable >= 2 && res_guard <= 1e-4) {
      best.eigenvalue = theta;
      best.vector = y;
      best.iterations = it;
      best.residual_norm = res_ref;
      return best;
    }
    if (it % 8 == 0 && refactors < opt.max_refactor) {
      // Rayleigh re-shift accelerates once the iterate is close
      if (factorize_at(theta) ||
          factorize_at(theta - std::max<Real>(1e-10 * std::abs(theta), 1e-12)))
        ++refactors;
      else
        factorize_at(sigma);  // keep a usable factorization
    }
  }
  throw pencil_failure("inverse iteration did not reach the residual threshold", best);
}

void scale_symmetric(SpMat& m, const VecX& d) {
  for (int col = 0; col < m.outerSize(); ++col)
    for (SpMat::InnerIterator it(m, col); it; ++it)
      it.valueRef() *= d[it.row()] * d[col];
}

}  // namespace detail

PencilResult pencil_eigen_near(const SpMat& A, const SpMat& S, Real target,
                               const PencilOptions& opt, const VecX* warm_start) {
  if (A.rows() != A.cols() || S.rows() != S.cols() || A.rows() != S.rows())
    throw invalid_parameter_error("pencil matrices must be square and of equal size");
  const Index dim = A.rows();
  VecX d = S.diagonal();
  for (Index i = 0; i < dim; ++i) {
    if (!(d[i] > 0)) throw solver_error("overlap diagonal is not positive");
    d[i] = 1.0 / std::sqrt(d[i]);
  }
  SpMat Ah = A, Sh = S;
  detail::scale_symmetric(Ah, d);
  detail::scale_symmetric(Sh, d);
  const Real normA = detail::norm1_estimate(Ah, Ah.valuePtr());

  Eigen::SimplicialLDLT<SpMat> ldlt;
  bool analyzed = false;
  SpMat K;
  auto factorize_at = [&](Real sigma) {
    K = Ah - sigma * Sh;
    if (!analyzed) {
      ldlt.analyzePattern(K);
      analyzed = true;
    }
    ldlt.factorize(K);
    return ldlt.info() == Eigen::Success;
  };

  VecX warm_scaled;
  const VecX* warm = nullptr;
  if (warm_start && warm_start->size() == dim) {
    warm_scaled = warm_start->cwiseQuotient(d);
    warm = &warm_scaled;
  }

  PencilResult res = detail::inverse_iterate(
      dim, target, opt, warm, factorize_at,
      [&](const VecX& v) { return VecX(ldlt.solve(v)); },
      [&](const VecX& v) { return VecX(Ah * v); },
      [&](const VecX& v) { return VecX(Sh * v); }, normA);
  // precise Rayleigh quotient in the original metric
  res.vector = res.vector.cwiseProduct(d);
  const Real num = detail::quadratic_form_compensated(A, A.valuePtr(), res.vector);
  const Real den = detail::quadratic_form_compensated(S, S.valuePtr(), res.vector);
  res.eigenvalue = num / den;
  res.vector /= std::sqrt(den);
  return res;
}

}  // namespace tcdirac
