#include "tcdirac/transform.hpp"

#include <cmath>
#include <numbers>
#include <tuple>

namespace tcdirac {

namespace {

void check_nu(int nu) {
  if (nu < 2 || nu > 10 || nu % 2 != 0)
    throw invalid_parameter_error("nu must be even in 2..10, got " + std::to_string(nu));
}

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Horner evaluation of sum_i d_i * z^(nu/2 + i - 1) with z = S^2(x/2).
Real series_sum(const std::vector<long long>& d, int nu, Real z) {
  Real acc = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) acc = acc * z + static_cast<Real>(*it);
  Real zp = 1;
  for (int i = 0; i < nu / 2; ++i) zp *= z;
  return acc * zp;
}

Real ipow_odd(Real x, int e) {
  Real r = x;
  for (int i = 1; i < e; ++i) r *= x;
  return r;
}

}  // namespace

long long derivative_prefactor(int n) {
  // (2n+1)!/(n! 2^n) = product of odd numbers 1*3*...*(2n+1)
  long long r = 1;
  for (int k = 1; k <= 2 * n + 1; k += 2) r *= k;
  return r;
}

std::vector<long long> transform_coefficients(int nu, Branch branch) {
  check_nu(nu);
  const int n = nu / 2 - 1;
  long long fact_n = 1;
  for (int i = 2; i <= n; ++i) fact_n *= i;
  std::vector<long long> d(nu / 2);
  for (int i = 1; i <= nu / 2; ++i) {
    const long long num = derivative_prefactor(n) * (1LL << nu) * binom(n, i - 1);
    const long long den = nu + 2 * (i - 1);
    if (branch == Branch::sinh_xi) {
      d[i - 1] = num / den;
      if (d[i - 1] * den != num) throw construction_error("non-integer sinh coefficient");
    } else {
      const long long den2 = den * (1LL << n) * fact_n;
      long long v = num / den2;
      if (v * den2 != num) throw construction_error("non-integer sin coefficient");
      d[i - 1] = (i % 2 == 0) ? v : -v;
    }
  }
  return d;
}

XiEval eval_xi(const TransformSpec& spec, Real s) {
  if (!(s >= 0)) throw branch_domain_error("xi branch requires s >= 0");
  const Real sig = std::sinh(s / 2);
  const Real xm1 = series_sum(spec.d_sinh, spec.nu, sig * sig);
  const int n = spec.nu / 2 - 1;
  const Real dxi = spec.dpre_sinh * ipow_odd(std::sinh(s), 2 * n + 1);
  return {1.0 + xm1, xm1, dxi};
}

EtaEval eval_eta(const TransformSpec& spec, Real t) {
  constexpr Real pi = std::numbers::pi_v<Real>;
  if (!(t >= 0 && t <= pi)) throw branch_domain_error("eta branch requires 0 <= t <= pi");
  // Fold about pi/2 using the exact odd symmetry eta(pi-t) = -eta(t), so that
  // both 1-eta and 1+eta come out of the small-argument series directly.
  const bool upper = t > pi / 2;
  const Real tf = upper ? pi - t : t;
  const Real sig = std::sin(tf / 2);
  const Real q = -series_sum(spec.d_sin, spec.nu, sig * sig);  // 1 - eta(tf) in [0, 1]
  const int n = spec.nu / 2 - 1;
  const Real deta = -spec.dpre_sin * ipow_odd(std::sin(t), 2 * n + 1);
  const Real one_m = upper ? 2.0 - q : q;
  const Real one_p = upper ? q : 2.0 - q;
  const Real eta = upper ? q - 1.0 : 1.0 - q;
  return {eta, one_m, one_p, deta};
}

std::pair<Real, Real> map_coordinate(Real x, const TransformSpec& spec, Branch branch) {
  if (branch == Branch::sinh_xi) {
    const XiEval e = eval_xi(spec, x);
    return {e.xi, e.dxi_ds};
  }
  const EtaEval e = eval_eta(spec, x);
  return {e.eta, e.deta_dt};
}

std::pair<Real, Real> domain_from_dmax(Real D_max, Real R, int nu) {
  check_nu(nu);
  if (!(D_max > 0) || !(R > 0))
    throw invalid_parameter_error("domain_from_dmax requires D_max > 0 and R > 0");
  const Real xi_max = (D_max + std::sqrt(D_max * D_max + R * R)) / R;

  TransformSpec tmp;
  tmp.nu = nu;
  tmp.d_sinh = transform_coefficients(nu, Branch::sinh_xi);
  tmp.dpre_sinh = static_cast<Real>(derivative_prefactor(nu / 2 - 1));

  Real lo = 0, hi = 1;
  while (eval_xi(tmp, hi).xi < xi_max) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    const Real mid = 0.5 * (lo + hi);
    if (eval_xi(tmp, mid).xi < xi_max)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-16 * hi) break;
  }
  const Real s_max = 0.5 * (lo + hi);
  if (std::abs(eval_xi(tmp, s_max).xi - xi_max) > 1e-13 * xi_max)
    throw construction_error("s_max root-finding failed to reach 1e-13 relative");
  return {xi_max, s_max};
}

TransformSpec make_transform(int nu, Real D_max, Real R) {
  check_nu(nu);
  TransformSpec spec;
  spec.nu = nu;
  spec.d_sinh = transform_coefficients(nu, Branch::sinh_xi);
  spec.d_sin = transform_coefficients(nu, Branch::sin_eta);
  const int n = nu / 2 - 1;
  long long fact_n = 1;
  for (int i = 2; i <= n; ++i) fact_n *= i;
  spec.dpre_sinh = static_cast<Real>(derivative_prefactor(n));
  spec.dpre_sin = spec.dpre_sinh / static_cast<Real>((1LL << n) * fact_n);
  spec.D_max = D_max;
  std::tie(spec.xi_max, spec.s_max) = domain_from_dmax(D_max, R, nu);
  return spec;
}

}  // namespace tcdirac
