#include "tcdirac/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "tcdirac/mesh.hpp"

namespace tcdirac {

Real relativistic_shift(Real E_rel, Real E_nrel) { return E_rel - E_nrel; }

Real paired_shift(const RunKey& rel_key, Real E_rel, const RunKey& nrel_key, Real E_nrel) {
  if (!(rel_key == nrel_key))
    throw invalid_parameter_error(
        "shift requires both energies from identical mesh/transform/quadrature parameters");
  return relativistic_shift(E_rel, E_nrel);
}

FitResult fit_convergence_order(const std::vector<DataPoint>& rungs, Real E_ref,
                                Real noise_floor) {
  FitResult out;
  std::vector<Real> xs, ys;
  for (const auto& r : rungs) {
    const Real delta = std::abs(r.E - E_ref);
    if (delta <= noise_floor || delta == 0) {
      out.excluded.push_back(r.N);
      continue;
    }
    out.used.push_back(r.N);
    xs.push_back(std::log(static_cast<Real>(r.N)));
    ys.push_back(std::log(delta));
  }
  if (xs.size() < 3)
    throw insufficient_data_error("convergence-order fit needs at least 3 usable rungs");
  const size_t n = xs.size();
  Real mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  Real sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  out.q = -sxy / sxx;
  return out;
}

Extrapolation extrapolate(const std::vector<DataPoint>& rungs, std::optional<Real> q) {
  if (rungs.size() < 3)
    throw insufficient_data_error("extrapolation needs at least 3 rungs");
  const DataPoint p1 = rungs[rungs.size() - 3];
  const DataPoint p2 = rungs[rungs.size() - 2];
  const DataPoint p3 = rungs[rungs.size() - 1];
  if (p1.E == p2.E || p2.E == p3.E) return {p3.E, 0, 0, true};

  Real qv;
  if (q) {
    qv = *q;
    if (!(qv > 0)) throw invalid_parameter_error("extrapolation order q must be positive");
  } else {
    // three-rung elimination: match (E1-E2)/(E2-E3) of the power-law model
    const Real target = (p1.E - p2.E) / (p2.E - p3.E);
    const Real r21 = static_cast<Real>(p2.N) / p1.N;
    const Real r32 = static_cast<Real>(p3.N) / p2.N;
    auto f = [&](Real qq) {
      const Real u = std::pow(r21, qq);
      const Real v = std::pow(r32, qq);
      return (u - 1) * v / (v - 1);
    };
    Real lo = 0.05, hi = 60;
    if (!(target > f(lo) && target < f(hi)))
      throw insufficient_data_error("rung sequence is not consistent with a power law");
    for (int it = 0; it < 200; ++it) {
      const Real mid = 0.5 * (lo + hi);
      if (f(mid) < target)
        lo = mid;
      else
        hi = mid;
    }
    qv = 0.5 * (lo + hi);
  }
  const Real w2 = std::pow(static_cast<Real>(p2.N), -qv);
  const Real w3 = std::pow(static_cast<Real>(p3.N), -qv);
  const Real C = (p2.E - p3.E) / (w2 - w3);
  Extrapolation out;
  out.value = p3.E - C * w3;
  out.q_used = qv;
  const Real r = static_cast<Real>(p3.N) / p2.N;
  out.uncertainty = std::abs(out.value - p3.E) / (std::pow(r, qv) - 1);
  return out;
}

namespace {

void fill_observable(SequenceResult::Observable& obs, const std::vector<DataPoint>& pts,
                     std::optional<Real> q_user, Real noise_floor) {
  try {
    const Extrapolation ex = extrapolate(pts, q_user);
    obs.E_extrap = ex.value;
    obs.uncertainty = ex.uncertainty;
    if (ex.degenerate) {
      obs.note = "degenerate rungs";
      return;
    }
    try {
      const FitResult fit = fit_convergence_order(pts, ex.value, noise_floor);
      obs.q = fit.q;
      if (!fit.excluded.empty()) {
        obs.note = "excluded below noise floor:";
        for (Index n : fit.excluded) obs.note += " " + std::to_string(n);
      }
    } catch (const insufficient_data_error& e) {
      obs.note = e.what();
    }
  } catch (const insufficient_data_error& e) {
    obs.note = e.what();
  }
}

Rung compute_rung(const LadderParams& par, const TransformSpec& spec, int m,
                  std::optional<Real> eps0_chain) {
  const Mesh mesh = build_mesh(m, par.p, spec.s_max);
  SolverConfig cfg = par.solver;
  cfg.eps0.reset();
  const EigenResult nr =
      schroedinger_solve(mesh, par.sys.with_mode(Mode::nonrelativistic), spec, cfg);
  cfg.eps0 = eps0_chain ? eps0_chain : std::optional<Real>(nr.energy);
  const EigenResult rl = minmax_solve(mesh, par.sys.with_mode(Mode::relativistic), spec, cfg);
  Rung rung;
  rung.m = m;
  rung.Ne = mesh.ne();
  rung.N = mesh.n_nodes();
  rung.E_rel = rl.energy;
  rung.E_nrel = nr.energy;
  rung.shift = relativistic_shift(rl.energy, nr.energy);
  rung.outer_iters = rl.outer_iters;
  return rung;
}

}  // namespace

SequenceResult run_ladder(const LadderParams& par) {
  if (par.m_list.empty()) throw invalid_parameter_error("ladder needs a non-empty m list");
  const TransformSpec spec = make_transform(par.nu, par.D_max, par.sys.R);
  SequenceResult out;
  out.rungs.resize(par.m_list.size());
  if (par.workers <= 1) {
    // sequential: warm-start each rung's expansion point from the previous one
    std::optional<Real> chain;
    for (size_t i = 0; i < par.m_list.size(); ++i) {
      out.rungs[i] = compute_rung(par, spec, par.m_list[i], chain);
      chain = out.rungs[i].E_rel;
    }
  } else {
    // independent rungs; each seeds its expansion point from its own
    // nonrelativistic solve
    std::vector<std::future<Rung>> futs(par.m_list.size());
    size_t next = 0;
    while (next < par.m_list.size()) {
      const size_t batch = std::min<size_t>(par.workers, par.m_list.size() - next);
      for (size_t i = 0; i < batch; ++i) {
        const int m = par.m_list[next + i];
        futs[next + i] = std::async(std::launch::async, [&par, &spec, m] {
          return compute_rung(par, spec, m, std::nullopt);
        });
      }
      for (size_t i = 0; i < batch; ++i) out.rungs[next + i] = futs[next + i].get();
      next += batch;
    }
  }

  const Real floor = par.noise_floor >= 0
                         ? par.noise_floor
                         : 1e-13 * std::max<Real>(1, std::abs(out.rungs.back().E_rel));
  std::vector<DataPoint> pr, pn, ps;
  for (const auto& r : out.rungs) {
    pr.push_back({r.N, r.E_rel});
    pn.push_back({r.N, r.E_nrel});
    ps.push_back({r.N, r.shift});
  }
  fill_observable(out.rel, pr, par.q_user, floor);
  fill_observable(out.nrel, pn, par.q_user, floor);
  fill_observable(out.shift, ps, par.q_user, floor);
  return out;
}

std::vector<ScanEntry> run_dmax_scan(const LadderParams& par, int m,
                                     const std::vector<Real>& dmax_list) {
  if (dmax_list.empty()) throw invalid_parameter_error("dmax scan needs a non-empty list");
  std::vector<ScanEntry> out(dmax_list.size());
  auto one = [&](size_t i) {
    const TransformSpec spec = make_transform(par.nu, dmax_list[i], par.sys.R);
    out[i] = {dmax_list[i], compute_rung(par, spec, m, std::nullopt)};
  };
  if (par.workers <= 1) {
    for (size_t i = 0; i < dmax_list.size(); ++i) one(i);
  } else {
    std::vector<std::future<void>> futs(dmax_list.size());
    size_t next = 0;
    while (next < dmax_list.size()) {
      const size_t batch = std::min<size_t>(par.workers, dmax_list.size() - next);
      for (size_t i = 0; i < batch; ++i)
        futs[next + i] = std::async(std::launch::async, one, next + i);
      for (size_t i = 0; i < batch; ++i) futs[next + i].get();
      next += batch;
    }
  }
  return out;
}

}  // namespace tcdirac
