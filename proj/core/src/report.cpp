#include "tcdirac/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "tcdirac/mesh.hpp"

namespace tcdirac {

namespace {

using nlohmann::json;

json observable_json(const SequenceResult::Observable& o, const char* field) {
  (void)field;
  json j;
  j["q"] = o.q ? json(*o.q) : json(nullptr);
  j["E_extrap"] = o.E_extrap ? json(*o.E_extrap) : json(nullptr);
  j["uncertainty"] = o.uncertainty ? json(*o.uncertainty) : json(nullptr);
  if (!o.note.empty()) j["note"] = o.note;
  return j;
}

void append_rung_csv(std::ostringstream& os, const Rung& r) {
  os << r.m << ',' << r.Ne << ',' << r.N << ',' << format_energy(r.E_rel) << ','
     << format_energy(r.E_nrel) << ',' << format_energy(r.shift) << ',' << r.outer_iters
     << '\n';
}

void append_footer_csv(std::ostringstream& os, const char* name,
                       const SequenceResult::Observable& o) {
  os << "# q_" << name << " = " << (o.q ? format_energy(*o.q) : "nan") << '\n';
  os << "# E_extrap_" << name << " = "
     << (o.E_extrap ? format_energy(*o.E_extrap) : "nan") << '\n';
  os << "# uncertainty_" << name << " = "
     << (o.uncertainty ? format_energy(*o.uncertainty) : "nan") << '\n';
  if (!o.note.empty()) os << "# note_" << name << " = " << o.note << '\n';
}

json rung_json(const Rung& r) {
  json j;
  j["m"] = r.m;
  j["Ne"] = r.Ne;
  j["N"] = r.N;
  j["E_rel"] = r.E_rel;
  j["E_nrel"] = r.E_nrel;
  j["shift"] = r.shift;
  j["outer_iters"] = r.outer_iters;
  return j;
}

SequenceResult run_solve(const RunConfig& cfg) {
  const PhysicalSystem sys =
      PhysicalSystem::make(cfg.Z1, cfg.Z2, cfg.R, cfg.mode, cfg.jz, cfg.alpha);
  const TransformSpec spec = make_transform(cfg.nu, cfg.D_max, cfg.R);
  const Mesh mesh = build_mesh(cfg.m, cfg.p, spec.s_max);
  SolverConfig scfg;
  scfg.eps0 = cfg.eps0;
  scfg.k_max = cfg.k_max;
  scfg.tol_outer = cfg.tol_outer;
  scfg.max_outer = cfg.max_outer;
  scfg.tol_inner = cfg.tol_inner;
  scfg.shift_offset = cfg.shift_offset;
  scfg.n_I = cfg.n_I;
  SequenceResult seq;
  Rung rung;
  rung.m = cfg.m;
  rung.Ne = mesh.ne();
  rung.N = mesh.n_nodes();
  const Real nan = std::nan("");
  if (cfg.mode == Mode::relativistic) {
    const EigenResult r = minmax_solve(mesh, sys, spec, scfg);
    rung.E_rel = r.energy;
    rung.E_nrel = nan;
    rung.shift = nan;
    rung.outer_iters = r.outer_iters;
  } else {
    const EigenResult r = schroedinger_solve(mesh, sys, spec, scfg);
    rung.E_rel = nan;
    rung.E_nrel = r.energy;
    rung.shift = nan;
    rung.outer_iters = r.outer_iters;
  }
  seq.rungs.push_back(rung);
  return seq;
}

LadderParams ladder_params(const RunConfig& cfg) {
  LadderParams par;
  par.sys = PhysicalSystem::make(cfg.Z1, cfg.Z2, cfg.R, Mode::relativistic, cfg.jz, cfg.alpha);
  par.nu = cfg.nu;
  par.D_max = cfg.D_max;
  par.p = cfg.p;
  par.m_list = cfg.m_list;
  par.solver.eps0 = cfg.eps0;
  par.solver.k_max = cfg.k_max;
  par.solver.tol_outer = cfg.tol_outer;
  par.solver.max_outer = cfg.max_outer;
  par.solver.tol_inner = cfg.tol_inner;
  par.solver.shift_offset = cfg.shift_offset;
  par.solver.n_I = cfg.n_I;
  par.workers = cfg.workers;
  par.q_user = cfg.q;
  par.noise_floor = cfg.noise_floor;
  return par;
}

}  // namespace

std::string format_energy(Real v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  std::string s = buf;
  if (s == "-nan") s = "nan";
  return s;
}

std::string render_csv(const RunConfig& cfg, const SequenceResult& seq) {
  std::ostringstream os;
  os << "m,Ne,N,E_rel,E_nrel,shift,outer_iters\n";
  for (const Rung& r : seq.rungs) append_rung_csv(os, r);
  if (cfg.command == Command::ladder) {
    append_footer_csv(os, "E_rel", seq.rel);
    append_footer_csv(os, "E_nrel", seq.nrel);
    append_footer_csv(os, "shift", seq.shift);
  } else if (cfg.command == Command::shift) {
    append_footer_csv(os, "shift", seq.shift);
  }
  return os.str();
}

std::string render_json(const RunConfig& cfg, const SequenceResult& seq) {
  json j;
  j["command"] = command_name(cfg.command);
  j["rungs"] = json::array();
  for (const Rung& r : seq.rungs) j["rungs"].push_back(rung_json(r));
  if (cfg.command != Command::solve) {
    j["q_fit"] = {{"E_rel", seq.rel.q ? json(*seq.rel.q) : json(nullptr)},
                  {"E_nrel", seq.nrel.q ? json(*seq.nrel.q) : json(nullptr)},
                  {"shift", seq.shift.q ? json(*seq.shift.q) : json(nullptr)}};
    j["E_extrap"] = {{"E_rel", seq.rel.E_extrap ? json(*seq.rel.E_extrap) : json(nullptr)},
                     {"E_nrel", seq.nrel.E_extrap ? json(*seq.nrel.E_extrap) : json(nullptr)},
                     {"shift", seq.shift.E_extrap ? json(*seq.shift.E_extrap) : json(nullptr)}};
    j["uncertainty"] = {
        {"E_rel", seq.rel.uncertainty ? json(*seq.rel.uncertainty) : json(nullptr)},
        {"E_nrel", seq.nrel.uncertainty ? json(*seq.nrel.uncertainty) : json(nullptr)},
        {"shift", seq.shift.uncertainty ? json(*seq.shift.uncertainty) : json(nullptr)}};
    j["observables"] = {{"E_rel", observable_json(seq.rel, "E_rel")},
                        {"E_nrel", observable_json(seq.nrel, "E_nrel")},
                        {"shift", observable_json(seq.shift, "shift")}};
  }
  return j.dump(2) + "\n";
}

std::string render_scan_csv(const RunConfig& cfg, const std::vector<ScanEntry>& scan) {
  (void)cfg;
  std::ostringstream os;
  os << "D_max,m,Ne,N,E_rel,E_nrel,shift,outer_iters\n";
  for (const ScanEntry& e : scan) {
    os << format_energy(e.D_max) << ',';
    append_rung_csv(os, e.rung);
  }
  return os.str();
}

std::string render_scan_json(const RunConfig& cfg, const std::vector<ScanEntry>& scan) {
  json j;
  j["command"] = command_name(cfg.command);
  j["scan"] = json::array();
  for (const ScanEntry& e : scan) {
    json r = rung_json(e.rung);
    r["D_max"] = e.D_max;
    j["scan"].push_back(r);
  }
  return j.dump(2) + "\n";
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  try {
    if (cfg.command == Command::dmax_scan) {
      LadderParams par = ladder_params(cfg);
      const auto scan = run_dmax_scan(par, cfg.m, cfg.D_max_list);
      out << (cfg.format == OutputFormat::csv ? render_scan_csv(cfg, scan)
                                              : render_scan_json(cfg, scan));
      return 0;
    }
    SequenceResult seq;
    if (cfg.command == Command::solve) {
      seq = run_solve(cfg);
    } else {
      seq = run_ladder(ladder_params(cfg));
    }
    out << (cfg.format == OutputFormat::csv ? render_csv(cfg, seq) : render_json(cfg, seq));
    return 0;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << " [command=" << command_name(cfg.command)
         << " Z1=" << cfg.Z1 << " Z2=" << cfg.Z2 << " R=" << cfg.R << " nu=" << cfg.nu
         << " D_max=" << cfg.D_max << " p=" << cfg.p << "]\n";
    out << "# FAILED: " << e.what() << '\n';
    return 1;
  }
}

int run_to_output(const RunConfig& cfg, std::ostream& diag) {
  if (cfg.out.empty() || cfg.out == "-") return run(cfg, std::cout, diag);
  std::ofstream f(cfg.out);
  if (!f) {
    diag << "error: cannot open output file '" << cfg.out << "'\n";
    return 1;
  }
  return run(cfg, f, diag);
}

}  // namespace tcdirac
