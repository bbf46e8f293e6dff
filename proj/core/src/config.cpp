#include "tcdirac/config.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "tcdirac/transform.hpp"

namespace tcdirac {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Real parse_real(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const Real r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw invalid_parameter_error("key '" + key + "': malformed real value '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const int r = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw invalid_parameter_error("key '" + key + "': malformed integer value '" + v + "'");
  }
}

template <class T, class F>
std::vector<T> parse_list(const std::string& key, const std::string& v, F item) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(item(key, trim(tok)));
  if (out.empty()) throw invalid_parameter_error("key '" + key + "': empty list");
  return out;
}

std::string fmt_real(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::solve: return "solve";
    case Command::ladder: return "ladder";
    case Command::shift: return "shift";
    case Command::dmax_scan: return "dmax-scan";
  }
  return "?";
}

const char* format_name(OutputFormat f) {
  return f == OutputFormat::csv ? "csv" : "json";
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw invalid_parameter_error("config line " + std::to_string(lineno) +
                                    ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!seen.insert(key).second)
      throw invalid_parameter_error("key '" + key + "': duplicated");

    if (key == "command") {
      if (val == "solve") cfg.command = Command::solve;
      else if (val == "ladder") cfg.command = Command::ladder;
      else if (val == "shift") cfg.command = Command::shift;
      else if (val == "dmax-scan") cfg.command = Command::dmax_scan;
      else throw invalid_parameter_error("key 'command': must be solve|ladder|shift|dmax-scan");
    } else if (key == "format") {
      if (val == "csv") cfg.format = OutputFormat::csv;
      else if (val == "json") cfg.format = OutputFormat::json;
      else throw invalid_parameter_error("key 'format': must be csv|json");
    } else if (key == "out") {
      cfg.out = val;
    } else if (key == "workers") {
      cfg.workers = parse_int(key, val);
    } else if (key == "Z1") {
      cfg.Z1 = parse_real(key, val);
    } else if (key == "Z2") {
      cfg.Z2 = parse_real(key, val);
    } else if (key == "R") {
      cfg.R = parse_real(key, val);
    } else if (key == "alpha") {
      cfg.alpha = parse_real(key, val);
    } else if (key == "jz") {
      cfg.jz = parse_real(key, val);
    } else if (key == "mode") {
      if (val == "relativistic") cfg.mode = Mode::relativistic;
      else if (val == "nonrelativistic") cfg.mode = Mode::nonrelativistic;
      else throw invalid_parameter_error("key 'mode': must be relativistic|nonrelativistic");
    } else if (key == "nu") {
      cfg.nu = parse_int(key, val);
    } else if (key == "D_max") {
      if (val.find(',') != std::string::npos)
        cfg.D_max_list = parse_list<Real>(key, val, parse_real);
      else
        cfg.D_max = parse_real(key, val);
    } else if (key == "D_max_list") {
      cfg.D_max_list = parse_list<Real>(key, val, parse_real);
    } else if (key == "p") {
      cfg.p = parse_int(key, val);
    } else if (key == "m") {
      cfg.m = parse_int(key, val);
    } else if (key == "m_list") {
      cfg.m_list = parse_list<int>(key, val, parse_int);
    } else if (key == "n_I") {
      cfg.n_I = parse_int(key, val);
    } else if (key == "k_max") {
      cfg.k_max = parse_int(key, val);
    } else if (key == "eps0") {
      cfg.eps0 = parse_real(key, val);
    } else if (key == "tol_outer") {
      cfg.tol_outer = parse_real(key, val);
    } else if (key == "max_outer") {
      cfg.max_outer = parse_int(key, val);
    } else if (key == "tol_inner") {
      cfg.tol_inner = parse_real(key, val);
    } else if (key == "shift_offset") {
      cfg.shift_offset = parse_real(key, val);
    } else if (key == "q") {
      if (val == "auto") cfg.q.reset();
      else cfg.q = parse_real(key, val);
    } else if (key == "noise_floor") {
      cfg.noise_floor = parse_real(key, val);
    } else {
      throw invalid_parameter_error("unknown key '" + key + "'");
    }
  }

  // validate against module preconditions before any computation
  PhysicalSystem::make(cfg.Z1, cfg.Z2, cfg.R, cfg.mode, cfg.jz, cfg.alpha);
  if (cfg.nu % 2 != 0 || cfg.nu < 2 || cfg.nu > 10)
    throw invalid_parameter_error("key 'nu': nu must be even in 2..10");
  if (cfg.p < 1 || cfg.p > 12)
    throw invalid_parameter_error("key 'p': order must be in 1..12");
  if (cfg.n_I < 2 || cfg.n_I > 40)
    throw invalid_parameter_error("key 'n_I': points per direction must be in 2..40");
  if (cfg.k_max < 0 || cfg.k_max > 12)
    throw invalid_parameter_error("key 'k_max': must be in 0..12");
  if (cfg.max_outer < 1) throw invalid_parameter_error("key 'max_outer': must be >= 1");
  if (cfg.workers < 1) throw invalid_parameter_error("key 'workers': must be >= 1");
  if (cfg.q && !(*cfg.q > 0)) throw invalid_parameter_error("key 'q': must be positive or auto");

  const bool needs_dlist = cfg.command == Command::dmax_scan;
  if (needs_dlist) {
    if (cfg.D_max_list.empty())
      throw invalid_parameter_error("dmax-scan requires a D_max list (key 'D_max' or 'D_max_list')");
    for (Real dv : cfg.D_max_list)
      if (!(dv > 0)) throw invalid_parameter_error("key 'D_max': every entry must be positive");
    if (cfg.m < 1) throw invalid_parameter_error("dmax-scan requires key 'm' >= 1");
  } else {
    if (!(cfg.D_max > 0)) throw invalid_parameter_error("key 'D_max': must be positive");
  }
  if (cfg.command == Command::solve) {
    if (cfg.m < 1) throw invalid_parameter_error("solve requires key 'm' >= 1");
  } else if (cfg.command == Command::ladder || cfg.command == Command::shift) {
    if (cfg.m_list.empty() && cfg.m >= 1) cfg.m_list = {cfg.m};
    if (cfg.m_list.empty())
      throw invalid_parameter_error("ladder/shift require key 'm_list'");
    for (size_t i = 0; i < cfg.m_list.size(); ++i) {
      if (cfg.m_list[i] < 1)
        throw invalid_parameter_error("key 'm_list': entries must be >= 1");
      if (i > 0 && cfg.m_list[i] <= cfg.m_list[i - 1])
        throw invalid_parameter_error("key 'm_list': must be strictly increasing");
    }
  }
  if (cfg.eps0 && cfg.mode == Mode::relativistic) {
    const Real c2 = 1.0 / (cfg.alpha * cfg.alpha);
    if (!(*cfg.eps0 > -2 * c2 && *cfg.eps0 < 0))
      throw invalid_parameter_error("key 'eps0': must lie in the electronic window (-2c^2, 0)");
  }
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "command = " << command_name(cfg.command) << "\n";
  os << "format = " << format_name(cfg.format) << "\n";
  if (!cfg.out.empty()) os << "out = " << cfg.out << "\n";
  os << "workers = " << cfg.workers << "\n";
  os << "Z1 = " << fmt_real(cfg.Z1) << "\n";
  os << "Z2 = " << fmt_real(cfg.Z2) << "\n";
  os << "R = " << fmt_real(cfg.R) << "\n";
  os << "alpha = " << fmt_real(cfg.alpha) << "\n";
  os << "jz = " << fmt_real(cfg.jz) << "\n";
  os << "mode = " << (cfg.mode == Mode::relativistic ? "relativistic" : "nonrelativistic") << "\n";
  os << "nu = " << cfg.nu << "\n";
  if (!cfg.D_max_list.empty()) {
    os << "D_max_list = ";
    for (size_t i = 0; i < cfg.D_max_list.size(); ++i)
      os << (i ? "," : "") << fmt_real(cfg.D_max_list[i]);
    os << "\n";
  }
  if (cfg.D_max > 0) os << "D_max = " << fmt_real(cfg.D_max) << "\n";
  os << "p = " << cfg.p << "\n";
  if (cfg.m >= 1) os << "m = " << cfg.m << "\n";
  if (!cfg.m_list.empty()) {
    os << "m_list = ";
    for (size_t i = 0; i < cfg.m_list.size(); ++i) os << (i ? "," : "") << cfg.m_list[i];
    os << "\n";
  }
  os << "n_I = " << cfg.n_I << "\n";
  os << "k_max = " << cfg.k_max << "\n";
  if (cfg.eps0) os << "eps0 = " << fmt_real(*cfg.eps0) << "\n";
  os << "tol_outer = " << fmt_real(cfg.tol_outer) << "\n";
  os << "max_outer = " << cfg.max_outer << "\n";
  os << "tol_inner = " << fmt_real(cfg.tol_inner) << "\n";
  os << "shift_offset = " << fmt_real(cfg.shift_offset) << "\n";
  os << "q = " << (cfg.q ? fmt_real(*cfg.q) : std::string("auto")) << "\n";
  os << "noise_floor = " << fmt_real(cfg.noise_floor) << "\n";
  return os.str();
}

}  // namespace tcdirac
