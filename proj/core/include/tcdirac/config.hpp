#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcdirac/geometry.hpp"
#include "tcdirac/types.hpp"

namespace tcdirac {

enum class Command { solve, ladder, shift, dmax_scan };
enum class OutputFormat { csv, json };

// Flat key = value configuration; '#' starts a comment.  Every key is
// validated against the module preconditions before any computation starts;
// unknown keys are rejected.
struct RunConfig {
  Command command = Command::solve;
  OutputFormat format = OutputFormat::csv;
  std::string out;  // empty: stdout
  int workers = 1;

  Real Z1 = 0, Z2 = 0;
  Real R = 0;
  Real alpha = kAlphaCodata2018;
  Real jz = 0.5;
  Mode mode = Mode::relativistic;  // used by `solve` only

  int nu = 8;
  Real D_max = 0;
  std::vector<Real> D_max_list;  // dmax-scan
  int p = 10;
  int m = 0;
  std::vector<int> m_list;
  int n_I = 25;
  int k_max = 9;

  std::optional<Real> eps0;
  Real tol_outer = -1;
  int max_outer = 30;
  Real tol_inner = 1e-12;
  Real shift_offset = -1;
  std::optional<Real> q;  // extrapolation order; auto when unset
  Real noise_floor = -1;

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& cfg);

const char* command_name(Command c);
const char* format_name(OutputFormat f);

}  // namespace tcdirac
