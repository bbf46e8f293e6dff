// Command-line driver: solve | ladder | shift | dmax-scan, configured by a
// flat key = value file.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tcdirac/report.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out;
  std::string format;
  int workers = 0;
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path, "configuration file (key = value lines)")
      ->required();
  sub->add_option("--out", args.out, "output path ('-' for stdout)");
  sub->add_option("--format", args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--workers", args.workers, "concurrent ladder rungs")
      ->check(CLI::PositiveNumber);
}

int dispatch(tcdirac::Command command, const CommonArgs& args) {
  std::ifstream f(args.config_path);
  if (!f) {
    std::cerr << "error: cannot read config file '" << args.config_path << "'\n";
    return 1;
  }
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    tcdirac::RunConfig cfg = tcdirac::parse_config(ss.str());
    cfg.command = command;
    if (!args.out.empty()) cfg.out = args.out;
    if (!args.format.empty())
      cfg.format = args.format == "json" ? tcdirac::OutputFormat::json
                                         : tcdirac::OutputFormat::csv;
    if (args.workers > 0) cfg.workers = args.workers;
    return tcdirac::run_to_output(cfg, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minmax finite-element solver for the two-center Dirac equation"};
  app.require_subcommand(1);

  CommonArgs a_solve, a_ladder, a_shift, a_scan;
  CLI::App* s_solve = app.add_subcommand("solve", "single energy record for one grid");
  CLI::App* s_ladder =
      app.add_subcommand("ladder", "grid-ladder table with fit and extrapolation footer");
  CLI::App* s_shift =
      app.add_subcommand("shift", "paired relativistic/nonrelativistic runs per rung");
  CLI::App* s_scan = app.add_subcommand("dmax-scan", "domain-size sensitivity study");
  add_common(s_solve, a_solve);
  add_common(s_ladder, a_ladder);
  add_common(s_shift, a_shift);
  add_common(s_scan, a_scan);

  CLI11_PARSE(app, argc, argv);

  if (s_solve->parsed()) return dispatch(tcdirac::Command::solve, a_solve);
  if (s_ladder->parsed()) return dispatch(tcdirac::Command::ladder, a_ladder);
  if (s_shift->parsed()) return dispatch(tcdirac::Command::shift, a_shift);
  return dispatch(tcdirac::Command::dmax_scan, a_scan);
}
