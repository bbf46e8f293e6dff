#pragma once

#include <iosfwd>
#include <string>

#include "tcdirac/analysis.hpp"
#include "tcdirac/config.hpp"

namespace tcdirac {

// Runs the configured command and renders the report.  Returns a process
// exit status (0 on success); failures are reported on `diag` together with
// the parameters that produced them, and partial results carry a failure
// marker.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

// File-or-stdout wrapper around run().
int run_to_output(const RunConfig& cfg, std::ostream& diag);

std::string render_csv(const RunConfig& cfg, const SequenceResult& seq);
std::string render_json(const RunConfig& cfg, const SequenceResult& seq);
std::string render_scan_csv(const RunConfig& cfg, const std::vector<ScanEntry>& scan);
std::string render_scan_json(const RunConfig& cfg, const std::vector<ScanEntry>& scan);

// 18-significant-digit fixed formatting used for every energy column.
std::string format_energy(Real v);

}  // namespace tcdirac
