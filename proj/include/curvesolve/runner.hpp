#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "curvesolve/config.hpp"

namespace curvesolve {

// Exit-code contract:
//   0  all branches complete and certified
//   1  configuration or domain error before any solve
//   2  partial result (step collapse, monitor violation, or non-distinct)
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitPartial = 2;

struct RunOutcome {
  int exit_code = kExitConfigError;
  std::string run_dir;  // empty when nothing was written
};

// Execute a full run: seed solves, continuation, certification, result
// persistence in a fresh timestamped directory under the output dir.
RunOutcome run(const RunConfig& config, std::ostream& log,
               const std::optional<std::string>& output_override = std::nullopt,
               int threads = 1);

// Write one export format ("curve-table", "diagnostics-table",
// "plot-bundle") from a persisted run directory.  Returns the files
// written.  Output is a pure function of result.json.
std::vector<std::string> export_run(const std::string& run_dir,
                                    const std::string& format,
                                    const std::optional<std::string>& out_dir =
                                        std::nullopt);

}  // namespace curvesolve
