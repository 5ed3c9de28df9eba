#pragma once

// Implementations of the uavcpn subcommands, writing to caller-supplied
// streams and returning the process exit code.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "uavcpn/config.hpp"

namespace uavcpn {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 1,           // validation or I/O error
  kExitComparisonFailed = 2,  // theory and simulation disagree
  kExitNotConverged = 3,      // quadrature did not converge somewhere
};

struct CommonOptions {
  std::optional<std::string> config_path;  // falls back to $UAVCPN_CONFIG
  std::vector<std::string> overrides;      // "key=value", applied in order
  std::optional<std::string> output;
  std::uint64_t seed = 42;
  std::uint64_t trials = 10000;
  std::uint64_t gus = 400;
  unsigned jobs = 1;
  bool json = false;  // machine-readable stdout
};

// Loads the config file (or defaults), applies overrides and validates.
// Throws ConfigError.
ScenarioConfig resolve_config(const CommonOptions& options);

int cmd_analyze(const CommonOptions& options, std::ostream& out,
                std::ostream& err);

int cmd_simulate(const CommonOptions& options, std::ostream& out,
                 std::ostream& err);

// altitudes: "start:stop:points" or a comma-separated list, metres.
int cmd_compare(const CommonOptions& options, const std::string& altitudes,
                std::ostream& out, std::ostream& err);

// axes: one or two "name=start:stop:points[:log]" strings. Writes CSV to
// options.output (stdout when empty) and a JSON mirror to json_output.
int cmd_sweep(const CommonOptions& options,
              const std::vector<std::string>& axes, const std::string& engine,
              const std::optional<std::string>& json_output, std::ostream& out,
              std::ostream& err);

}  // namespace uavcpn
