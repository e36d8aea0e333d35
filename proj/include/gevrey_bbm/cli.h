#ifndef GEVREY_BBM_CLI_H_
#define GEVREY_BBM_CLI_H_

// Batch front end:
//
//   gevrey-bbm <command> [--config PATH] [--key value ...]
//
// Every command has a table of keys with defaults; a config file and the
// command line may override any of them and nothing else. Outputs go to
// `output_dir` and embed the fully resolved configuration.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gevrey_bbm/config.h"
#include "gevrey_bbm/error.h"

namespace gevrey_bbm::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitSimulation = 3,
  kExitIdentity = 4,
  kExitData = 5,
  kExitCrossCheck = 6,
};

int exit_code_for(ErrorKind kind);

const std::vector<std::string>& command_names();

// Ordered (key, default) pairs accepted by `command`.
const std::vector<std::pair<std::string, std::string>>& default_table(const std::string& command);

struct RunConfig {
  std::string command;
  std::string config_path;  // empty when defaults only
  KeyValueFile values;
};

// Defaults, then the config file (if any), then overrides. Unknown keys throw
// InvalidInput.
RunConfig resolve_config(const std::string& command, const std::string& config_path,
                         const std::vector<std::pair<std::string, std::string>>& overrides);

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gevrey_bbm::cli

#endif  // GEVREY_BBM_CLI_H_
