#pragma once

#include <string>

#include "qharm/serialization.hpp"

namespace qharm {

// Executes one batch command from its parsed config; pure function of the
// config (fixed seed -> identical report). Throws std::invalid_argument /
// nlohmann::json exceptions on bad configs.
Json run_command(const Json& config);

// Serialized report text as written to disk.
std::string render_report(const Json& report);

// `qharm <command> --config file.json [--out report.json]`.
// Exit 0: every check passed; 1: checks failed; 2: config/usage error.
int run_cli(int argc, const char* const* argv);

}  // namespace qharm
