#pragma once

#include <ostream>

#include "config.hpp"

namespace lauricella::cli {

/// Runs cfg.command, writing results to `out` and diagnostics to `log`.
/// Returns 0 on success and 2 if a point or check failed numerically;
/// library errors propagate to the caller.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& log);

}  // namespace lauricella::cli
