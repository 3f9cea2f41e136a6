#pragma once

#include <string>
#include <vector>

namespace hddist {

// Entry point of the `hddist` command line tool. Subcommands: simulate,
// standardise, distmat, cluster, classify, experiment. Returns the process
// exit status; diagnostics go to stderr.
int run_cli(int argc, const char* const* argv);

}  // namespace hddist
