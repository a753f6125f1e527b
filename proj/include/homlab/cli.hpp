#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "homlab/graph.hpp"

namespace homlab {

/// Builtin names (k3, p4, c5, star3, empty4, petersen, k2x3) or a path to
/// a JSON / edge-list file.
Graph parse_graph_spec(const std::string& spec);

/// Runs the command line; returns the process exit code (0 iff every
/// requested check passed, 1 on a failed check or runtime error, 2 on a
/// usage error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace homlab
