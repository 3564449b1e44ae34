#pragma once

namespace cwmix {

// Parses argv, runs one subcommand, emits one result table (body file plus
// sibling .meta.json).  Prints the effective resolved configuration to
// standard error before running.  Exit codes: 0 success (including --help /
// --version), 2 usage or domain error, 1 runtime or I/O error.
int dispatch(int argc, char** argv);

}  // namespace cwmix
