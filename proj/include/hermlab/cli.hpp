#pragma once

#include <iosfwd>

namespace hermlab {

/// Entry point of the `hermlab` tool. Returns 0, or 2/3/4 for input, incompatibility and construction errors.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hermlab
