#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hullfacets::cli {

// Dispatches one invocation (arguments without the program name).
// Exit codes: 0 success, 1 usage error, 2 numeric failure,
// 3 disagreement under `compare --strict`. Errors go to `err` as a
// single JSON line.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace hullfacets::cli
