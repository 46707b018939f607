#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bmslab::cli {

// Parses and executes one invocation. Returns the process exit status:
// 0 on success, 1 on a mathematical mismatch, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace bmslab::cli
