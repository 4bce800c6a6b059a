#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace graphdiff::cli {

/// Entry point of the `graphdiff` tool. Returns the process exit code:
/// 0 on success, 1 on runtime failure, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// FNV-1a 64 of a file's bytes as 16 hex digits, as recorded in manifests.
std::string file_hash(const std::string& path);

}  // namespace graphdiff::cli
