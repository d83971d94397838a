#pragma once

#include <iosfwd>

namespace affexp::cli {

/// Runs the `affexp` command line. Returns 0 on success, 1 on usage or
/// validation errors, 2 on I/O errors. Human output goes to `out`, errors
/// and logs to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace affexp::cli
