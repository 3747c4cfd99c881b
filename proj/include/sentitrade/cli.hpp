#pragma once

#include <iosfwd>

namespace sentitrade::cli {

/// Exit status: 0 success, 1 configuration or usage error, 2 data error,
/// 3 numerical failure. Errors print one line to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace sentitrade::cli
