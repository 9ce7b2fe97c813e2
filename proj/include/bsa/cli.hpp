#pragma once

namespace bsa {

// Full pipeline entry point. Returns the process exit code: 0 success,
// 1 usage error, 2 data or config error, 3 I/O error.
int run_cli(int argc, const char* const* argv);

}  // namespace bsa
