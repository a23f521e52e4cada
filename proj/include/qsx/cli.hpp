#pragma once

namespace qsx {

// Entry point behind the qsx binary. Exit codes: 0 success, 1 usage error,
// 2 numeric failure, 3 verification failure.
int cli_main(int argc, const char* const* argv);

}  // namespace qsx
