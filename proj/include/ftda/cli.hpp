#pragma once

namespace ftda {

// Entry point behind the ftda binary. Exit codes: 0 success, 1 validation or
// property failure (with a report on stdout), 2 usage/config error.
int cli_dispatch(int argc, const char* const* argv);

}  // namespace ftda
