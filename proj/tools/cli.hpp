#pragma once

#include <ostream>

namespace ejakit {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitChecksFailed = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitInternal = 3;

/// Runs `ejakit <command> ...` and returns the exit code. Payloads go to
/// `out` (or to --output/--report files), diagnostics to `err`.
///
///   gen <effect|sharp|atom|state|map> --algebra SPEC [--target SPEC] [--seed N] [--output PATH]
///   check [SPEC] [--grid] [--check ID] [--seed N] [--trials N] [--report PATH] [--format json|text]
///   diag ELEMENT [--format json|text]
///   scan [--max-rank N] [--max-power N] [--max-spin-dim N] [--format json|text]
///   tensor LEFT RIGHT [--seed N] [--trials N] [--output PATH]
///
/// SPEC and ELEMENT arguments are file paths or inline JSON starting with '{'.
/// --tol-eig, --tol-pos, --tol-op and --tol-sharp override tolerances on top
/// of the EJAKIT_TOL_* environment variables.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ejakit
