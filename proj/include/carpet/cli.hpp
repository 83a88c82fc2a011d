#pragma once

#include <ostream>

namespace carpet {

// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitWrongSignature = 3;

// Entry point of `carpet`, with output streams injectable for testing.
//
//   carpet render   --config job.json --out out.svg
//   carpet diagnose --config job.json
//   carpet classify --config job.json
//
// Common options: --threads N (default $CARPET_THREADS, else all cores),
// --bound B (overrides coord_bound), --seed S (density probe).
int run_cli(int argc, char const* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace carpet
