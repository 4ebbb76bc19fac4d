#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace monogamy::cli {

/// Exit statuses of the `monogamy` tool.
enum Exit : int {
  kOk = 0,          // success, or a feasible scenario
  kFailure = 1,     // numerical failure
  kInputError = 2,  // bad flags or malformed input
  kInfeasible = 3,  // bell-check found a witness
  kCapExceeded = 4, // a size cap was hit
};

/// Seed used when neither --seed nor MONOGAMY_SEED is given.
std::uint64_t default_seed();

/// Runs one command line; argv[0] is the program name. Results go to `out`
/// (or the --out file), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// printf("%.12g"), with infinities written as `inf`.
std::string format_number(double x);

}  // namespace monogamy::cli
