#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qdf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitComputation = 3;

/// Full command line without the program name, e.g. {"norms", "--spec", "s.json"}.
/// Reports go to --out (written only on success) or to `out`; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace qdf::cli
