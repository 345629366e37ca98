#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tgspec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitSolverError = 3;

/// Runs `tgspec <subcommand> ...`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "n:a,n:a,..." (also "lo..hi/step:a"); n must be strictly increasing.
std::vector<std::pair<std::size_t, double>> parse_schedule(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);
/// Comma list of integers or "lo:hi" / "lo:step:hi" ranges.
std::vector<std::size_t> parse_size_list(const std::string& text);

}  // namespace tgspec::cli
