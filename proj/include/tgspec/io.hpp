#pragma once

// Problem files and CSV output.
//
// A problem file is a JSON object with row-major nested arrays:
//   { "A": [[...], ...], "B": ..., "C": ..., "D": ..., "Q": ..., "R": ...,
//     "x0": [...] }
// Every field except D is mandatory; a missing D means no state constraint.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "tgspec/ihoc.hpp"
#include "tgspec/quadrature.hpp"

namespace tgspec {

/// Malformed or incomplete problem input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

IHOCProblem parse_problem(const std::string& text);
IHOCProblem read_problem_file(const std::filesystem::path& path);
std::string problem_to_json(const IHOCProblem& problem);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);
/// Fixed-point with the given number of decimals.
std::string format_fixed(double value, int decimals);

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);
void write_sweep_csv(std::ostream& os, const std::vector<QuadratureSweepRow>& rows);

}  // namespace tgspec
