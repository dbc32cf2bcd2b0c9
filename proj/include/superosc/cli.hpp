#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace superosc::cli {

/// Runs the command line tool on `args` (without the program name).
/// Exit codes: 0 success, 1 usage, 2 numeric failure, 3 criterion
/// precondition, 4 function not representable as a trig polynomial.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 12 significant digits, "nan"/"inf" for non-finite values.
std::string format_number(double v);

/// Parses "b1:b2" with decimal literals.
std::pair<double, double> parse_range(const std::string& text);

}  // namespace superosc::cli
