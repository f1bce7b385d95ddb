#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace ridgeforge {

// Reported numbers are rounded once to this many significant digits; JSON
// stores the rounded double and text prints it, so both carry identical
// values.
inline constexpr int report_digits = 10;

// Nearest double to v at the given number of significant decimal digits.
double round_significant(double v, int digits = report_digits);

// Shortest decimal string of round_significant(v); what the text renderer
// prints and what nlohmann::json serializes.
std::string format_significant(double v, int digits = report_digits);

// JSON value holding the rounded number (null for non-finite input).
nlohmann::json json_number(double v);

// JSON array of rounded numbers.
nlohmann::json json_vector(const Eigen::VectorXd& v);

// Aligned-column text table: first column left-aligned, the rest right.
std::string text_table(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows);

} // namespace ridgeforge
