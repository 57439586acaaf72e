#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Core>
#include <json.hpp>

namespace icsym {

using Json = nlohmann::ordered_json;

/// Floating-point text with 17 significant digits (round-trips a double).
std::string format_number(double x);

/// Pretty JSON with every float printed through format_number. Non-finite
/// floats become null.
std::string dump_json(const Json& value, int indent = 2);

Json matrix_to_json(const Eigen::MatrixXd& m);

/// N rows of N comma-separated values, no header.
void write_csv_matrix(std::ostream& out, const Eigen::MatrixXd& m);

}  // namespace icsym
