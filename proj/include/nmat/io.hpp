#pragma once

#include <iosfwd>
#include <string>

#include "nmat/types.hpp"

namespace nmat {

/// Matrix text format: first meaningful line is the order n, then n lines
/// of n reals separated by whitespace or commas. Lines whose first
/// non-blank character is '#' are comments. Scientific notation accepted.
SquareMatrix read_matrix(std::istream& in);
SquareMatrix read_matrix_from_string(const std::string& text);
SquareMatrix read_matrix_from_file(const std::string& path);

/// Round-trip-exact writer for the same format.
std::string write_matrix(const SquareMatrix& a);
void write_matrix_to_file(const SquareMatrix& a, const std::string& path);

}  // namespace nmat
