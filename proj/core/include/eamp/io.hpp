#pragma once

#include <filesystem>
#include <string>

#include "eamp/linalg.hpp"

namespace eamp {

// Text format: first line "rows cols", then rows lines of cols space-separated
// values, 17 significant digits. Vectors are stored as single-column matrices.

void write_matrix(const std::filesystem::path& path, const DenseMatrix& m);
DenseMatrix read_matrix(const std::filesystem::path& path);

void write_vector(const std::filesystem::path& path, const Vector& v);
Vector read_vector(const std::filesystem::path& path);

std::string format_value(double v);  // 17 significant digits

}  // namespace eamp
