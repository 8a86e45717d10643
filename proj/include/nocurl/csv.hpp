#pragma once

#include "nocurl/types.hpp"

#include <filesystem>
#include <string>

namespace nocurl {

// Matrices travel as headerless comma-separated values, one row per line,
// '.' decimal separator regardless of locale. Values are written with
// shortest round-trip formatting, so write/read is lossless.

std::string matrix_to_csv(const Matrix& m);
Matrix matrix_from_csv(const std::string& text);

void write_matrix_csv(const Matrix& m, const std::filesystem::path& path);
Matrix read_matrix_csv(const std::filesystem::path& path);

}  // namespace nocurl
