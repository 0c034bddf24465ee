#pragma once

#include <string>

#include "precis/matrix.hpp"

namespace precis {

// Plain numeric CSV, no header, square not required.
Matrix read_matrix_csv(const std::string& path);

// n x p observations; a non-numeric first row is treated as a header.
SampleData read_sample_csv(const std::string& path);

// All writers are atomic: temp file in the target directory, then rename.
void write_text_atomic(const std::string& path, const std::string& content);
void write_matrix_csv(const std::string& path, const Matrix& m);

// Shortest representation that round-trips a double exactly.
std::string format_double(double v);

}  // namespace precis
