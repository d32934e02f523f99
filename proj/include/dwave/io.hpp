#pragma once

#include <string>
#include <vector>

namespace dwave {

/// Shortest text that reads back to the same double ("%.17g" fallback).
std::string format_real(double v);

/// Numeric CSV rows; a first line that does not parse as numbers is skipped
/// as a header. Throws InputError on missing files or malformed rows.
std::vector<std::vector<double>> read_numeric_csv(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);

/// Creates the directory (and parents) if needed.
void ensure_directory(const std::string& path);

}  // namespace dwave
