#pragma once

#include <filesystem>
#include <string>

#include "hddist/core.hpp"

namespace hddist {

// CSV: comma separated, '.' decimal point, optional single header line.
// Throws ParseError (with 1-based line/column) on ragged rows, empty input,
// unparsable or non-finite cells.
DataMatrix read_matrix_csv(const std::filesystem::path& path, bool has_header);
DataMatrix parse_matrix_csv(const std::string& text, bool has_header);

// Writes a header "x1,...,xp" when with_header is set. Values carry 17
// significant digits so the file reads back bit-exactly.
void write_matrix_csv(const std::filesystem::path& path, const DataMatrix& x, bool with_header = true);

// Labels: one integer per line.
LabelVector read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, const LabelVector& labels);

// Condensed matrix file:
//   line 1: {"n": <int>}
//   then n(n-1)/2 lines, one decimal value each (17 significant digits), in
//   condensed_index order, every line terminated by '\n'.
// read_condensed throws FormatError if the header is malformed, the entry
// count disagrees with n, or the last entry is not newline-terminated.
void write_condensed(const std::filesystem::path& path, const CondensedDistanceMatrix& d);
CondensedDistanceMatrix read_condensed(const std::filesystem::path& path);

std::string format_double(double v);

// Reads a whole file; throws Error if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary and renames on success, so a failed run
// never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace hddist
