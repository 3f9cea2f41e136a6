#include "hddist/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "hddist/error.hpp"

namespace hddist {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view cell, double& out) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return false;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error("write failed for '" + path.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

DataMatrix parse_matrix_csv(const std::string& text, bool has_header) {
  std::vector<double> row_major;
  std::size_t n_cols = 0;
  std::size_t n_rows = 0;
  std::size_t line_no = 0;
  bool header_pending = has_header;

  std::string_view rest(text);
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;
    if (trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    std::size_t col = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const std::string_view cell = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
      double v = 0.0;
      if (!parse_double(cell, v) || !std::isfinite(v)) {
        throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(col + 1) +
                             ": cannot parse '" + std::string(trim(cell)) + "' as a finite number",
                         line_no, col + 1);
      }
      row_major.push_back(v);
      ++col;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (n_rows == 0) {
      n_cols = col;
    } else if (col != n_cols) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(n_cols) +
                           " columns, found " + std::to_string(col),
                       line_no, col);
    }
    ++n_rows;
  }
  if (n_rows == 0) throw ParseError("no data rows", line_no, 0);

  std::vector<double> values(n_rows * n_cols);
  for (std::size_t i = 0; i < n_rows; ++i)
    for (std::size_t j = 0; j < n_cols; ++j) values[j * n_rows + i] = row_major[i * n_cols + j];
  return DataMatrix::from_columns(n_rows, n_cols, std::move(values));
}

DataMatrix read_matrix_csv(const std::filesystem::path& path, bool has_header) {
  return parse_matrix_csv(read_file(path), has_header);
}

void write_matrix_csv(const std::filesystem::path& path, const DataMatrix& x, bool with_header) {
  std::string out;
  if (with_header) {
    for (std::size_t j = 0; j < x.n_cols(); ++j) {
      if (j) out += ',';
      out += 'x';
      out += std::to_string(j + 1);
    }
    out += '\n';
  }
  for (std::size_t i = 0; i < x.n_rows(); ++i) {
    for (std::size_t j = 0; j < x.n_cols(); ++j) {
      if (j) out += ',';
      out += format_double(x(i, j));
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

LabelVector read_labels(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::vector<int> labels;
  std::string_view rest(text);
  std::size_t line_no = 0;
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    std::string_view line = trim(rest.substr(0, nl));
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    int v = 0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || ptr != line.data() + line.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": bad label '" + std::string(line) + "'", line_no, 1);
    }
    labels.push_back(v);
  }
  return LabelVector::from_complete(std::move(labels));
}

void write_labels(const std::filesystem::path& path, const LabelVector& labels) {
  std::string out;
  for (int l : labels.labels()) {
    out += std::to_string(l);
    out += '\n';
  }
  write_file_atomic(path, out);
}

void write_condensed(const std::filesystem::path& path, const CondensedDistanceMatrix& d) {
  std::string out = "{\"n\": " + std::to_string(d.n()) + "}\n";
  for (double v : d.entries()) {
    out += format_double(v);
    out += '\n';
  }
  write_file_atomic(path, out);
}

CondensedDistanceMatrix read_condensed(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const auto first_nl = text.find('\n');
  if (first_nl == std::string::npos) throw FormatError("condensed file: missing header line");
  const std::string_view header = trim(std::string_view(text).substr(0, first_nl));

  // Header is a one-key JSON object; accept arbitrary whitespace.
  std::string compact;
  for (char c : header)
    if (c != ' ' && c != '\t') compact += c;
  constexpr std::string_view prefix = "{\"n\":";
  if (compact.size() < prefix.size() + 2 || compact.compare(0, prefix.size(), prefix) != 0 || compact.back() != '}') {
    throw FormatError("condensed file: header must be {\"n\": <int>}, got '" + std::string(header) + "'");
  }
  std::size_t n = 0;
  const char* num_begin = compact.data() + prefix.size();
  const char* num_end = compact.data() + compact.size() - 1;
  const auto [ptr, ec] = std::from_chars(num_begin, num_end, n);
  if (ec != std::errc() || ptr != num_end) throw FormatError("condensed file: bad n in header");

  const std::size_t expected = condensed_size(n);
  std::vector<double> entries;
  entries.reserve(expected);
  std::string_view rest = std::string_view(text).substr(first_nl + 1);
  std::size_t line_no = 1;
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    ++line_no;
    if (nl == std::string_view::npos) {
      throw FormatError("condensed file: line " + std::to_string(line_no) + " is not newline-terminated (truncated?)");
    }
    const std::string_view line = trim(rest.substr(0, nl));
    rest = rest.substr(nl + 1);
    if (line.empty()) continue;
    double v = 0.0;
    if (!parse_double(line, v) || !std::isfinite(v) || v < 0.0) {
      throw FormatError("condensed file: line " + std::to_string(line_no) + ": bad entry '" + std::string(line) + "'");
    }
    entries.push_back(v);
  }
  if (entries.size() != expected) {
    throw FormatError("condensed file: header says n=" + std::to_string(n) + " (" + std::to_string(expected) +
                      " entries) but found " + std::to_string(entries.size()));
  }
  return CondensedDistanceMatrix(n, std::move(entries));
}

}  // namespace hddist
