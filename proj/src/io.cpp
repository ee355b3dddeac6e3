#include "nmat/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

namespace nmat {

namespace {

bool meaningful(const std::string& line, std::size_t& start) {
  start = line.find_first_not_of(" \t\r");
  if (start == std::string::npos) return false;
  return line[start] != '#';
}

// Tokenize a data line, treating commas as separators.
void parse_numbers(const std::string& line, std::vector<double>& out) {
  std::string cleaned = line;
  for (char& c : cleaned)
    if (c == ',' || c == '\t' || c == '\r') c = ' ';
  const char* p = cleaned.c_str();
  while (*p) {
    while (*p == ' ') ++p;
    if (!*p) break;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(p, &end);
    if (end == p) throw ParseError("unrecognized token in matrix data: '" + std::string(p) + "'");
    if (errno == ERANGE || !std::isfinite(v))
      throw ParseError("matrix entry out of range or not finite");
    out.push_back(v);
    p = end;
  }
}

}  // namespace

SquareMatrix read_matrix(std::istream& in) {
  std::string line;
  long n = -1;
  std::vector<double> entries;
  while (std::getline(in, line)) {
    std::size_t start = 0;
    if (!meaningful(line, start)) continue;
    if (n < 0) {
      char* end = nullptr;
      errno = 0;
      n = std::strtol(line.c_str() + start, &end, 10);
      if (end == line.c_str() + static_cast<std::ptrdiff_t>(start) || errno == ERANGE || n < 1)
        throw ParseError("first line must be the matrix order (a positive integer)");
      std::string rest(end);
      std::size_t s2 = 0;
      if (meaningful(rest, s2)) throw ParseError("unexpected data after the matrix order");
      entries.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
      continue;
    }
    parse_numbers(line.substr(start), entries);
    if (entries.size() > static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
      throw ParseError("more entries than n^2 in matrix data");
  }
  if (n < 0) throw ParseError("empty input: no matrix order found");
  if (entries.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw ParseError("expected " + std::to_string(n * n) + " entries, got " +
                     std::to_string(entries.size()));
  return SquareMatrix(static_cast<int>(n), std::move(entries));
}

SquareMatrix read_matrix_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_matrix(is);
}

SquareMatrix read_matrix_from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open file: " + path);
  return read_matrix(f);
}

std::string write_matrix(const SquareMatrix& a) {
  const int n = a.order();
  std::string out = std::to_string(n);
  out += '\n';
  char buf[64];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof buf, j ? " %.17g" : "%.17g", a(i, j));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_matrix_to_file(const SquareMatrix& a, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot open file for writing: " + path);
  f << write_matrix(a);
  if (!f) throw ParseError("write failed: " + path);
}

}  // namespace nmat
