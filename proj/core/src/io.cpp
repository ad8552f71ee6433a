#include "eamp/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "eamp/errors.hpp"

namespace eamp {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix(const std::filesystem::path& path, const DenseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_value(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

DenseMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw IoError("bad matrix header: " + path.string());
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (!(in >> m(i, j))) throw IoError("truncated matrix data: " + path.string());
  return m;
}

void write_vector(const std::filesystem::path& path, const Vector& v) {
  DenseMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  write_matrix(path, m);
}

Vector read_vector(const std::filesystem::path& path) {
  DenseMatrix m = read_matrix(path);
  if (m.cols() != 1) throw IoError("expected single-column vector file: " + path.string());
  return m.data();
}

}  // namespace eamp
