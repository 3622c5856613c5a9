#ifndef RIPLAB_IO_HPP
#define RIPLAB_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "riplab/matcore.hpp"

namespace riplab {

// Matrix Market exchange format. The writer always emits the dense `array`
// variant with 17 significant digits, which round-trips IEEE doubles
// bit-exactly. The reader accepts `array` and `coordinate`, `general` and
// `symmetric` storage.

inline void write_matrix_market(std::ostream& os, const Matrix& a) {
  os << "%%MatrixMarket matrix array real general\n";
  os << a.rows() << " " << a.cols() << "\n";
  char buf[64];
  // column-major entry order, per the format definition
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g\n", a(i, j));
      os << buf;
    }
  }
}

inline void write_matrix_market(const std::string& path, const Matrix& a) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for write: " + path);
  write_matrix_market(os, a);
}

inline Matrix read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("MatrixMarket: empty stream");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix") {
    throw std::runtime_error("MatrixMarket: bad banner: " + line);
  }
  if (field != "real" && field != "double" && field != "integer") {
    throw std::runtime_error("MatrixMarket: unsupported field: " + field);
  }
  const bool coordinate = (format == "coordinate");
  if (!coordinate && format != "array") {
    throw std::runtime_error("MatrixMarket: unsupported format: " + format);
  }
  const bool symmetric = (symmetry == "symmetric");
  if (!symmetric && symmetry != "general") {
    throw std::runtime_error("MatrixMarket: unsupported symmetry: " + symmetry);
  }
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream sizes(line);
  Index rows = 0, cols = 0;
  long long nnz = 0;
  sizes >> rows >> cols;
  if (coordinate) sizes >> nnz;
  if (rows <= 0 || cols <= 0) throw std::runtime_error("MatrixMarket: bad sizes");
  Matrix a = Matrix::Zero(rows, cols);
  if (coordinate) {
    for (long long e = 0; e < nnz; ++e) {
      Index i, j;
      double v;
      if (!(is >> i >> j >> v)) throw std::runtime_error("MatrixMarket: truncated entries");
      a(i - 1, j - 1) = v;
      if (symmetric && i != j) a(j - 1, i - 1) = v;
    }
  } else {
    if (symmetric) {
      for (Index j = 0; j < cols; ++j) {
        for (Index i = j; i < rows; ++i) {
          double v;
          if (!(is >> v)) throw std::runtime_error("MatrixMarket: truncated entries");
          a(i, j) = v;
          a(j, i) = v;
        }
      }
    } else {
      for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
          double v;
          if (!(is >> v)) throw std::runtime_error("MatrixMarket: truncated entries");
          a(i, j) = v;
        }
      }
    }
  }
  return a;
}

inline Matrix read_matrix_market(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for read: " + path);
  return read_matrix_market(is);
}

// CSV: one matrix row per line, comma-separated decimal reals, no header.

inline void write_csv(std::ostream& os, const Matrix& a) {
  char buf[64];
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", a(i, j));
      os << buf << (j + 1 < a.cols() ? "," : "");
    }
    os << "\n";
  }
}

inline void write_csv(const std::string& path, const Matrix& a) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for write: " + path);
  write_csv(os, a);
}

inline Matrix read_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error("CSV: ragged rows");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("CSV: empty input");
  Matrix a(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      a(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return a;
}

inline Matrix read_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for read: " + path);
  return read_csv(is);
}

// Load a matrix by extension: .mtx / .mm -> Matrix Market, otherwise CSV.
inline Matrix read_matrix_auto(const std::string& path) {
  const auto dot = path.find_last_of('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  if (ext == ".mtx" || ext == ".mm") return read_matrix_market(path);
  return read_csv(path);
}

}  // namespace riplab

#endif  // RIPLAB_IO_HPP
