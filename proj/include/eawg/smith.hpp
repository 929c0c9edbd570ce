#pragma once

#include <cstdint>
#include <vector>

namespace eawg {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix &other) const;
  bool operator==(const IntMatrix &) const = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += c * row[src]
  void add_row(std::size_t dst, std::size_t src, std::int64_t c);
  void add_col(std::size_t dst, std::size_t src, std::int64_t c);
  void negate_row(std::size_t i);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// U * M * V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal.
struct SmithDecomposition {
  IntMatrix U, V, D;
  std::size_t rank = 0;
  /// d_1..d_rank, all positive.
  std::vector<std::int64_t> diagonal;

  /// Invariant factors greater than one.
  std::vector<std::int64_t> torsion_factors() const;
};

SmithDecomposition smith_normal_form(const IntMatrix &m);

}  // namespace eawg
