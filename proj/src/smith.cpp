#include "eawg/smith.hpp"

#include <cstdlib>
#include <numeric>

#include "eawg/error.hpp"
#include "eawg/exact.hpp"

namespace eawg {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto &row : rows) {
    if (row.size() != cols_) throw Error(Errc::DimensionMismatch, "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix &other) const {
  if (cols_ != other.rows_) throw Error(Errc::DimensionMismatch, "matrix product shapes");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < other.cols_; ++j) {
      __int128 acc = 0;
      for (std::size_t k = 0; k < cols_; ++k) acc += static_cast<__int128>((*this)(i, k)) * other(k, j);
      out(i, j) = narrow(acc);
    }
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, std::int64_t c) {
  for (std::size_t j = 0; j < cols_; ++j)
    (*this)(dst, j) = checked_add((*this)(dst, j), checked_mul(c, (*this)(src, j)));
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, std::int64_t c) {
  for (std::size_t i = 0; i < rows_; ++i)
    (*this)(i, dst) = checked_add((*this)(i, dst), checked_mul(c, (*this)(i, src)));
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

std::vector<std::int64_t> SmithDecomposition::torsion_factors() const {
  std::vector<std::int64_t> out;
  for (std::int64_t d : diagonal)
    if (d > 1) out.push_back(d);
  return out;
}

SmithDecomposition smith_normal_form(const IntMatrix &m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithDecomposition out;
  out.D = m;
  out.U = IntMatrix::identity(rows);
  out.V = IntMatrix::identity(cols);
  IntMatrix &D = out.D;

  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // smallest nonzero magnitude in the trailing block
    auto find_pivot = [&](std::size_t &pi, std::size_t &pj) {
      std::int64_t best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          const std::int64_t a = std::llabs(D(i, j));
          if (a != 0 && (best == 0 || a < best)) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      return best != 0;
    };
    std::size_t pi = 0, pj = 0;
    if (!find_pivot(pi, pj)) break;

    while (true) {
      D.swap_rows(t, pi);
      out.U.swap_rows(t, pi);
      D.swap_cols(t, pj);
      out.V.swap_cols(t, pj);

      bool clean = true;
      const std::int64_t p = D(t, t);
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (D(i, t) == 0) continue;
        const std::int64_t q = D(i, t) / p;
        D.add_row(i, t, -q);
        out.U.add_row(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (D(t, j) == 0) continue;
        const std::int64_t q = D(t, j) / p;
        D.add_col(j, t, -q);
        out.V.add_col(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (clean) {
        // divisibility: fold in any trailing row holding a non-multiple of p
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i)
          for (std::size_t j = t + 1; j < cols && divides; ++j)
            if (D(i, j) % p != 0) {
              D.add_row(t, i, 1);
              out.U.add_row(t, i, 1);
              divides = false;
            }
        if (divides) break;
      }
      // restart from the smallest entry of row t / column t and the block
      find_pivot(pi, pj);
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      out.U.negate_row(t);
    }
    out.diagonal.push_back(D(t, t));
  }
  out.rank = t;
  return out;
}

}  // namespace eawg
