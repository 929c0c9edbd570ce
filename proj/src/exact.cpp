#include "eawg/exact.hpp"

#include <limits>

#include "eawg/error.hpp"

namespace eawg {

std::string to_string(const Rational &q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Rational bilinear(const QDense &gram, const QVector &x, const QVector &y) {
  Rational acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == Rational(0)) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != Rational(0) && gram[i][j] != Rational(0)) acc += x[i] * gram[i][j] * y[j];
  }
  return acc;
}

QDense inverse(const QDense &m) {
  const std::size_t n = m.size();
  QDense a = m;
  QDense inv(n, QVector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == Rational(0)) ++pivot;
    if (pivot == n) throw Error(Errc::ValidationError, "singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == Rational(0)) continue;
      const Rational f = a[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[row][j] -= f * a[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

QVector solve(const QDense &m, const QVector &b) {
  const QDense inv = inverse(m);
  QVector x(b.size(), Rational(0));
  for (std::size_t i = 0; i < inv.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) x[i] += inv[i][j] * b[j];
  return x;
}

bool is_integer(const Rational &q) { return q.denominator() == 1; }

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw Error(Errc::Overflow, "int64 addition");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(Errc::Overflow, "int64 multiplication");
  return out;
}

std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw Error(Errc::Overflow, "value exceeds int64");
  return static_cast<std::int64_t>(v);
}

}  // namespace eawg
