#pragma once

#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/rational.hpp>

namespace eawg {

using Rational = boost::rational<std::int64_t>;
using QVector = std::vector<Rational>;
using QDense = std::vector<QVector>;  // row-major square or rectangular

/// Mixed comparisons with other integer types are rejected; compare with Rational(n).
template <class I>
concept ForeignInteger = std::is_integral_v<I> && !std::is_same_v<I, std::int64_t>;
template <ForeignInteger I> bool operator==(const Rational &, I) = delete;
template <ForeignInteger I> bool operator!=(const Rational &, I) = delete;
template <ForeignInteger I> bool operator<(const Rational &, I) = delete;
template <ForeignInteger I> bool operator>(const Rational &, I) = delete;
template <ForeignInteger I> bool operator<=(const Rational &, I) = delete;
template <ForeignInteger I> bool operator>=(const Rational &, I) = delete;

std::string to_string(const Rational &q);

/// x^T G y
Rational bilinear(const QDense &gram, const QVector &x, const QVector &y);

/// Exact inverse by Gauss-Jordan elimination; throws ValidationError if singular.
QDense inverse(const QDense &m);

/// Solves m x = b exactly; m must be square and invertible.
QVector solve(const QDense &m, const QVector &b);

bool is_integer(const Rational &q);

/// int64 arithmetic that throws Errc::Overflow instead of wrapping.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t narrow(__int128 v);

}  // namespace eawg
