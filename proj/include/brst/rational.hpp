#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace brst {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Dense rational matrix, row major. Only used for the small (dim <= ~10)
/// metric and Killing-form computations.
class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix diagonal(const std::vector<Rational>& diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_symmetric() const;
  bool is_zero() const;
  std::size_t rank() const;
  Rational determinant() const;
  RationalMatrix inverse() const;  // throws ValidationError when singular

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator*(const Rational& s, const RationalMatrix& m);

}  // namespace brst
