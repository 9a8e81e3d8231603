#include "brst/rational.hpp"

#include <cctype>

#include "brst/errors.hpp"

namespace brst {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

// Gauss-Jordan on a copy; returns rank and optionally determinant / inverse.
struct Reduction {
  std::size_t rank = 0;
  Rational det = 1;
  RationalMatrix inverse;
};

Reduction reduce(const RationalMatrix& m, bool want_inverse) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  RationalMatrix a = m;
  RationalMatrix inv = want_inverse ? RationalMatrix::identity(rows) : RationalMatrix();
  Reduction out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) {
      out.det = 0;
      continue;
    }
    if (p != r) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(a(p, k), a(r, k));
      if (want_inverse)
        for (std::size_t k = 0; k < rows; ++k) std::swap(inv(p, k), inv(r, k));
      out.det = -out.det;
    }
    const Rational pivot = a(r, c);
    out.det *= pivot;
    for (std::size_t k = 0; k < cols; ++k) a(r, k) /= pivot;
    if (want_inverse)
      for (std::size_t k = 0; k < rows; ++k) inv(r, k) /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational factor = a(i, c);
      for (std::size_t k = 0; k < cols; ++k) a(i, k) -= factor * a(r, k);
      if (want_inverse)
        for (std::size_t k = 0; k < rows; ++k) inv(i, k) -= factor * inv(r, k);
    }
    ++r;
  }
  out.rank = r;
  if (rows != cols || r < rows) out.det = 0;
  if (want_inverse) out.inverse = std::move(inv);
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  const auto slash = s.find('/');
  const std::string_view num = s.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("invalid rational literal '" + std::string(text) + "'");
  Integer n(std::string(num[0] == '+' ? num.substr(1) : num));
  Integer d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::diagonal(const std::vector<Rational>& diag) {
  RationalMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

std::size_t RationalMatrix::rank() const { return reduce(*this, false).rank; }

Rational RationalMatrix::determinant() const {
  if (rows_ != cols_) throw ValidationError("determinant of a non-square matrix");
  if (rows_ == 0) return 1;
  return reduce(*this, false).det;
}

RationalMatrix RationalMatrix::inverse() const {
  if (rows_ != cols_) throw ValidationError("inverse of a non-square matrix");
  auto red = reduce(*this, true);
  if (red.rank < rows_) throw ValidationError("matrix is singular");
  return red.inverse;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("matrix dimension mismatch");
  RationalMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

RationalMatrix operator*(const Rational& s, const RationalMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = s * m(i, j);
  return out;
}

}  // namespace brst
