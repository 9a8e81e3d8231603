#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "brst/rational.hpp"

namespace brst {

/// Sparse vectors: (index, value) pairs sorted by index, no zero values.
using IntVec = std::vector<std::pair<int, Integer>>;
using QVec = std::vector<std::pair<int, Rational>>;

/// Clears denominators; returns the integer vector and the positive factor m
/// with result = m * v.
std::pair<IntVec, Integer> to_integer(const QVec& v);

/// Row echelon basis over the integers. Rows are kept primitive (content 1)
/// with a positive leading entry; the pivot of a row is its first nonzero
/// index. Reduction of a new vector eliminates pivots in ascending order
/// without division:  v <- (a/g) v - (b/g) r.
///
/// Inserted vectors may carry a tag; rows then track which tagged inputs
/// they are made of, so that reduce() can express a vector in terms of the
/// tagged inputs modulo the untagged ones.
class EchelonBasis {
public:
  struct Reduction {
    IntVec residual;   // zero iff the vector is in the span
    Integer scale;     // residual = scale * x + sum combo_k * (tagged input k) + untagged part
    QVec combination;  // coefficients with x = sum combination_k * (tagged input k) + untagged part, when in span
  };

  /// Returns true when v was independent of the current span.
  bool insert(const QVec& v, int tag = -1);
  Reduction reduce(const QVec& v) const;
  bool contains(const QVec& v) const { return reduce(v).residual.empty(); }

  std::size_t rank() const noexcept { return rows_.size(); }

  /// Reduced row echelon form over the rationals: pivot column -> row with
  /// a 1 in the pivot column and zeros in every other pivot column.
  std::vector<std::pair<int, QVec>> rref() const;

private:
  struct Row {
    IntVec vec;
    IntVec combo;  // over tags
  };
  void eliminate(IntVec& v, IntVec& combo, Integer* scale) const;

  std::unordered_map<int, Row> rows_;
  std::vector<int> pivots_;  // insertion order
  std::unordered_map<int, Integer> tag_factor_;  // tag -> clearing factor m
};

/// Matrix stored by columns; each column is a sparse vector over row indices.
struct ColumnMatrix {
  std::size_t rows = 0;
  std::vector<QVec> cols;

  std::size_t num_cols() const noexcept { return cols.size(); }
  QVec apply(const QVec& x) const;
};

std::size_t rank(const ColumnMatrix& m);

/// Basis of {x : M x = 0}, one vector per free column in ascending order.
std::vector<QVec> kernel(const ColumnMatrix& m);

/// Some x with M x = b (free variables zero), or nullopt.
std::optional<QVec> solve(const ColumnMatrix& m, const QVec& b);

}  // namespace brst
