#include "brst/linalg.hpp"

#include <algorithm>
#include <map>

namespace brst {

namespace {

// a * v + b * w
IntVec combine(const Integer& a, const IntVec& v, const Integer& b, const IntVec& w) {
  IntVec out;
  out.reserve(v.size() + w.size());
  std::size_t i = 0, j = 0;
  while (i < v.size() || j < w.size()) {
    if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
      out.emplace_back(v[i].first, a * v[i].second);
      ++i;
    } else if (i == v.size() || w[j].first < v[i].first) {
      out.emplace_back(w[j].first, b * w[j].second);
      ++j;
    } else {
      Integer s = a * v[i].second + b * w[j].second;
      if (s != 0) out.emplace_back(v[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

void accumulate_gcd(Integer& g, const IntVec& v) {
  for (const auto& [idx, x] : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
}

void divide_exact(IntVec& v, const Integer& g) {
  for (auto& [idx, x] : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

void negate(IntVec& v) {
  for (auto& [idx, x] : v) x = -x;
}

}  // namespace

std::pair<IntVec, Integer> to_integer(const QVec& v) {
  Integer m = 1;
  for (const auto& [idx, q] : v) mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), q.get_den_mpz_t());
  IntVec out;
  out.reserve(v.size());
  for (const auto& [idx, q] : v) {
    Integer x = m / q.get_den() * q.get_num();
    out.emplace_back(idx, std::move(x));
  }
  return {std::move(out), m};
}

void EchelonBasis::eliminate(IntVec& v, IntVec& combo, Integer* scale) const {
  std::size_t pos = 0;
  while (pos < v.size()) {
    auto it = rows_.find(v[pos].first);
    if (it == rows_.end()) {
      ++pos;
      continue;
    }
    const Row& r = it->second;
    const Integer& a = r.vec.front().second;
    const Integer b = v[pos].second;
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const Integer alpha = a / g;
    const Integer beta = -(b / g);
    v = combine(alpha, v, beta, r.vec);
    if (!r.combo.empty() || !combo.empty()) combo = combine(alpha, combo, beta, r.combo);
    if (scale) *scale *= alpha;
    // keep the numbers small
    Integer content = scale ? *scale : Integer(0);
    accumulate_gcd(content, v);
    if (content != 1) accumulate_gcd(content, combo);
    if (content > 1) {
      divide_exact(v, content);
      divide_exact(combo, content);
      if (scale) mpz_divexact(scale->get_mpz_t(), scale->get_mpz_t(), content.get_mpz_t());
    }
  }
}

bool EchelonBasis::insert(const QVec& input, int tag) {
  auto [v, m] = to_integer(input);
  IntVec combo;
  if (tag >= 0) {
    combo.emplace_back(tag, Integer(1));
    tag_factor_[tag] = m;
  }
  eliminate(v, combo, nullptr);
  if (v.empty()) return false;
  Integer content = 0;
  accumulate_gcd(content, v);
  accumulate_gcd(content, combo);
  if (content > 1) {
    divide_exact(v, content);
    divide_exact(combo, content);
  }
  if (v.front().second < 0) {
    negate(v);
    negate(combo);
  }
  const int pivot = v.front().first;
  pivots_.push_back(pivot);
  rows_.emplace(pivot, Row{std::move(v), std::move(combo)});
  return true;
}

EchelonBasis::Reduction EchelonBasis::reduce(const QVec& input) const {
  auto [v, m] = to_integer(input);
  IntVec combo;
  Integer scale = 1;
  eliminate(v, combo, &scale);
  Reduction out;
  out.scale = scale * m;
  if (v.empty()) {
    for (const auto& [tag, c] : combo) {
      auto f = tag_factor_.find(tag);
      const Integer& mk = f == tag_factor_.end() ? Integer(1) : f->second;
      Rational q(-(c * mk), out.scale);
      q.canonicalize();
      out.combination.emplace_back(tag, std::move(q));
    }
  }
  out.residual = std::move(v);
  return out;
}

std::vector<std::pair<int, QVec>> EchelonBasis::rref() const {
  std::vector<int> order(pivots_);
  std::sort(order.begin(), order.end());
  std::map<int, QVec> done;  // pivot -> fully reduced row
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Row& r = rows_.at(*it);
    const Rational lead(r.vec.front().second);
    std::map<int, Rational> acc;
    for (const auto& [idx, x] : r.vec) acc[idx] = Rational(x) / lead;
    std::vector<std::pair<int, Rational>> hits;
    for (const auto& [idx, q] : acc)
      if (idx != *it && done.count(idx)) hits.emplace_back(idx, q);
    for (const auto& [p, c] : hits) {
      acc.erase(p);
      for (const auto& [idx, q] : done.at(p)) {
        if (idx == p) continue;
        Rational& slot = acc[idx];
        slot -= c * q;
        if (slot == 0) acc.erase(idx);
      }
    }
    QVec row(acc.begin(), acc.end());
    done.emplace(*it, std::move(row));
  }
  return {done.begin(), done.end()};
}

QVec ColumnMatrix::apply(const QVec& x) const {
  std::map<int, Rational> acc;
  for (const auto& [j, xj] : x)
    for (const auto& [i, a] : cols[static_cast<std::size_t>(j)]) {
      Rational& slot = acc[i];
      slot += a * xj;
      if (slot == 0) acc.erase(i);
    }
  return {acc.begin(), acc.end()};
}

namespace {

std::vector<QVec> transpose(const ColumnMatrix& m, const QVec* extra) {
  std::vector<QVec> rows(m.rows);
  for (std::size_t j = 0; j < m.cols.size(); ++j)
    for (const auto& [i, a] : m.cols[j]) rows[static_cast<std::size_t>(i)].emplace_back(static_cast<int>(j), a);
  if (extra)
    for (const auto& [i, a] : *extra) rows[static_cast<std::size_t>(i)].emplace_back(static_cast<int>(m.cols.size()), a);
  return rows;
}

}  // namespace

std::size_t rank(const ColumnMatrix& m) {
  EchelonBasis e;
  for (const auto& row : transpose(m, nullptr))
    if (!row.empty()) e.insert(row);
  return e.rank();
}

std::vector<QVec> kernel(const ColumnMatrix& m) {
  EchelonBasis e;
  for (const auto& row : transpose(m, nullptr))
    if (!row.empty()) e.insert(row);
  const auto rows = e.rref();
  const std::size_t n = m.cols.size();
  std::vector<int> slot(n, -1);  // free column -> kernel vector index
  std::vector<bool> pivot(n, false);
  for (const auto& [p, r] : rows) pivot[static_cast<std::size_t>(p)] = true;
  std::vector<QVec> out;
  for (std::size_t j = 0; j < n; ++j)
    if (!pivot[j]) {
      slot[j] = static_cast<int>(out.size());
      out.push_back({{static_cast<int>(j), Rational(1)}});
    }
  for (const auto& [p, r] : rows)
    for (const auto& [j, q] : r)
      if (j != p) out[static_cast<std::size_t>(slot[static_cast<std::size_t>(j)])].emplace_back(p, -q);
  for (auto& v : out) std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::optional<QVec> solve(const ColumnMatrix& m, const QVec& b) {
  for (const auto& [i, a] : b)
    if (i < 0 || static_cast<std::size_t>(i) >= m.rows) return std::nullopt;
  EchelonBasis e;
  for (const auto& row : transpose(m, &b))
    if (!row.empty()) e.insert(row);
  const int n = static_cast<int>(m.cols.size());
  QVec x;
  for (const auto& [p, r] : e.rref()) {
    if (p == n) return std::nullopt;
    if (!r.empty() && r.back().first == n) x.emplace_back(p, r.back().second);
  }
  return x;
}

}  // namespace brst
