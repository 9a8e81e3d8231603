#include "brst/gca.hpp"

#include <algorithm>
#include <cctype>

#include "brst/errors.hpp"

namespace brst {

const char* kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::ghost: return "ghost";
    case GeneratorKind::connection: return "connection";
    case GeneratorKind::curvature: return "curvature";
    case GeneratorKind::covariant_ghost_derivative: return "covariant_ghost_derivative";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "ce_ghost") return Scheme::ce_ghost;
  if (name == "small_FC" || name == "split_semidirect") return Scheme::small_FC;
  if (name == "small_full" || name == "split_full") return Scheme::small_full;
  throw ParseError("unknown variable scheme '" + std::string(name) + "'");
}

const char* scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::ce_ghost: return "ce_ghost";
    case Scheme::small_FC: return "small_FC";
    case Scheme::small_full: return "small_full";
  }
  return "?";
}

const char* grading_name(Grading g) {
  static const char* names[kGradingCount] = {"form",        "ghost",       "ghost_ideal",      "ghost_sub",
                                             "ghosts",      "connections", "curvatures",       "covariant_ghosts",
                                             "ideal_factors", "homogeneity"};
  return names[static_cast<int>(g)];
}

// ---- GeneratorTable --------------------------------------------------------

TablePtr GeneratorTable::make(LieAlgebra algebra, std::optional<SemidirectSplit> split, Scheme scheme) {
  auto t = std::shared_ptr<GeneratorTable>(new GeneratorTable());
  const int n = static_cast<int>(algebra.dim());
  t->ideal_.assign(n, true);
  if (split) {
    std::vector<int> seen(n, 0);
    for (int a : split->subalgebra) {
      if (a < 0 || a >= n) throw ValidationError("split index out of range");
      ++seen[a];
      t->ideal_[a] = false;
    }
    for (int a : split->ideal) {
      if (a < 0 || a >= n) throw ValidationError("split index out of range");
      ++seen[a];
    }
    for (int a = 0; a < n; ++a)
      if (seen[a] != 1) throw ValidationError("split index sets do not partition the basis");
  }
  t->algebra_ = std::move(algebra);
  t->split_ = std::move(split);
  t->scheme_ = scheme;

  std::vector<GeneratorKind> kinds{GeneratorKind::ghost};
  if (scheme == Scheme::small_full) kinds.push_back(GeneratorKind::connection);
  if (scheme != Scheme::ce_ghost) kinds.push_back(GeneratorKind::curvature);
  if (scheme == Scheme::small_full) kinds.push_back(GeneratorKind::covariant_ghost_derivative);

  static const char* k_labels[kKindCount] = {"eta", "B", "G", "Deta"};
  static const char* j_labels[kKindCount] = {"C", "A", "F", "DC"};
  static const int forms[kKindCount] = {0, 1, 2, 1};
  static const int ghosts[kKindCount] = {1, 0, 0, 1};

  t->lookup_.assign(static_cast<std::size_t>(kKindCount) * n, -1);
  for (GeneratorKind kind : kinds) {
    const int k = static_cast<int>(kind);
    for (bool ideal_sector : {false, true}) {
      int within = 0;
      for (int a = 0; a < n; ++a) {
        if (t->ideal_[a] != ideal_sector) continue;
        ++within;
        Generator g;
        g.id = static_cast<int>(t->generators_.size());
        g.label = std::string(ideal_sector ? j_labels[k] : k_labels[k]) + std::to_string(within);
        g.kind = kind;
        g.adjoint_index = a;
        g.form_degree = forms[k];
        g.ghost_number = ghosts[k];
        g.ideal = ideal_sector;
        t->lookup_[static_cast<std::size_t>(k) * n + a] = g.id;
        t->generators_.push_back(std::move(g));
      }
    }
  }
  const std::size_t size = t->generators_.size();
  for (auto& w : t->weights_) w.assign(size, 0);
  for (const auto& g : t->generators_) {
    const auto i = static_cast<std::size_t>(g.id);
    t->odd_.push_back(g.odd() ? 1 : 0);
    t->weights_[static_cast<int>(Grading::form)][i] = g.form_degree;
    t->weights_[static_cast<int>(Grading::ghost)][i] = g.ghost_number;
    t->weights_[static_cast<int>(Grading::ghost_ideal)][i] = g.ideal ? g.ghost_number : 0;
    t->weights_[static_cast<int>(Grading::ghost_sub)][i] = g.ideal ? 0 : g.ghost_number;
    t->weights_[static_cast<int>(Grading::ghosts) + static_cast<int>(g.kind)][i] = 1;
    t->weights_[static_cast<int>(Grading::ideal_factors)][i] = g.ideal ? 1 : 0;
    t->weights_[static_cast<int>(Grading::homogeneity)][i] = 1;
  }
  return t;
}

bool GeneratorTable::has_kind(GeneratorKind kind) const {
  return std::any_of(generators_.begin(), generators_.end(), [&](const Generator& g) { return g.kind == kind; });
}

int GeneratorTable::find(GeneratorKind kind, int adjoint_index) const {
  const int n = static_cast<int>(algebra_.dim());
  if (adjoint_index < 0 || adjoint_index >= n) return -1;
  return lookup_[static_cast<std::size_t>(static_cast<int>(kind)) * n + adjoint_index];
}

int GeneratorTable::id(GeneratorKind kind, int adjoint_index) const {
  const int i = find(kind, adjoint_index);
  if (i < 0)
    throw ValidationError(std::string("scheme ") + scheme_name(scheme_) + " has no " + kind_name(kind) +
                          " generator for index " + std::to_string(adjoint_index));
  return i;
}

int GeneratorTable::find_label(std::string_view label) const {
  for (const auto& g : generators_)
    if (g.label == label) return g.id;
  return -1;
}

bool GeneratorTable::in_ideal(int adjoint_index) const { return ideal_[static_cast<std::size_t>(adjoint_index)]; }

// ---- monomials -------------------------------------------------------------

Degrees degrees(const GeneratorTable& table, const Monomial& m) {
  Degrees d{};
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    for (int g = 0; g < kGradingCount; ++g) d[g] += m[i] * table.weight(static_cast<Grading>(g), static_cast<int>(i));
  }
  return d;
}

bool monomial_odd(const GeneratorTable& table, const Monomial& m) {
  int parity = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] && table.odd(static_cast<int>(i))) parity ^= 1;
  return parity != 0;
}

std::optional<Term> normalize(const GeneratorTable& table, const std::vector<int>& factors, const Rational& coefficient) {
  const int n = static_cast<int>(table.size());
  Monomial m(table.size(), 0);
  int inversions = 0;
  std::vector<int> odd_seen;
  for (int id : factors) {
    if (id < 0 || id >= n) throw ValidationError("unknown generator id " + std::to_string(id));
    if (table.odd(id)) {
      if (m[id]) return std::nullopt;
      for (int prev : odd_seen)
        if (prev > id) ++inversions;
      odd_seen.push_back(id);
    }
    if (m[id] == 255) throw ResourceError("exponent overflow");
    ++m[id];
  }
  if (coefficient == 0) return std::nullopt;
  return Term{(inversions & 1) ? Rational(-coefficient) : coefficient, std::move(m)};
}

std::optional<std::pair<int, Monomial>> multiply_monomials(const GeneratorTable& table, const Monomial& a,
                                                           const Monomial& b) {
  const std::size_t n = a.size();
  Monomial out(n, 0);
  int inversions = 0;
  int odd_in_a_above = 0;  // odd generators of a with id greater than the current index
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] && table.odd(static_cast<int>(i))) ++odd_in_a_above;
  for (std::size_t i = 0; i < n; ++i) {
    const bool odd = table.odd(static_cast<int>(i));
    if (odd && a[i]) --odd_in_a_above;
    if (odd && b[i]) {
      if (a[i]) return std::nullopt;
      inversions += odd_in_a_above;
    }
    const int e = a[i] + b[i];
    if (e > 255) throw ResourceError("exponent overflow");
    out[i] = static_cast<std::uint8_t>(e);
  }
  return std::make_pair((inversions & 1) ? -1 : 1, std::move(out));
}

// ---- Element ---------------------------------------------------------------

Element Element::constant(TablePtr table, const Rational& c) {
  Element e(table);
  if (c != 0) e.terms_.emplace(Monomial(e.table_->size(), 0), c);
  return e;
}

Element Element::generator(TablePtr table, int id) {
  if (id < 0 || static_cast<std::size_t>(id) >= table->size())
    throw ValidationError("unknown generator id " + std::to_string(id));
  Monomial m(table->size(), 0);
  m[id] = 1;
  return from_monomial(std::move(table), std::move(m));
}

Element Element::from_monomial(TablePtr table, Monomial m, const Rational& c) {
  Element e(std::move(table));
  if (c != 0) e.terms_.emplace(std::move(m), c);
  return e;
}

Rational Element::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Element::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Element::adopt(const Element& other) {
  if (!other.table_) return;
  if (!table_) {
    table_ = other.table_;
  } else if (table_ != other.table_) {
    throw ContextError("elements belong to different generator tables");
  }
}

Element& Element::operator+=(const Element& other) {
  adopt(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Element& Element::operator-=(const Element& other) {
  adopt(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Element& Element::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

bool operator==(const Element& a, const Element& b) {
  if (a.table_ && b.table_ && a.table_ != b.table_) return false;
  return a.terms_ == b.terms_;
}

Element multiply(const Element& x, const Element& y) {
  Element out;
  if (x.table() && y.table() && x.table() != y.table())
    throw ContextError("elements belong to different generator tables");
  out = Element(x.table() ? x.table() : y.table());
  if (x.is_zero() || y.is_zero()) return out;
  const auto& table = *out.table();
  for (const auto& [ma, ca] : x.terms())
    for (const auto& [mb, cb] : y.terms()) {
      auto prod = multiply_monomials(table, ma, mb);
      if (!prod) continue;
      out.add_term(prod->second, prod->first < 0 ? Rational(-(ca * cb)) : Rational(ca * cb));
    }
  return out;
}

std::optional<Degrees> element_degrees(const Element& x) {
  if (x.is_zero()) return std::nullopt;
  std::optional<Degrees> d;
  for (const auto& [m, c] : x.terms()) {
    const auto dm = degrees(*x.table(), m);
    if (d && *d != dm) return std::nullopt;
    d = dm;
  }
  return d;
}

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string factors;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (!factors.empty()) factors += ' ';
      factors += (*table_)[static_cast<int>(i)].label;
      if (m[i] > 1) factors += "^" + std::to_string(m[i]);
    }
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (factors.empty()) {
      out += brst::to_string(mag);
    } else if (mag == 1) {
      out += factors;
    } else {
      out += brst::to_string(mag) + " * " + factors;
    }
  }
  return out;
}

namespace {

class ElementParser {
public:
  ElementParser(const TablePtr& table, std::string_view text) : table_(table), text_(text) {}

  Element run() {
    Element out(table_);
    skip_ws();
    if (pos_ == text_.size()) fail("empty element");
    bool first = true;
    while (true) {
      skip_ws();
      if (pos_ == text_.size()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      parse_term(out, sign);
    }
    return out;
  }

private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("element syntax: " + what + " at offset " + std::to_string(pos_) + " in '" +
                     std::string(text_) + "'");
  }

  std::string_view read_while(bool (*pred)(char)) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && pred(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  static bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
  static bool is_label_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
  }

  void parse_term(Element& out, int sign) {
    Rational coef = sign;
    bool have_coef = false;
    if (is_digit(peek())) {
      std::string num(read_while(is_digit));
      if (peek() == '/') {
        ++pos_;
        const auto den = read_while(is_digit);
        if (den.empty()) fail("missing denominator");
        num += "/" + std::string(den);
      }
      coef *= parse_rational(num);
      have_coef = true;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
      }
    }
    std::vector<int> factors;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(peek()))) {
      const std::string label(read_while(is_label_char));
      const int id = table_->find_label(label);
      if (id < 0) fail("unknown generator '" + label + "'");
      int power = 1;
      if (peek() == '^') {
        ++pos_;
        const auto digits = read_while(is_digit);
        if (digits.empty()) fail("missing exponent");
        power = std::stoi(std::string(digits));
      }
      for (int k = 0; k < power; ++k) factors.push_back(id);
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
      }
    }
    if (!have_coef && factors.empty()) fail("expected a coefficient or a generator");
    if (auto t = normalize(*table_, factors, coef)) out.add_term(t->monomial, t->coefficient);
  }

  const TablePtr& table_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Element Element::parse(TablePtr table, std::string_view text) { return ElementParser(table, text).run(); }

// ---- slices ----------------------------------------------------------------

SliceSpec& SliceSpec::set(Grading g, int lo, int hi) {
  bounds[static_cast<std::size_t>(g)] = std::make_pair(lo, hi);
  return *this;
}

bool SliceSpec::contains(const Degrees& d) const {
  for (int g = 0; g < kGradingCount; ++g) {
    const auto& b = bounds[g];
    if (b && (d[g] < b->first || d[g] > b->second)) return false;
  }
  return true;
}

nlohmann::json SliceSpec::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (int g = 0; g < kGradingCount; ++g) {
    const auto& b = bounds[g];
    if (!b) continue;
    if (b->first == b->second)
      j[grading_name(static_cast<Grading>(g))] = b->first;
    else
      j[grading_name(static_cast<Grading>(g))] = {b->first, b->second};
  }
  return j;
}

std::vector<Monomial> basis_slice(const GeneratorTable& table, const SliceSpec& spec, std::size_t cap) {
  const int n = static_cast<int>(table.size());
  // Every even generator needs a finite exponent cap from some bounded grading.
  std::vector<int> max_exp(n, 1);
  for (int i = 0; i < n; ++i) {
    if (table.odd(i)) continue;
    int best = -1;
    for (int g = 0; g < kGradingCount; ++g) {
      const auto& b = spec.bounds[g];
      const int w = table.weight(static_cast<Grading>(g), i);
      if (!b || w <= 0) continue;
      const int m = std::max(0, b->second) / w;
      best = best < 0 ? m : std::min(best, m);
    }
    if (best < 0)
      throw ResourceError("slice is unbounded: no grading bounds generator " + table[i].label);
    max_exp[i] = std::min(best, 255);
  }
  for (int g = 0; g < kGradingCount; ++g) {
    const auto& b = spec.bounds[g];
    if (b && b->first > b->second) return {};
  }

  std::vector<Monomial> out;
  Monomial cur(table.size(), 0);
  Degrees acc{};
  // Largest amount each grading can still grow from generators i..n-1.
  std::vector<Degrees> reach(n + 1, Degrees{});
  for (int i = n - 1; i >= 0; --i) {
    reach[i] = reach[i + 1];
    for (int g = 0; g < kGradingCount; ++g) reach[i][g] += max_exp[i] * table.weight(static_cast<Grading>(g), i);
  }

  std::function<void(int)> dfs = [&](int i) {
    for (int g = 0; g < kGradingCount; ++g) {
      const auto& b = spec.bounds[g];
      if (b && acc[g] + reach[i][g] < b->first) return;
    }
    if (i == n) {
      if (spec.contains(acc)) {
        if (out.size() >= cap)
          throw ResourceError("slice exceeds the cap of " + std::to_string(cap) + " monomials");
        out.push_back(cur);
      }
      return;
    }
    for (int e = max_exp[i]; e >= 0; --e) {
      bool ok = true;
      for (int g = 0; g < kGradingCount && ok; ++g) {
        const auto& b = spec.bounds[g];
        if (b && acc[g] + e * table.weight(static_cast<Grading>(g), i) > b->second) ok = false;
      }
      if (!ok) continue;
      cur[i] = static_cast<std::uint8_t>(e);
      for (int g = 0; g < kGradingCount; ++g) acc[g] += e * table.weight(static_cast<Grading>(g), i);
      dfs(i + 1);
      for (int g = 0; g < kGradingCount; ++g) acc[g] -= e * table.weight(static_cast<Grading>(g), i);
      cur[i] = 0;
    }
  };
  dfs(0);
  return out;
}

}  // namespace brst
