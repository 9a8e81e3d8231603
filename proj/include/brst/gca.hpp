#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "brst/liealg.hpp"

namespace brst {

enum class GeneratorKind : std::uint8_t { ghost = 0, connection = 1, curvature = 2, covariant_ghost_derivative = 3 };
inline constexpr int kKindCount = 4;

const char* kind_name(GeneratorKind kind);

/// Which generator kinds a table instantiates.
///   ce_ghost   : ghosts only
///   small_FC   : ghosts and curvatures
///   small_full : ghosts, connections, curvatures, covariant ghost derivatives
enum class Scheme { ce_ghost, small_FC, small_full };

/// Accepts the three names above plus "split_semidirect" (= small_FC) and
/// "split_full" (= small_full).
Scheme parse_scheme(std::string_view name);
const char* scheme_name(Scheme scheme);

struct Generator {
  int id = 0;
  std::string label;
  GeneratorKind kind = GeneratorKind::ghost;
  int adjoint_index = 0;
  int form_degree = 0;
  int ghost_number = 0;
  bool ideal = false;  // adjoint index lies in the ideal J of the split

  bool odd() const noexcept { return ((form_degree + ghost_number) & 1) != 0; }
};

/// Multigradings available for slicing.
enum class Grading : int {
  form = 0,
  ghost,
  ghost_ideal,  // ghost number carried by J-sector generators (gh_C)
  ghost_sub,    // ghost number carried by K-sector generators
  ghosts,       // per-kind factor counts
  connections,
  curvatures,
  covariant_ghosts,
  ideal_factors,  // number of J-sector factors of any kind
  homogeneity,    // total number of factors
};
inline constexpr int kGradingCount = 10;
const char* grading_name(Grading g);

using Degrees = std::array<int, kGradingCount>;

class GeneratorTable;
using TablePtr = std::shared_ptr<const GeneratorTable>;

/// Ordered generator set. Ids are sorted by kind (ghost, connection,
/// curvature, covariant ghost derivative), then K-sector before J-sector,
/// then adjoint index. K-sector labels are eta/B/G/Deta, J-sector labels
/// C/A/F/DC, numbered from 1 within the sector. Without a split every
/// generator is in the J sector.
class GeneratorTable {
public:
  static TablePtr make(LieAlgebra algebra, std::optional<SemidirectSplit> split, Scheme scheme);

  const LieAlgebra& algebra() const noexcept { return algebra_; }
  const std::optional<SemidirectSplit>& split() const noexcept { return split_; }
  Scheme scheme() const noexcept { return scheme_; }

  std::size_t size() const noexcept { return generators_.size(); }
  const Generator& operator[](int id) const { return generators_[static_cast<std::size_t>(id)]; }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  bool odd(int id) const noexcept { return odd_[static_cast<std::size_t>(id)] != 0; }

  bool has_kind(GeneratorKind kind) const;
  /// -1 when the table has no such generator.
  int find(GeneratorKind kind, int adjoint_index) const;
  /// Throws ValidationError when absent.
  int id(GeneratorKind kind, int adjoint_index) const;
  int find_label(std::string_view label) const;

  bool in_ideal(int adjoint_index) const;
  int weight(Grading g, int id) const { return weights_[static_cast<std::size_t>(g)][static_cast<std::size_t>(id)]; }

private:
  GeneratorTable() = default;

  LieAlgebra algebra_ = so3();
  std::optional<SemidirectSplit> split_;
  Scheme scheme_ = Scheme::ce_ghost;
  std::vector<Generator> generators_;
  std::vector<std::uint8_t> odd_;
  std::vector<int> lookup_;  // kind * dim + adjoint -> id or -1
  std::vector<bool> ideal_;
  std::array<std::vector<int>, kGradingCount> weights_;
};

/// Dense exponent vector indexed by generator id. Odd generators have
/// exponent 0 or 1. Canonical factor order is ascending id.
using Monomial = std::vector<std::uint8_t>;

Degrees degrees(const GeneratorTable& table, const Monomial& m);
bool monomial_odd(const GeneratorTable& table, const Monomial& m);

struct Term {
  Rational coefficient;
  Monomial monomial;
};

/// Sorts a raw factor sequence into canonical order. The sign is
/// (-1)^(odd-odd transpositions); a repeated odd generator gives nullopt.
std::optional<Term> normalize(const GeneratorTable& table, const std::vector<int>& factors, const Rational& coefficient);

/// Product of canonical monomials: nullopt when an odd generator repeats,
/// otherwise the sign (+1/-1) and the product.
std::optional<std::pair<int, Monomial>> multiply_monomials(const GeneratorTable& table, const Monomial& a,
                                                           const Monomial& b);

/// Sparse element of the free graded-commutative algebra. Terms are kept
/// in descending exponent-vector order, which is also the enumeration order
/// of basis_slice. A default-constructed Element is a context-free zero.
class Element {
public:
  using Terms = std::map<Monomial, Rational, std::greater<Monomial>>;

  Element() = default;
  explicit Element(TablePtr table) : table_(std::move(table)) {}

  static Element constant(TablePtr table, const Rational& c);
  static Element one(TablePtr table) { return constant(std::move(table), 1); }
  static Element generator(TablePtr table, int id);
  static Element from_monomial(TablePtr table, Monomial m, const Rational& c = 1);

  /// Parses `coef * label^k label ...` terms joined by + / -.
  static Element parse(TablePtr table, std::string_view text);

  const TablePtr& table() const noexcept { return table_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(const Rational& s);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Rational(-1); }
  friend Element operator*(const Rational& s, Element a) { return a *= s; }
  friend Element operator*(const Element& a, const Element& b);
  friend bool operator==(const Element& a, const Element& b);

  std::string to_string() const;

private:
  void adopt(const Element& other);

  TablePtr table_;
  Terms terms_;
};

Element multiply(const Element& x, const Element& y);

/// Degrees of a homogeneous element; nullopt for zero or inhomogeneous input.
std::optional<Degrees> element_degrees(const Element& x);

/// Per-grading inclusive ranges. Unset gradings are unconstrained.
struct SliceSpec {
  std::array<std::optional<std::pair<int, int>>, kGradingCount> bounds{};

  SliceSpec& set(Grading g, int value) { return set(g, value, value); }
  SliceSpec& set(Grading g, int lo, int hi);
  const std::optional<std::pair<int, int>>& get(Grading g) const { return bounds[static_cast<std::size_t>(g)]; }

  bool contains(const Degrees& d) const;
  nlohmann::json to_json() const;
};

inline constexpr std::size_t kDefaultSliceCap = 200000;

/// Deterministic enumeration of all canonical monomials meeting the bounds,
/// in descending exponent-vector order. Throws ResourceError when an even
/// generator is unbounded or the slice exceeds `cap` monomials.
std::vector<Monomial> basis_slice(const GeneratorTable& table, const SliceSpec& spec,
                                  std::size_t cap = kDefaultSliceCap);

}  // namespace brst
