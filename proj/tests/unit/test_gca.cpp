#include <doctest.h>

#include <random>

#include "../oracle/dense_rank.hpp"
#include "brst/errors.hpp"
#include "brst/gca.hpp"

using namespace brst;

namespace {

TablePtr table(const char* alg, Scheme s) {
  return GeneratorTable::make(builtin_algebra(alg), default_split(alg), s);
}

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Element el(const TablePtr& t, const char* s) { return Element::parse(t, s); }

}  // namespace

TEST_CASE("generator tables") {
  const auto t = table("iso21", Scheme::small_full);
  CHECK(t->size() == 24);
  CHECK(t->find_label("eta1") >= 0);
  CHECK(t->find_label("C3") >= 0);
  CHECK(t->find_label("Deta2") >= 0);
  CHECK(t->find_label("F1") >= 0);
  CHECK(t->odd(t->find_label("eta1")));
  CHECK(t->odd(t->find_label("A1")));
  CHECK_FALSE(t->odd(t->find_label("G1")));
  CHECK_FALSE(t->odd(t->find_label("DC1")));
  CHECK(t->find_label("B1") < t->find_label("A1"));
  CHECK(table("so3", Scheme::ce_ghost)->size() == 3);
  CHECK(table("iso3", Scheme::small_FC)->size() == 12);
  CHECK(parse_scheme("split_semidirect") == Scheme::small_FC);
  CHECK_THROWS_AS(parse_scheme("nope"), ParseError);
}

TEST_CASE("Koszul signs") {
  const auto t = table("iso3", Scheme::small_full);
  CHECK(el(t, "eta2 eta1") == -el(t, "eta1 eta2"));
  CHECK(el(t, "eta1 eta1").is_zero());
  CHECK(el(t, "eta1 A1 eta1").is_zero());
  CHECK(el(t, "G2 G1") == el(t, "G1 G2"));
  CHECK(el(t, "G1 G1") == el(t, "G1^2"));
  CHECK(el(t, "A1 eta1") == -el(t, "eta1 A1"));
  CHECK(el(t, "DC1 eta1") == el(t, "eta1 DC1"));
  const Element x = el(t, "eta1 A2"), y = el(t, "C1 B3");
  CHECK(x * y == y * x);  // even * even
  const Element a = el(t, "eta1"), b = el(t, "A2 G1");
  CHECK(a * b == -(b * a));
  CHECK(((a + x) * (y + b)) == a * y + a * b + x * y + x * b);
}

TEST_CASE("products agree with the factor-list oracle") {
  const auto t = table("iso21", Scheme::small_full);
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> gen(0, static_cast<int>(t->size()) - 1), len(0, 4), coef(-3, 3);
  for (int trial = 0; trial < 300; ++trial) {
    Element x(t), y(t);
    for (int k = 0; k < 3; ++k) {
      std::vector<int> fx, fy;
      for (int i = len(rng); i > 0; --i) fx.push_back(gen(rng));
      for (int i = len(rng); i > 0; --i) fy.push_back(gen(rng));
      if (auto s = oracle::sort_factors(*t, fx)) x.add_term(s->second, coef(rng) * s->first);
      if (auto s = oracle::sort_factors(*t, fy)) y.add_term(s->second, coef(rng) * s->first);
    }
    CHECK(oracle::poly(x * y) == oracle::multiply(*t, oracle::poly(x), oracle::poly(y)));
  }
}

TEST_CASE("text round trip") {
  const auto t = table("iso21", Scheme::small_full);
  for (const char* s : {"0", "1", "-1/2", "G1^2 + G2^2", "-eta2 eta3", "1/2 * F1 C3", "eta1 eta2 eta3 C1 G1^3 - 7/3 * A2 DC3"}) {
    const Element e = el(t, s);
    CHECK(Element::parse(t, e.to_string()) == e);
  }
  CHECK(el(t, "G1^2 + G2^2").to_string() == "G1^2 + G2^2");
  CHECK(el(t, "eta3 eta2").to_string() == "-eta2 eta3");
  CHECK(el(t, "1/2 * F1 C3").to_string() == "1/2 * C3 F1");
  CHECK_THROWS_AS(el(t, "X9"), ParseError);
  CHECK_THROWS_AS(el(t, "eta1 +"), ParseError);
}

TEST_CASE("basis slices count like the combinatorics") {
  const auto ce = table("so3", Scheme::ce_ghost);
  for (int g = 0; g <= 4; ++g) {
    SliceSpec s;
    s.set(Grading::ghost, g);
    CHECK(basis_slice(*ce, s).size() == binom(3, g));
  }
  const auto fc = table("iso3", Scheme::small_FC);
  for (int g = 0; g <= 6; ++g)
    for (int k = 0; k <= 4; ++k) {
      SliceSpec s;
      s.set(Grading::ghost, g).set(Grading::curvatures, k);
      const auto b = basis_slice(*fc, s);
      CHECK(b.size() == binom(6, g) * binom(k + 5, 5));
      CHECK(std::is_sorted(b.begin(), b.end(), std::greater<>()));
      for (const auto& m : b) CHECK(s.contains(degrees(*fc, m)));
    }
  SliceSpec open;
  open.set(Grading::ghost, 1);
  CHECK_THROWS_AS(basis_slice(*fc, open), ResourceError);
  SliceSpec big;
  big.set(Grading::curvatures, 12);
  CHECK_THROWS_AS(basis_slice(*fc, big, 1000), ResourceError);
}

TEST_CASE("gradings") {
  const auto t = table("iso3", Scheme::small_full);
  const auto d = element_degrees(el(t, "eta1 C2 G3 F1 A2"));
  REQUIRE(d);
  CHECK((*d)[int(Grading::form)] == 5);
  CHECK((*d)[int(Grading::ghost)] == 2);
  CHECK((*d)[int(Grading::ghost_ideal)] == 1);
  CHECK((*d)[int(Grading::ghost_sub)] == 1);
  CHECK((*d)[int(Grading::curvatures)] == 2);
  CHECK((*d)[int(Grading::connections)] == 1);
  CHECK((*d)[int(Grading::ideal_factors)] == 3);
  CHECK_FALSE(element_degrees(el(t, "eta1 + G1")));
}

TEST_CASE("mixing tables is refused") {
  const auto a = table("so3", Scheme::ce_ghost), b = table("so21", Scheme::ce_ghost);
  CHECK_THROWS_AS(el(a, "eta1") + el(b, "eta1"), ContextError);
}
