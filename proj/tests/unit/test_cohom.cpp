#include <doctest.h>

#include "../oracle/dense_rank.hpp"
#include "brst/cohom.hpp"
#include "brst/errors.hpp"
#include "brst/hs.hpp"

using namespace brst;

namespace {

TablePtr table(const char* alg, Scheme s) {
  return GeneratorTable::make(builtin_algebra(alg), default_split(alg), s);
}

SliceSpec ghost(int g) {
  SliceSpec s;
  s.set(Grading::ghost, g);
  return s;
}

}  // namespace

TEST_CASE("so3 ghost cohomology") {
  const auto t = table("so3", Scheme::ce_ghost);
  const Derivation g = build_operator("gamma", t);
  const std::size_t expect[] = {1, 0, 0, 1};
  for (int q = 0; q <= 3; ++q) {
    const auto h = cohomology(g, ghost(q));
    CHECK(h.dim() == expect[q]);
    CHECK(h.dim() == oracle::cohomology_dim(g, ghost(q)));
  }
  const auto h3 = cohomology(g, ghost(3));
  CHECK(h3.representatives().front().to_string() == "eta1 eta2 eta3");
  CHECK(h3.coordinates(Element::parse(t, "eta1 eta2 eta3")) == std::vector<Rational>{1});
  const auto m = matrix_of(g, ghost(1));
  CHECK(rank(m.matrix) == 3);
  CHECK(cohomology(g, ghost(1)).to_json() == nlohmann::json::parse(R"({"dim":0,"representatives":[],"grading":{"ghost":1}})"));
}

TEST_CASE("coboundaries and witnesses") {
  const auto t = table("so3", Scheme::ce_ghost);
  const Derivation g = build_operator("gamma", t);
  const auto w = is_coboundary(g, Element::parse(t, "eta2 eta3"), ghost(1));
  REQUIRE(w);
  CHECK(g.apply(*w) == Element::parse(t, "eta2 eta3"));
  CHECK_FALSE(is_coboundary(g, Element::parse(t, "eta1 eta2 eta3"), ghost(2)));
  CHECK_THROWS_AS(is_coboundary(g, Element::parse(t, "eta1"), ghost(0)), ValidationError);
  const auto h2 = cohomology(g, ghost(2));
  CHECK(h2.is_trivial(Element::parse(t, "eta1 eta2")));
  CHECK_THROWS_AS(h2.coordinates(Element::parse(t, "eta1")), ValidationError);
}

TEST_CASE("relative gammaS1 matrix on iso3 at curvature 2") {
  const auto t = table("iso3", Scheme::small_FC);
  const Derivation g1 = build_operator("gammaS1", t);
  const SliceSpec dom = relative_slice(0, 2);
  const auto m = matrix_of(g1, dom);
  bool closed = false;
  const auto dense = oracle::matrix(g1, m.domain, m.codomain, &closed);
  CHECK(closed);
  CHECK(m.domain.size() == 21);
  CHECK(kernel(m.matrix).size() == m.domain.size() - oracle::rank(dense));
  CHECK(kernel(m.matrix).size() == 7);
}

TEST_CASE("invariants") {
  const auto t = table("iso21", Scheme::small_FC);
  const auto ops = subalgebra_action(t);
  const auto inv = invariant_subspace(ops, t, relative_slice(0, 2));
  CHECK(inv.size() == 3);
  for (const auto& v : inv)
    for (const auto& op : ops) CHECK(op.apply(v).is_zero());
  CHECK(invariant_subspace({}, slice_elements(t, relative_slice(0, 2))).size() == 21);
  std::size_t cumulative = 0;
  for (int k = 0; k <= 2; ++k) cumulative += invariant_subspace(ops, t, relative_slice(1, k)).size();
  CHECK(cumulative == 3);
}

TEST_CASE("explicit complexes are checked") {
  const auto t = table("so3", Scheme::ce_ghost);
  const Derivation g = build_operator("gamma", t);
  const auto one = slice_elements(t, ghost(1)), two = slice_elements(t, ghost(2));
  CHECK(cohomology(g, one, two).dim() == 0);
  CHECK_THROWS_AS(cohomology(g, one, slice_elements(t, ghost(3))), ValidationError);
}
