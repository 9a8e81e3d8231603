#include <doctest.h>

#include "brst/errors.hpp"
#include "brst/liealg.hpp"

using namespace brst;

namespace {

// Brute-force Jacobi sum for one (a,b,c,d).
Rational jacobi(const LieAlgebra& g, int a, int b, int c, int d) {
  Rational s = 0;
  for (std::size_t e = 0; e < g.dim(); ++e)
    s += g.f(a, b, e) * g.f(e, c, d) + g.f(b, c, e) * g.f(e, a, d) + g.f(c, a, e) * g.f(e, b, d);
  return s;
}

// G_AB = f^D_AC f^C_BD by direct double contraction.
RationalMatrix killing_by_hand(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  RationalMatrix k(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) k(a, b) += g.f(a, c, d) * g.f(b, d, c);
  return k;
}

// so3 with f^1_{23} raised to 2; `partner` also moves f^1_{32}.
LieAlgebra perturbed_so3(bool partner) {
  const LieAlgebra base = so3();
  std::vector<Rational> t(27);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) t[(a * 3 + b) * 3 + c] = base.f(a, b, c);
  t[(1 * 3 + 2) * 3 + 0] = 2;
  if (partner) t[(2 * 3 + 1) * 3 + 0] = -2;
  return LieAlgebra::from_tensor("so3p", base.basis(), t);
}

}  // namespace

TEST_CASE("builtins satisfy antisymmetry and Jacobi") {
  for (const char* name : {"so3", "so21", "iso3", "iso21", "so21+so21", "abelian3", "so3+abelian1"}) {
    const LieAlgebra g = builtin_algebra(name);
    CHECK_MESSAGE(validate(g).ok(), name);
    for (int a = 0; a < int(g.dim()); ++a)
      for (int b = 0; b < int(g.dim()); ++b)
        for (int c = 0; c < int(g.dim()); ++c)
          for (int d = 0; d < int(g.dim()); ++d) REQUIRE(jacobi(g, a, b, c, d) == 0);
  }
}

TEST_CASE("so3 with f^1_23 perturbed") {
  // Moving both f^1_{23} and f^1_{32} only rescales a basis vector: still a Lie algebra.
  CHECK(validate(perturbed_so3(true)).ok());

  // Moving f^1_{23} alone breaks antisymmetry and Jacobi; the report must be exactly
  // the set of nonzero brute-force components.
  const LieAlgebra g = perturbed_so3(false);
  const auto report = validate(g);
  REQUIRE_FALSE(report.ok());
  std::size_t jacobi_reported = 0, antisym_reported = 0;
  for (const auto& v : report.violations) {
    if (v.kind == Violation::Kind::jacobi) {
      ++jacobi_reported;
      CHECK(v.value != 0);
      CHECK(v.value == jacobi(g, v.indices[0], v.indices[1], v.indices[2], v.indices[3]));
    } else {
      ++antisym_reported;
      CHECK(v.indices[0] == 1);
      CHECK(v.indices[1] == 2);
    }
  }
  std::size_t nonzero = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) nonzero += jacobi(g, a, b, c, d) != 0;
  CHECK(nonzero > 0);
  CHECK(jacobi_reported == nonzero);
  CHECK(antisym_reported == 1);
}

TEST_CASE("a two-bracket algebra failing Jacobi is reported") {
  // [e1,e2] = e3, [e2,e3] = e2
  const LieAlgebra g("bad", {"e1", "e2", "e3"}, {{0, 1, 2, 1}, {1, 2, 1, 1}});
  CHECK_FALSE(validate(g).ok());
}

TEST_CASE("antisymmetry violations come from raw tensors") {
  std::vector<Rational> t(8);
  t[(0 * 2 + 1) * 2 + 0] = 1;  // f^1_{12} without its partner
  const auto report = validate(LieAlgebra::from_tensor("x", {"a", "b"}, t));
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().kind == Violation::Kind::antisymmetry);
}

TEST_CASE("constructor rejects malformed entries") {
  CHECK_THROWS_AS(LieAlgebra("x", {"a", "b"}, {{0, 0, 1, 1}}), ParseError);
  CHECK_THROWS_AS(LieAlgebra("x", {"a", "b"}, {{0, 2, 1, 1}}), ParseError);
  CHECK_THROWS_AS(LieAlgebra("x", {"a", "b"}, {{0, 1, 1, 1}, {1, 0, 1, 1}}), ParseError);
  CHECK_THROWS_AS(LieAlgebra("x", {"a", "a"}, {}), ParseError);
}

TEST_CASE("Killing forms") {
  for (const char* name : {"so3", "so21", "iso3", "iso21", "so21+so21", "abelian2"}) {
    const LieAlgebra g = builtin_algebra(name);
    const BilinearForm k = killing_form(g);
    CHECK(k.matrix == killing_by_hand(g));
    CHECK(check_invariant_metric(g, k).invariant);
  }
  CHECK(killing_form(so3()).matrix == RationalMatrix::diagonal({-2, -2, -2}));
  CHECK(killing_form(so3()).rank() == 3);
  const BilinearForm k21 = killing_form(iso21());
  CHECK(k21.rank() == 3);
  for (int a = 0; a < 6; ++a)
    for (int b = 3; b < 6; ++b) CHECK(k21.matrix(a, b) == 0);
  CHECK(killing_form(abelian(4)).matrix.is_zero());
  CHECK(killing_form(builtin_algebra("so21+so21")).rank() == 6);
}

TEST_CASE("semidirect certificates") {
  const auto ok = verify_semidirect(iso3(), SemidirectSplit::parse("K=0,1,2;J=3,4,5", 6));
  CHECK(ok.ok);
  CHECK(ok.ideal_abelian);
  CHECK(ok.subalgebra_killing_rank == 3);

  const LieAlgebra s = direct_sum(so3(), so3());
  const auto sum = verify_semidirect(s, SemidirectSplit::parse("K=0,1,2;J=3,4,5", 6));
  CHECK(sum.ok);
  CHECK_FALSE(sum.ideal_abelian);

  const auto bad = verify_semidirect(iso3(), SemidirectSplit::parse("K=3,4,5;J=0,1,2", 6));
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.failure.empty());

  CHECK_THROWS_AS(verify_semidirect(iso3(), SemidirectSplit::parse("K=0,1;J=3,4,5", 6)), ValidationError);
  CHECK_THROWS_AS(SemidirectSplit::parse("K=0,9", 6), ParseError);
  CHECK_THROWS_AS(SemidirectSplit::parse("oops", 6), ParseError);
}

TEST_CASE("invariant metrics") {
  CHECK(check_invariant_metric(iso21(), iso21_omega0()).invariant);
  const auto r = check_invariant_metric(iso21(), BilinearForm{RationalMatrix::identity(6)});
  CHECK_FALSE(r.invariant);
  REQUIRE(r.witness);
}

TEST_CASE("deformed iso21") {
  for (const Rational& l : {Rational(0), Rational(1), Rational(-1), Rational(1, 2)}) {
    const auto d = deform_iso21(l, 0);
    CHECK(validate(d.algebra).ok());
    CHECK(killing_form(d.algebra).rank() == (l == 0 ? 3u : 6u));
    CHECK(check_invariant_metric(d.algebra, d.metric).invariant);
  }
  const auto d00 = deform_iso21(0, 0);
  CHECK(d00.metric.matrix == iso21_omega0().matrix);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c) CHECK(d00.algebra.f(a, b, c) == iso21().f(a, b, c));
  // each (J_a, P_a) block contributes g_aa^2 (lambda mu^2 - 1)
  for (auto [l, m] : {std::pair<Rational, Rational>{1, 0}, {Rational(1, 2), 2}, {1, 1}, {2, 3}}) {
    const Rational t = l * m * m - 1;
    CHECK(deform_iso21(l, m).metric.matrix.determinant() == t * t * t);
  }
}

TEST_CASE("JSON round trip and builtin names") {
  for (const char* name : {"iso21", "so21+so21", "abelian(2)", "abelian<2>"}) {
    const LieAlgebra g = builtin_algebra(name);
    const LieAlgebra h = LieAlgebra::from_json(g.to_json());
    CHECK(h.to_json() == g.to_json());
  }
  CHECK_THROWS_AS(builtin_algebra("so5"), ParseError);
  CHECK_THROWS_AS(LieAlgebra::from_json(nlohmann::json::parse(R"({"name":"x"})")), ParseError);
  const LieAlgebra s = builtin_algebra("so21+so21");
  CHECK(s.dim() == 6);
  CHECK(s.basis()[3] == "J1_2");
}
