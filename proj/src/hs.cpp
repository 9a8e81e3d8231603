#include "brst/hs.hpp"

#include <algorithm>

#include "brst/errors.hpp"
#include "brst/parallel.hpp"

namespace brst {

namespace {

SliceSpec eta_slice(int q) {
  SliceSpec s;
  s.set(Grading::ghost_sub, q)
      .set(Grading::ghost_ideal, 0)
      .set(Grading::connections, 0)
      .set(Grading::curvatures, 0)
      .set(Grading::covariant_ghosts, 0);
  return s;
}

std::size_t subalgebra_size(const TablePtr& table) {
  const auto& split = table->split();
  return split ? split->subalgebra.size() : 0;
}

std::size_t ideal_size(const TablePtr& table) {
  const auto& split = table->split();
  return split ? split->ideal.size() : table->algebra().dim();
}

}  // namespace

PrimitiveSet primitives_in(const TablePtr& table, int max_ghost) {
  PrimitiveSet out;
  const auto& split = table->split();
  if (split && !split->subalgebra.empty()) {
    if (!restricted_killing_form(table->algebra(), split->subalgebra).nondegenerate())
      throw ValidationError("Killing form of the subalgebra is degenerate; primitives need a semisimple factor");
  }
  const Derivation d = gamma_s_part(table, 0);
  std::vector<std::vector<Element>> reps(static_cast<std::size_t>(max_ghost) + 1);
  for (int q = 0; q <= max_ghost; ++q) {
    const auto prev = slice_elements(table, eta_slice(q - 1));
    const auto cur = slice_elements(table, eta_slice(q));
    CohomologyBasis h = cohomology(d, prev, cur);
    out.dims.push_back(h.dim());
    reps[q] = h.representatives();
    if (q == 0 || h.dim() == 0) continue;
    // indecomposables: classes independent of coboundaries and of products of lower classes
    MonomialIndex index(cur);
    EchelonBasis e;
    for (const auto& w : prev) {
      const Element b = d.apply(w);
      if (!b.is_zero()) e.insert(index.coordinates(b));
    }
    for (int i = 1; i < q; ++i)
      for (const auto& x : reps[i])
        for (const auto& y : reps[q - i]) {
          const Element p = x * y;
          if (!p.is_zero()) e.insert(index.coordinates(p));
        }
    for (const auto& r : h.representatives())
      if (e.insert(index.coordinates(r))) {
        out.primitives.push_back(r);
        out.primitive_degrees.push_back(q);
      }
  }
  // products of distinct primitives
  const std::size_t np = out.primitives.size();
  std::vector<std::pair<int, std::size_t>> subsets;  // (degree, mask)
  for (std::size_t mask = 0; mask < (std::size_t{1} << np); ++mask) {
    int deg = 0;
    for (std::size_t i = 0; i < np; ++i)
      if (mask >> i & 1) deg += out.primitive_degrees[i];
    subsets.emplace_back(deg, mask);
  }
  std::stable_sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [deg, mask] : subsets) {
    Element prod = Element::one(table);
    std::vector<int> factors;
    for (std::size_t i = 0; i < np; ++i)
      if (mask >> i & 1) {
        prod = prod * out.primitives[i];
        factors.push_back(static_cast<int>(i));
      }
    out.basis_factors.push_back(std::move(factors));
    out.monomial_basis.push_back(std::move(prod));
    out.basis_degrees.push_back(deg);
  }
  return out;
}

PrimitiveSet primitives(const LieAlgebra& semisimple, int max_ghost) {
  if (!killing_form(semisimple).nondegenerate())
    throw ValidationError("algebra '" + semisimple.name() + "' is not semisimple (degenerate Killing form)");
  SemidirectSplit all_k;
  for (std::size_t i = 0; i < semisimple.dim(); ++i) all_k.subalgebra.push_back(static_cast<int>(i));
  all_k.abelian_ideal = true;
  return primitives_in(GeneratorTable::make(semisimple, all_k, Scheme::ce_ghost), max_ghost);
}

ModuleKind parse_module(std::string_view name) {
  if (name == "trivial" || name == "R") return ModuleKind::trivial;
  if (name == "symmetric" || name == "S") return ModuleKind::symmetric;
  throw ParseError("unknown module '" + std::string(name) + "' (expected trivial or symmetric)");
}

SliceSpec relative_slice(int ghost_ideal, int curvature) {
  SliceSpec s;
  s.set(Grading::ghost_sub, 0)
      .set(Grading::ghost_ideal, ghost_ideal)
      .set(Grading::curvatures, curvature)
      .set(Grading::connections, 0)
      .set(Grading::covariant_ghosts, 0);
  return s;
}

SliceSpec direct_slice(int ghost, int curvature) {
  SliceSpec s;
  s.set(Grading::ghost, ghost)
      .set(Grading::curvatures, curvature)
      .set(Grading::connections, 0)
      .set(Grading::covariant_ghosts, 0);
  return s;
}

std::vector<Derivation> subalgebra_action(const TablePtr& table) {
  std::vector<Derivation> ops;
  if (const auto& split = table->split())
    for (int a : split->subalgebra) ops.push_back(rho_t(table, a));
  return ops;
}

std::vector<RelativePiece> relative_cohomology(const TablePtr& table, const HSOptions& options) {
  if (options.curvature_cap() > 0 && !table->has_kind(GeneratorKind::curvature))
    throw ValidationError("the symmetric module needs curvature generators (use small_FC or small_full)");
  const int max_c = static_cast<int>(ideal_size(table));
  const int cap = options.curvature_cap();
  const auto ops = subalgebra_action(table);
  const Derivation d = gamma_s_part(table, 1);

  // invariant subspaces W(c, k) for c = 0..max_c
  std::vector<std::pair<int, int>> keys;
  for (int k = 0; k <= cap; ++k)
    for (int c = 0; c <= max_c; ++c) keys.emplace_back(c, k);
  auto spaces = parallel_map(keys.size(), options.jobs, [&](std::size_t i) {
    return invariant_subspace(ops, table, relative_slice(keys[i].first, keys[i].second));
  });
  auto pieces = parallel_map(keys.size(), options.jobs, [&](std::size_t i) {
    const auto [c, k] = keys[i];
    static const std::vector<Element> none;
    const auto& prev = c == 0 ? none : spaces[i - 1];
    RelativePiece p;
    p.ghost_ideal = c;
    p.curvature = k;
    p.invariant_dim = spaces[i].size();
    p.cohomology = cohomology(d, prev, spaces[i]);
    p.cohomology.grading = relative_slice(c, k).to_json();
    return p;
  });
  std::sort(pieces.begin(), pieces.end(), [](const RelativePiece& a, const RelativePiece& b) {
    return std::tie(a.ghost_ideal, a.curvature) < std::tie(b.ghost_ideal, b.curvature);
  });
  return pieces;
}

HSDecomposition assemble(const PrimitiveSet& primitive_part, const std::vector<RelativePiece>& relative_part) {
  HSDecomposition out;
  out.primitive_part = primitive_part;
  out.relative_part = relative_part;
  for (std::size_t t = 0; t < primitive_part.monomial_basis.size(); ++t) {
    const Element& theta = primitive_part.monomial_basis[t];
    for (const auto& piece : relative_part)
      for (const auto& v : piece.cohomology.representatives()) {
        AssembledClass a;
        a.v = v;
        a.theta = theta;
        a.theta_factors = primitive_part.basis_factors[t];
        a.element = v * theta;
        a.ghost_ideal = piece.ghost_ideal;
        a.curvature = piece.curvature;
        a.ghost = piece.ghost_ideal + primitive_part.basis_degrees[t];
        ++out.dims[{a.ghost, a.curvature}];
        out.assembled.push_back(std::move(a));
      }
  }
  std::stable_sort(out.assembled.begin(), out.assembled.end(), [](const AssembledClass& a, const AssembledClass& b) {
    return std::tie(a.ghost, a.curvature) < std::tie(b.ghost, b.curvature);
  });
  return out;
}

HSDecomposition hochschild_serre(const TablePtr& table, const HSOptions& options) {
  if (!table->split()) throw ValidationError("Hochschild-Serre reduction needs a semidirect split");
  const auto prim = primitives_in(table, static_cast<int>(subalgebra_size(table)));
  return assemble(prim, relative_cohomology(table, options));
}

std::vector<std::size_t> HSDecomposition::ghost_dims(int max_ghost) const {
  std::vector<std::size_t> out(static_cast<std::size_t>(max_ghost) + 1, 0);
  for (const auto& [key, n] : dims)
    if (key.first >= 0 && key.first <= max_ghost) out[static_cast<std::size_t>(key.first)] += n;
  return out;
}

nlohmann::json HSDecomposition::to_json(bool with_representatives) const {
  nlohmann::json prim = nlohmann::json::array();
  for (std::size_t i = 0; i < primitive_part.primitives.size(); ++i)
    prim.push_back({{"ghost", primitive_part.primitive_degrees[i]}, {"element", primitive_part.primitives[i].to_string()}});
  nlohmann::json rel = nlohmann::json::array();
  for (const auto& p : relative_part) {
    nlohmann::json e = {{"ghost_C", p.ghost_ideal}, {"curvature", p.curvature}, {"dim", p.cohomology.dim()}};
    if (with_representatives) {
      nlohmann::json reps = nlohmann::json::array();
      for (const auto& r : p.cohomology.representatives()) reps.push_back(r.to_string());
      e["representatives"] = reps;
    }
    rel.push_back(e);
  }
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& [key, n] : dims) grid.push_back({{"ghost", key.first}, {"curvature", key.second}, {"dim", n}});
  nlohmann::json j = {{"primitives", prim}, {"relative", rel}, {"assembled", grid}};
  if (with_representatives) {
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& a : assembled)
      reps.push_back({{"ghost", a.ghost}, {"curvature", a.curvature}, {"element", a.element.to_string()}});
    j["representatives"] = reps;
  }
  return j;
}

CrosscheckReport crosscheck(const TablePtr& table, const HSDecomposition& hs, const HSOptions& options) {
  const int max_ghost = static_cast<int>(table->algebra().dim());
  const int cap = options.curvature_cap();
  std::vector<std::pair<int, int>> keys;
  for (int g = 0; g <= max_ghost; ++g)
    for (int k = 0; k <= cap; ++k) keys.emplace_back(g, k);
  const Derivation d = gamma_s(table);
  auto entries = parallel_map(keys.size(), options.jobs, [&](std::size_t i) {
    const auto [g, k] = keys[i];
    const CohomologyBasis h = cohomology(d, direct_slice(g, k));
    CrosscheckEntry e;
    e.ghost = g;
    e.curvature = k;
    e.direct = h.dim();
    auto it = hs.dims.find({g, k});
    e.assembled = it == hs.dims.end() ? 0 : it->second;
    // the assembled classes must be independent in the direct cohomology
    EchelonBasis coords;
    std::size_t rank = 0;
    for (const auto& a : hs.assembled) {
      if (a.ghost != g || a.curvature != k) continue;
      const auto c = h.coordinates(a.element);
      QVec v;
      for (std::size_t j = 0; j < c.size(); ++j)
        if (c[j] != 0) v.emplace_back(static_cast<int>(j), c[j]);
      if (!v.empty() && coords.insert(v)) ++rank;
    }
    e.independent = rank == e.assembled;
    return e;
  });
  CrosscheckReport report;
  for (auto& e : entries) {
    if (e.direct != e.assembled || !e.independent) report.mismatches.push_back(e);
    report.entries.push_back(std::move(e));
  }
  return report;
}

CrosscheckReport crosscheck(const TablePtr& table, const HSOptions& options) {
  return crosscheck(table, hochschild_serre(table, options), options);
}

nlohmann::json CrosscheckReport::to_json() const {
  auto row = [](const CrosscheckEntry& e) {
    return nlohmann::json{{"ghost", e.ghost},
                          {"curvature", e.curvature},
                          {"direct", e.direct},
                          {"assembled", e.assembled},
                          {"independent", e.independent}};
  };
  nlohmann::json all = nlohmann::json::array(), bad = nlohmann::json::array();
  for (const auto& e : entries) all.push_back(row(e));
  for (const auto& e : mismatches) bad.push_back(row(e));
  return {{"ok", ok()}, {"entries", all}, {"mismatches", bad}};
}

}  // namespace brst
