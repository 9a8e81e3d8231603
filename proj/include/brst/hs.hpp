#pragma once

#include <map>
#include <vector>

#include "brst/cohom.hpp"

namespace brst {

struct PrimitiveSet {
  std::vector<Element> primitives;
  std::vector<int> primitive_degrees;
  /// Products of distinct primitives, 1 first, ordered by degree.
  std::vector<Element> monomial_basis;
  std::vector<int> basis_degrees;
  std::vector<std::vector<int>> basis_factors;  // primitive indices of each product
  std::vector<std::size_t> dims;  // dim H^q for q = 0..max_ghost
};

/// Ghost cohomology of a semisimple algebra and its indecomposable classes.
/// Throws ValidationError when the Killing form is degenerate.
PrimitiveSet primitives(const LieAlgebra& semisimple, int max_ghost);

/// Same computation on the pure K-ghost part of a table (gh_C = 0, no
/// connections, curvatures or covariant ghost derivatives).
PrimitiveSet primitives_in(const TablePtr& table, int max_ghost);

enum class ModuleKind { trivial, symmetric };
ModuleKind parse_module(std::string_view name);

struct HSOptions {
  ModuleKind module = ModuleKind::symmetric;
  int max_curvature = 4;  // truncation of S(G*); ignored for the trivial module
  int jobs = 1;

  int curvature_cap() const { return module == ModuleKind::trivial ? 0 : max_curvature; }
};

/// H(gammaS1, (V (x) Lambda(C))^K) at fixed gh_C and curvature degree.
struct RelativePiece {
  int ghost_ideal = 0;
  int curvature = 0;
  std::size_t invariant_dim = 0;
  CohomologyBasis cohomology;
};

/// Slice of the K-ghost-free complex at fixed gh_C and curvature degree.
SliceSpec relative_slice(int ghost_ideal, int curvature);

/// Slice of the full gammaS complex at fixed total ghost and curvature degree.
SliceSpec direct_slice(int ghost, int curvature);

std::vector<Derivation> subalgebra_action(const TablePtr& table);

std::vector<RelativePiece> relative_cohomology(const TablePtr& table, const HSOptions& options);

struct AssembledClass {
  Element element;  // v * Theta
  Element v;
  Element theta;
  std::vector<int> theta_factors;  // primitive indices making up theta
  int ghost = 0;
  int ghost_ideal = 0;
  int curvature = 0;
};

struct HSDecomposition {
  PrimitiveSet primitive_part;
  std::vector<RelativePiece> relative_part;
  std::vector<AssembledClass> assembled;
  std::map<std::pair<int, int>, std::size_t> dims;  // (ghost, curvature) -> count

  /// Assembled dims summed over curvature degree, ghost 0..max_ghost.
  std::vector<std::size_t> ghost_dims(int max_ghost) const;
  nlohmann::json to_json(bool with_representatives) const;
};

HSDecomposition assemble(const PrimitiveSet& primitive_part, const std::vector<RelativePiece>& relative_part);

/// primitives_in + relative_cohomology + assemble. The table needs a split.
HSDecomposition hochschild_serre(const TablePtr& table, const HSOptions& options);

struct CrosscheckEntry {
  int ghost = 0;
  int curvature = 0;
  std::size_t direct = 0;
  std::size_t assembled = 0;
  bool independent = true;  // assembled classes independent in the direct cohomology
};

struct CrosscheckReport {
  std::vector<CrosscheckEntry> entries;
  std::vector<CrosscheckEntry> mismatches;
  bool ok() const noexcept { return mismatches.empty(); }
  nlohmann::json to_json() const;
};

/// Direct gammaS cohomology per (ghost, curvature) against the assembly.
CrosscheckReport crosscheck(const TablePtr& table, const HSOptions& options);
CrosscheckReport crosscheck(const TablePtr& table, const HSDecomposition& hs, const HSOptions& options);

}  // namespace brst
