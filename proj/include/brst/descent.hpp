#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "brst/hs.hpp"

namespace brst {

/// lambda b, after checking gamma b = 0 and d b + gamma(lambda b) = 0.
/// The table must use the small_full scheme.
Element lift_once(const TablePtr& table, const Element& b);

/// d(lambda b) + gamma(1/2 lambda^2 b) - tau b; zero for every b.
Element second_lift_defect(const TablePtr& table, const Element& b);

struct Obstruction {
  Element tau_b;
  std::vector<Rational> coordinates;  // class of tau b in the direct gammaS cohomology
  std::vector<Element> basis;         // representatives the coordinates refer to
  bool trivial = true;
};

/// tau b and its class. b must be a gamma-cocycle free of connections and
/// covariant ghost derivatives.
Obstruction obstruction(const TablePtr& table, const Element& b);

struct SigmaTauSplit {
  Element v0;          // N_CF = 0 part
  Element sigma_part;  // sum_k sigma t_k
  Element tau_part;    // sum_k tau s_k
  Element t;           // sum_k t_k, t_k = tau v_k / k
  Element s;           // sum_k s_k, s_k = sigma v_k / k
};

/// Splits v by N_CF eigenvalue. Throws ValidationError for a non-abelian
/// ideal or when v is not invariant under the subalgebra.
SigmaTauSplit split_sigma_tau(const TablePtr& table, const Element& v);

struct DescentChain {
  Element bottom;
  std::vector<Element> rungs;  // rungs[0] = bottom, gamma rungs[r] + d rungs[r-1] = 0
  Element top_d;               // d of the last rung
  std::optional<Element> obstruction;  // -d rungs.back() when it is not gamma-exact before ghost 0
};

/// Descent chain of a primitive built from subalgebra variables only.
DescentChain transgress(const TablePtr& table, const Element& theta);

enum class DescentList { e2, f1, d1f1 };
enum class E2Kind { none, trivial, f3, d3f3 };
const char* list_name(DescentList l);
const char* e2_kind_name(E2Kind k);

struct DescentClass {
  DescentList list = DescentList::e2;
  E2Kind e2_kind = E2Kind::none;
  int ghost = 0;
  int curvature = 0;
  Element representative;  // v0 Theta, (sigma t) Theta or (tau s) Theta
  Element basis_element;   // v Theta it was extracted from
  Element v;
  Element theta;
  std::vector<int> theta_factors;
  Element witness;         // t for F1, s for d1F1, v0 for E2
  std::optional<Element> d1_image;  // tau of an F1 representative
  std::optional<Element> d3_image;  // v0 * P for E2 classes with theta != 1
};

struct ClassificationOptions {
  int max_curvature = 2;
  int jobs = 1;
};

struct DescentClassification {
  std::vector<DescentClass> classes;  // curvature <= max_curvature
  std::map<std::pair<int, int>, std::size_t> dims;  // dim H per (ghost, curvature)
  bool complete = true;                // |E2| + |F1| + |d1F1| = dim H everywhere
  bool d1_consistent = true;           // every F1 tau-image lies in the d1F1 span
  std::vector<DescentChain> primitive_chains;
  HSDecomposition hs;
  int max_curvature = 2;

  std::vector<const DescentClass*> members(DescentList l) const;
  nlohmann::json to_json() const;
};

/// Needs an abelian ideal and a small_full table.
DescentClassification classify(const TablePtr& table, const ClassificationOptions& options);

/// (lambda sigma t) Theta + (sigma t) Theta-hat for an F1 class, checked to
/// satisfy gamma(result) + d(representative) = 0.
Element lambda_sharp(const TablePtr& table, const DescentClass& f1_class,
                     const std::vector<DescentChain>& primitive_chains);

struct DescentTable {
  int max_ghost = 0;
  int max_depth = 3;
  /// cells[ghost][depth] = element strings
  std::vector<std::vector<std::vector<std::string>>> cells;
  bool partial = false;  // some towers over products of primitives were not expanded

  nlohmann::json to_json() const;
  std::string to_text() const;
};

DescentTable build_table(const TablePtr& table, const DescentClassification& c);

}  // namespace brst
