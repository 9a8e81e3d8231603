#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "brst/deriv.hpp"
#include "brst/linalg.hpp"

namespace brst {

/// Monomial -> coordinate map in canonical (descending) monomial order.
class MonomialIndex {
public:
  MonomialIndex() = default;
  explicit MonomialIndex(const std::vector<Element>& elements);
  explicit MonomialIndex(std::vector<Monomial> monomials);

  std::size_t size() const noexcept { return monomials_.size(); }
  const std::vector<Monomial>& monomials() const noexcept { return monomials_; }
  std::optional<int> find(const Monomial& m) const;

  /// Coordinates of x; monomials outside the index get fresh indices past
  /// size(), so they never match a stored vector.
  QVec coordinates(const Element& x) const;
  Element element(const TablePtr& table, const QVec& v) const;

private:
  std::vector<Monomial> monomials_;
  std::map<Monomial, int, std::greater<Monomial>> index_;
};

struct SliceComplex {
  std::string derivation;
  SliceSpec domain_spec;
  SliceSpec codomain_spec;
  std::vector<Monomial> domain;
  std::vector<Monomial> codomain;
  ColumnMatrix matrix;  // rows: codomain order, columns: domain order
};

/// Shifts every constrained grading by `steps` times the derivation's shift.
/// Throws ValidationError when a constrained grading has no definite shift.
SliceSpec shifted(const Derivation& d, const SliceSpec& spec, int steps);

/// Matrix of D from the domain slice to the shifted slice. Throws
/// ValidationError when an image leaves the codomain slice.
SliceComplex matrix_of(const Derivation& d, const SliceSpec& domain, std::size_t cap = kDefaultSliceCap);

Element combination(const std::vector<Element>& basis, const QVec& coefficients, const TablePtr& table);

class CohomologyBasis {
public:
  std::size_t dim() const noexcept { return representatives_.size(); }
  const std::vector<Element>& representatives() const noexcept { return representatives_; }
  /// (D w, w) for every vector w of the previous space with D w != 0.
  const std::vector<std::pair<Element, Element>>& coboundaries() const noexcept { return coboundaries_; }
  std::size_t kernel_dim() const noexcept { return kernel_dim_; }
  std::size_t image_rank() const noexcept { return image_rank_; }

  /// Coordinates of the class of a cocycle x in the representative basis.
  /// Throws ValidationError when x is not a cocycle of the complex.
  std::vector<Rational> coordinates(const Element& x) const;
  bool is_trivial(const Element& x) const;

  nlohmann::json grading;  // slice description, may be empty
  nlohmann::json to_json() const;

private:
  friend CohomologyBasis cohomology(const Derivation&, const std::vector<Element>&, const std::vector<Element>&);

  std::shared_ptr<const Derivation> d_;
  std::vector<Element> representatives_;
  std::vector<std::pair<Element, Element>> coboundaries_;
  std::size_t kernel_dim_ = 0;
  std::size_t image_rank_ = 0;
  std::shared_ptr<MonomialIndex> index_;
  std::shared_ptr<EchelonBasis> quotient_;  // image untagged, representatives tagged 0..dim-1
};

/// Cohomology of D at span(current), with span(previous) mapped into it.
/// Both lists must be linearly independent. Checks D(D(previous)) = 0 and
/// D(previous) in span(current).
CohomologyBasis cohomology(const Derivation& d, const std::vector<Element>& previous,
                           const std::vector<Element>& current);

/// Cohomology at a monomial slice; the previous slice is derived from the
/// derivation's grading shifts.
CohomologyBasis cohomology(const Derivation& d, const SliceSpec& current, std::size_t cap = kDefaultSliceCap);

std::vector<Element> monomial_elements(const TablePtr& table, const std::vector<Monomial>& monomials);
std::vector<Element> slice_elements(const TablePtr& table, const SliceSpec& spec, std::size_t cap = kDefaultSliceCap);

/// w with D w = x and w in span(source), or nullopt. Throws ValidationError
/// when D x != 0.
std::optional<Element> is_coboundary(const Derivation& d, const Element& x, const std::vector<Element>& source);
std::optional<Element> is_coboundary(const Derivation& d, const Element& x, const SliceSpec& source,
                                     std::size_t cap = kDefaultSliceCap);

/// Basis of the joint kernel of all ops on span(space).
std::vector<Element> invariant_subspace(const std::vector<Derivation>& ops, const std::vector<Element>& space);
std::vector<Element> invariant_subspace(const std::vector<Derivation>& ops, const TablePtr& table,
                                        const SliceSpec& spec, std::size_t cap = kDefaultSliceCap);

}  // namespace brst
