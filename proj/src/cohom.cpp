#include "brst/cohom.hpp"

#include <algorithm>
#include <set>

#include "brst/errors.hpp"

namespace brst {

MonomialIndex::MonomialIndex(const std::vector<Element>& elements) {
  std::set<Monomial, std::greater<Monomial>> all;
  for (const auto& e : elements)
    for (const auto& [m, c] : e.terms()) all.insert(m);
  monomials_.assign(all.begin(), all.end());
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], static_cast<int>(i));
}

MonomialIndex::MonomialIndex(std::vector<Monomial> monomials) : monomials_(std::move(monomials)) {
  std::sort(monomials_.begin(), monomials_.end(), std::greater<Monomial>());
  monomials_.erase(std::unique(monomials_.begin(), monomials_.end()), monomials_.end());
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], static_cast<int>(i));
}

std::optional<int> MonomialIndex::find(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

QVec MonomialIndex::coordinates(const Element& x) const {
  QVec v;
  int fresh = static_cast<int>(monomials_.size());
  for (const auto& [m, c] : x.terms()) {
    auto i = find(m);
    v.emplace_back(i ? *i : fresh++, c);
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

Element MonomialIndex::element(const TablePtr& table, const QVec& v) const {
  Element out(table);
  for (const auto& [i, c] : v) out.add_term(monomials_.at(static_cast<std::size_t>(i)), c);
  return out;
}

SliceSpec shifted(const Derivation& d, const SliceSpec& spec, int steps) {
  SliceSpec out = spec;
  for (int g = 0; g < kGradingCount; ++g) {
    auto& b = out.bounds[g];
    if (!b) continue;
    const auto s = d.grading_shift(static_cast<Grading>(g));
    if (!s)
      throw ValidationError("derivation " + d.name() + " has no definite shift in grading " +
                            grading_name(static_cast<Grading>(g)));
    b->first += steps * *s;
    b->second += steps * *s;
  }
  return out;
}

SliceComplex matrix_of(const Derivation& d, const SliceSpec& domain, std::size_t cap) {
  SliceComplex sc;
  sc.derivation = d.name();
  sc.domain_spec = domain;
  sc.codomain_spec = shifted(d, domain, 1);
  sc.domain = basis_slice(*d.table(), domain, cap);
  sc.codomain = basis_slice(*d.table(), sc.codomain_spec, cap);
  const MonomialIndex rows(sc.codomain);
  sc.matrix.rows = sc.codomain.size();
  for (const auto& m : sc.domain) {
    const Element img = d.apply(m);
    QVec col;
    for (const auto& [mm, c] : img.terms()) {
      auto i = rows.find(mm);
      if (!i) throw ValidationError("image of a domain monomial under " + d.name() + " leaves the codomain slice");
      col.emplace_back(*i, c);
    }
    std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    sc.matrix.cols.push_back(std::move(col));
  }
  return sc;
}

Element combination(const std::vector<Element>& basis, const QVec& coefficients, const TablePtr& table) {
  Element out(table);
  for (const auto& [j, c] : coefficients) out += c * basis.at(static_cast<std::size_t>(j));
  return out;
}

std::vector<Element> monomial_elements(const TablePtr& table, const std::vector<Monomial>& monomials) {
  std::vector<Element> out;
  out.reserve(monomials.size());
  for (const auto& m : monomials) out.push_back(Element::from_monomial(table, m));
  return out;
}

std::vector<Element> slice_elements(const TablePtr& table, const SliceSpec& spec, std::size_t cap) {
  return monomial_elements(table, basis_slice(*table, spec, cap));
}

namespace {

bool is_monomial_basis(const std::vector<Element>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Element& e) { return e.size() == 1 && e.terms().begin()->second == 1; });
}

// Matrix of D on the given vectors, rows indexed by the monomials of the images.
std::pair<ColumnMatrix, MonomialIndex> image_matrix(const Derivation& d, const std::vector<Element>& vectors,
                                                    std::vector<Element>* images, const Element* extra = nullptr,
                                                    QVec* extra_coords = nullptr) {
  std::vector<Element> imgs;
  imgs.reserve(vectors.size());
  for (const auto& v : vectors) imgs.push_back(d.apply(v));
  std::vector<Element> all = imgs;
  if (extra) all.push_back(*extra);
  MonomialIndex index(all);
  ColumnMatrix m;
  m.rows = index.size();
  for (const auto& img : imgs) m.cols.push_back(index.coordinates(img));
  if (extra) *extra_coords = index.coordinates(*extra);
  if (images) *images = std::move(imgs);
  return {std::move(m), std::move(index)};
}

}  // namespace

CohomologyBasis cohomology(const Derivation& d, const std::vector<Element>& previous,
                           const std::vector<Element>& current) {
  const TablePtr& table = d.table();
  CohomologyBasis out;
  out.d_ = std::make_shared<const Derivation>(d);

  // Z = ker(D) on span(current)
  auto [next_matrix, next_index] = image_matrix(d, current, nullptr);
  std::vector<Element> cycles;
  for (const auto& k : kernel(next_matrix)) cycles.push_back(combination(current, k, table));
  out.kernel_dim_ = cycles.size();

  // B = D(previous), checked to lie in span(current) and to be closed
  std::vector<Element> boundaries;
  boundaries.reserve(previous.size());
  for (const auto& w : previous) {
    Element b = d.apply(w);
    if (!d.apply(b).is_zero())
      throw ValidationError("derivation " + d.name() + " is not nilpotent across the slices");
    if (!b.is_zero()) out.coboundaries_.emplace_back(b, w);
    boundaries.push_back(std::move(b));
  }
  out.index_ = std::make_shared<MonomialIndex>(current);
  if (!is_monomial_basis(current)) {
    EchelonBasis span;
    for (const auto& c : current) span.insert(out.index_->coordinates(c));
    for (const auto& b : boundaries)
      if (!b.is_zero() && !span.contains(out.index_->coordinates(b)))
        throw ValidationError("image of the previous space leaves the current space under " + d.name());
  } else {
    for (const auto& b : boundaries)
      for (const auto& [m, c] : b.terms())
        if (!out.index_->find(m))
          throw ValidationError("image of the previous slice leaves the current slice under " + d.name());
  }

  auto quotient = std::make_shared<EchelonBasis>();
  for (const auto& b : boundaries)
    if (!b.is_zero()) quotient->insert(out.index_->coordinates(b));
  out.image_rank_ = quotient->rank();
  for (const auto& z : cycles) {
    const int tag = static_cast<int>(out.representatives_.size());
    if (quotient->insert(out.index_->coordinates(z), tag)) out.representatives_.push_back(z);
  }
  out.quotient_ = std::move(quotient);
  return out;
}

CohomologyBasis cohomology(const Derivation& d, const SliceSpec& current, std::size_t cap) {
  const TablePtr& table = d.table();
  const auto prev = slice_elements(table, shifted(d, current, -1), cap);
  const auto cur = slice_elements(table, current, cap);
  CohomologyBasis h = cohomology(d, prev, cur);
  h.grading = current.to_json();
  return h;
}

std::vector<Rational> CohomologyBasis::coordinates(const Element& x) const {
  if (!d_->apply(x).is_zero()) throw ValidationError("element is not a cocycle of " + d_->name());
  const auto r = quotient_->reduce(index_->coordinates(x));
  if (!r.residual.empty()) throw ValidationError("cocycle lies outside the space of this cohomology slice");
  std::vector<Rational> coords(dim(), Rational(0));
  for (const auto& [tag, c] : r.combination) coords[static_cast<std::size_t>(tag)] = c;
  return coords;
}

bool CohomologyBasis::is_trivial(const Element& x) const {
  const auto c = coordinates(x);
  return std::all_of(c.begin(), c.end(), [](const Rational& q) { return q == 0; });
}

nlohmann::json CohomologyBasis::to_json() const {
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& r : representatives_) reps.push_back(r.to_string());
  nlohmann::json j = {{"dim", dim()}, {"representatives", reps}};
  if (!grading.is_null() && !grading.empty()) j["grading"] = grading;
  return j;
}

std::optional<Element> is_coboundary(const Derivation& d, const Element& x, const std::vector<Element>& source) {
  if (!d.apply(x).is_zero()) throw ValidationError("element is not a cocycle of " + d.name());
  if (x.is_zero()) return Element(d.table());
  QVec rhs;
  auto [m, index] = image_matrix(d, source, nullptr, &x, &rhs);
  auto sol = solve(m, rhs);
  if (!sol) return std::nullopt;
  Element w = combination(source, *sol, d.table());
  if (!(d.apply(w) == x)) throw Error("internal: coboundary witness failed verification");
  return w;
}

std::optional<Element> is_coboundary(const Derivation& d, const Element& x, const SliceSpec& source,
                                     std::size_t cap) {
  return is_coboundary(d, x, slice_elements(d.table(), source, cap));
}

std::vector<Element> invariant_subspace(const std::vector<Derivation>& ops, const std::vector<Element>& space) {
  if (ops.empty() || space.empty()) return space;
  const TablePtr& table = space.front().table();
  std::vector<std::vector<Element>> images(ops.size());
  std::vector<Element> all;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    images[k].reserve(space.size());
    for (const auto& v : space) images[k].push_back(ops[k].apply(v));
    all.insert(all.end(), images[k].begin(), images[k].end());
  }
  const MonomialIndex index(all);
  const int stride = static_cast<int>(index.size());
  ColumnMatrix m;
  m.rows = index.size() * ops.size();
  for (std::size_t j = 0; j < space.size(); ++j) {
    QVec col;
    for (std::size_t k = 0; k < ops.size(); ++k)
      for (const auto& [i, c] : index.coordinates(images[k][j])) col.emplace_back(static_cast<int>(k) * stride + i, c);
    m.cols.push_back(std::move(col));
  }
  std::vector<Element> out;
  for (const auto& kv : kernel(m)) out.push_back(combination(space, kv, table));
  return out;
}

std::vector<Element> invariant_subspace(const std::vector<Derivation>& ops, const TablePtr& table,
                                        const SliceSpec& spec, std::size_t cap) {
  return invariant_subspace(ops, slice_elements(table, spec, cap));
}

}  // namespace brst
