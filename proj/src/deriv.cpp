#include "brst/deriv.hpp"

#include "brst/errors.hpp"

namespace brst {

Derivation::Derivation(std::string name, TablePtr table, int form_shift, int ghost_shift)
    : name_(std::move(name)), table_(std::move(table)), form_shift_(form_shift), ghost_shift_(ghost_shift) {
  images_.assign(table_->size(), Element(table_));
}

void Derivation::set_image(int id, Element image) {
  if (image.table() && image.table() != table_) throw ContextError("derivation image from a different table");
  images_[static_cast<std::size_t>(id)] = image.table() ? std::move(image) : Element(table_);
}

void Derivation::add_to_image(int id, const Element& x) { images_[static_cast<std::size_t>(id)] += x; }

Element Derivation::apply(const Monomial& m) const {
  const auto& table = *table_;
  Element out(table_);
  const std::size_t n = m.size();
  int prefix_parity = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!m[i]) continue;
    const int id = static_cast<int>(i);
    const Element& img = images_[i];
    if (!img.is_zero()) {
      Monomial left(n, 0), right(n, 0);
      for (std::size_t k = 0; k < i; ++k) left[k] = m[k];
      left[i] = static_cast<std::uint8_t>(m[i] - 1);
      for (std::size_t k = i + 1; k < n; ++k) right[k] = m[k];
      Rational factor = table.odd(id) ? Rational(1) : Rational(m[i]);
      if (odd() && prefix_parity) factor = -factor;
      for (const auto& [im, ic] : img.terms()) {
        auto lp = multiply_monomials(table, left, im);
        if (!lp) continue;
        auto full = multiply_monomials(table, lp->second, right);
        if (!full) continue;
        const Rational c = factor * ic;
        out.add_term(full->second, (lp->first * full->first) < 0 ? Rational(-c) : c);
      }
    }
    if (table.odd(id)) prefix_parity ^= (m[i] & 1);
  }
  return out;
}

Element Derivation::apply(const Element& x) const {
  if (x.table() && x.table() != table_) throw ContextError("derivation applied to an element of a different table");
  Element out(table_);
  for (const auto& [m, c] : x.terms()) out += c * apply(m);
  return out;
}

std::optional<int> Derivation::grading_shift(Grading g) const {
  std::optional<int> shift;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const int base = table_->weight(g, static_cast<int>(i));
    for (const auto& [m, c] : images_[i].terms()) {
      const int s = degrees(*table_, m)[static_cast<int>(g)] - base;
      if (shift && *shift != s) return std::nullopt;
      shift = s;
    }
  }
  return shift.value_or(0);
}

Derivation Derivation::renamed(std::string name) const {
  Derivation d = *this;
  d.name_ = std::move(name);
  return d;
}

Derivation graded_commutator(const Derivation& d1, const Derivation& d2, std::string name) {
  if (d1.table() != d2.table()) throw ContextError("derivations from different tables");
  if (name.empty()) name = "[" + d1.name() + "," + d2.name() + "]";
  Derivation out(std::move(name), d1.table(), d1.form_shift() + d2.form_shift(), d1.ghost_shift() + d2.ghost_shift());
  const bool anti = d1.odd() && d2.odd();
  for (std::size_t i = 0; i < d1.table()->size(); ++i) {
    const int id = static_cast<int>(i);
    Element v = d1.apply(d2.image(id));
    Element w = d2.apply(d1.image(id));
    out.set_image(id, anti ? v + w : v - w);
  }
  return out;
}

Derivation scaled(const Rational& s, const Derivation& d, std::string name) {
  Derivation out(name.empty() ? d.name() : std::move(name), d.table(), d.form_shift(), d.ghost_shift());
  for (std::size_t i = 0; i < d.table()->size(); ++i) out.set_image(static_cast<int>(i), s * d.image(static_cast<int>(i)));
  return out;
}

Derivation sum(const Derivation& a, const Derivation& b, std::string name) {
  if (a.table() != b.table()) throw ContextError("derivations from different tables");
  if (a.form_shift() != b.form_shift() || a.ghost_shift() != b.ghost_shift())
    throw ValidationError("cannot add derivations with different degree shifts");
  Derivation out(name.empty() ? a.name() + "+" + b.name() : std::move(name), a.table(), a.form_shift(), a.ghost_shift());
  for (std::size_t i = 0; i < a.table()->size(); ++i) {
    const int id = static_cast<int>(i);
    out.set_image(id, a.image(id) + b.image(id));
  }
  return out;
}

bool derivations_equal(const Derivation& a, const Derivation& b) {
  if (a.table() != b.table()) return false;
  const bool same_shift = a.form_shift() == b.form_shift() && a.ghost_shift() == b.ghost_shift();
  for (std::size_t i = 0; i < a.table()->size(); ++i) {
    // the zero map has every degree
    if (!same_shift && !(a.image(static_cast<int>(i)).is_zero() && b.image(static_cast<int>(i)).is_zero())) return false;
    if (!(a.image(static_cast<int>(i)) == b.image(static_cast<int>(i)))) return false;
  }
  return true;
}

NilpotencyResult nilpotency_check(const Derivation& d) {
  if (!d.odd()) throw ValidationError("nilpotency check needs an odd derivation, got " + d.name());
  NilpotencyResult r;
  for (std::size_t i = 0; i < d.table()->size(); ++i) {
    const int id = static_cast<int>(i);
    Element sq = d.apply(d.image(id));
    if (!sq.is_zero()) {
      r.nilpotent = false;
      r.witness = id;
      r.value = std::move(sq);
      return r;
    }
  }
  return r;
}

// ---- operator library ------------------------------------------------------

namespace {

using K = GeneratorKind;

Element gen(const TablePtr& t, K kind, int a) { return Element::generator(t, t->id(kind, a)); }

// [X, Y]^a = f^a_{bc} X^b Y^c for every a.
std::vector<Element> bracket(const TablePtr& t, K x, K y) {
  const auto& alg = t->algebra();
  const int n = static_cast<int>(alg.dim());
  std::vector<Element> out(n, Element(t));
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      bool any = false;
      for (int a = 0; a < n && !any; ++a) any = alg.f(b, c, a) != 0;
      if (!any) continue;
      const Element xy = gen(t, x, b) * gen(t, y, c);
      for (int a = 0; a < n; ++a)
        if (alg.f(b, c, a) != 0) out[a] += alg.f(b, c, a) * xy;
    }
  return out;
}

void require_full(const TablePtr& t, const std::string& what) {
  if (t->scheme() != Scheme::small_full)
    throw ValidationError(what + " needs the small_full scheme (have " + scheme_name(t->scheme()) + ")");
}

void require_curvatures(const TablePtr& t, const std::string& what) {
  if (!t->has_kind(K::curvature))
    throw ValidationError(what + " needs curvature generators (scheme " + std::string(scheme_name(t->scheme())) + ")");
}

int dim(const TablePtr& t) { return static_cast<int>(t->algebra().dim()); }

bool ideal_abelian(const TablePtr& t) {
  const auto& alg = t->algebra();
  const int n = dim(t);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!t->in_ideal(a) || !t->in_ideal(b)) continue;
      for (int c = 0; c < n; ++c)
        if (alg.f(a, b, c) != 0) return false;
    }
  return true;
}

int parse_index(const std::string& name, const std::string& prefix, const TablePtr& t) {
  const std::string rest = name.substr(prefix.size());
  if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("operator '" + name + "' needs a numeric index");
  const int a = std::stoi(rest);
  if (a < 0 || a >= dim(t)) throw ParseError("operator index out of range in '" + name + "'");
  return a;
}

}  // namespace

Derivation gamma_operator(const TablePtr& t) {
  Derivation g("gamma", t, 0, 1);
  const int n = dim(t);
  const auto cc = bracket(t, K::ghost, K::ghost);
  for (int a = 0; a < n; ++a) g.set_image(t->id(K::ghost, a), Rational(-1, 2) * cc[a]);
  if (t->has_kind(K::curvature)) {
    const auto fc = bracket(t, K::curvature, K::ghost);
    for (int a = 0; a < n; ++a) g.set_image(t->id(K::curvature, a), fc[a]);
  }
  if (t->has_kind(K::connection))
    for (int a = 0; a < n; ++a) g.set_image(t->id(K::connection, a), -gen(t, K::covariant_ghost_derivative, a));
  return g;
}

Derivation d_operator(const TablePtr& t) {
  require_full(t, "d");
  Derivation d("d", t, 1, 0);
  const int n = dim(t);
  const auto aa = bracket(t, K::connection, K::connection);
  const auto af = bracket(t, K::connection, K::curvature);
  const auto ac = bracket(t, K::connection, K::ghost);
  const auto fc = bracket(t, K::curvature, K::ghost);
  const auto adc = bracket(t, K::connection, K::covariant_ghost_derivative);
  for (int a = 0; a < n; ++a) {
    d.set_image(t->id(K::connection, a), gen(t, K::curvature, a) - Rational(1, 2) * aa[a]);
    d.set_image(t->id(K::curvature, a), -af[a]);
    d.set_image(t->id(K::ghost, a), gen(t, K::covariant_ghost_derivative, a) - ac[a]);
    d.set_image(t->id(K::covariant_ghost_derivative, a), fc[a] - adc[a]);
  }
  return d;
}

Derivation lambda_operator(const TablePtr& t) {
  require_full(t, "lambda");
  Derivation l("lambda", t, 1, -1);
  const int n = dim(t);
  const auto aa = bracket(t, K::connection, K::connection);
  for (int a = 0; a < n; ++a) {
    l.set_image(t->id(K::ghost, a), gen(t, K::connection, a));
    l.set_image(t->id(K::covariant_ghost_derivative, a), Rational(1, 2) * aa[a] - gen(t, K::curvature, a));
  }
  return l;
}

Derivation tau_operator(const TablePtr& t) {
  require_curvatures(t, "tau");
  Derivation tau("tau", t, 2, -1);
  for (int a = 0; a < dim(t); ++a) tau.set_image(t->id(K::ghost, a), gen(t, K::curvature, a));
  return tau;
}

Derivation sigma_operator(const TablePtr& t) {
  require_curvatures(t, "sigma");
  if (!ideal_abelian(t)) throw ValidationError("sigma needs an abelian ideal; the declared ideal is not abelian");
  Derivation s("sigma", t, -2, 1);
  for (int a = 0; a < dim(t); ++a)
    if (t->in_ideal(a)) s.set_image(t->id(K::curvature, a), gen(t, K::ghost, a));
  return s;
}

Derivation gamma_s(const TablePtr& t) {
  Derivation g = gamma_operator(t).renamed("gammaS");
  for (const auto& x : t->generators())
    if (x.kind == K::connection || x.kind == K::covariant_ghost_derivative) g.set_image(x.id, Element(t));
  return g;
}

Derivation gamma_s_part(const TablePtr& t, int ideal_ghost_change) {
  const Derivation full = gamma_s(t);
  Derivation part("gammaS" + std::to_string(ideal_ghost_change), t, 0, 1);
  const auto gi = static_cast<int>(Grading::ghost_ideal);
  for (const auto& x : t->generators()) {
    Element img(t);
    for (const auto& [m, c] : full.image(x.id).terms())
      if (degrees(*t, m)[gi] - t->weight(Grading::ghost_ideal, x.id) == ideal_ghost_change) img.add_term(m, c);
    part.set_image(x.id, std::move(img));
  }
  return part;
}

Derivation counting_operator(const TablePtr& t, const std::string& which) {
  Derivation n(which, t, 0, 0);
  for (const auto& x : t->generators()) {
    bool counted = false;
    if (which == "N_CF")
      counted = x.ideal && (x.kind == K::ghost || x.kind == K::curvature);
    else if (which == "N_C")
      counted = x.ideal && x.kind == K::ghost;
    else if (which == "N_eta")
      counted = !x.ideal && x.kind == K::ghost;
    else
      throw ParseError("unknown counting operator '" + which + "'");
    if (counted) n.set_image(x.id, Element::generator(t, x.id));
  }
  return n;
}

Derivation rho_t(const TablePtr& t, int a) {
  const auto& alg = t->algebra();
  const int n = dim(t);
  Derivation r("rhoT:" + std::to_string(a), t, 0, 0);
  for (int c = 0; c < n; ++c) {
    if (t->has_kind(K::curvature)) {
      Element img(t);
      for (int b = 0; b < n; ++b)
        if (alg.f(a, b, c) != 0) img -= alg.f(a, b, c) * gen(t, K::curvature, b);
      r.set_image(t->id(K::curvature, c), std::move(img));
    }
    if (t->in_ideal(c)) {
      Element img(t);
      for (int b = 0; b < n; ++b)
        if (t->in_ideal(b) && alg.f(a, b, c) != 0) img -= alg.f(a, b, c) * gen(t, K::ghost, b);
      r.set_image(t->id(K::ghost, c), std::move(img));
    }
  }
  return r;
}

Derivation ghost_partial(const TablePtr& t, int a) {
  Derivation p("dC:" + std::to_string(a), t, 0, -1);
  p.set_image(t->id(K::ghost, a), Element::one(t));
  return p;
}

Derivation build_operator(const std::string& name, const TablePtr& t) {
  if (name == "gamma") return gamma_operator(t);
  if (name == "d") return d_operator(t);
  if (name == "lambda") return lambda_operator(t);
  if (name == "tau") return tau_operator(t);
  if (name == "sigma") return sigma_operator(t);
  if (name == "gammaS" || name == "gammaR") return gamma_s(t).renamed(name);
  if (name == "gammaS0") return gamma_s_part(t, 0);
  if (name == "gammaS1" || name == "gammaR1") return gamma_s_part(t, 1).renamed(name);
  if (name == "N_CF" || name == "N_C" || name == "N_eta") return counting_operator(t, name);
  if (name.rfind("rhoT:", 0) == 0) return rho_t(t, parse_index(name, "rhoT:", t));
  if (name.rfind("dC:", 0) == 0) return ghost_partial(t, parse_index(name, "dC:", t));
  if (name == "zero") return Derivation("zero", t, 0, 1);
  throw ParseError("unknown operator '" + name + "'");
}

std::vector<std::string> operator_names() {
  return {"gamma", "d",      "lambda", "tau",  "sigma",      "gammaS",   "gammaS0", "gammaS1",
          "gammaR", "gammaR1", "N_CF", "N_C", "N_eta", "rhoT:<a>", "dC:<a>",  "zero"};
}

}  // namespace brst
