#include "brst/descent.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "brst/errors.hpp"
#include "brst/parallel.hpp"

namespace brst {

namespace {

void require_full(const TablePtr& table, const char* what) {
  if (table->scheme() != Scheme::small_full)
    throw ValidationError(std::string(what) + " needs the small_full scheme");
}

bool free_of_connections(const Element& x) {
  const auto& t = *x.table();
  for (const auto& [m, c] : x.terms()) {
    const auto d = degrees(t, m);
    if (d[static_cast<int>(Grading::connections)] || d[static_cast<int>(Grading::covariant_ghosts)]) return false;
  }
  return true;
}

int n_cf(const GeneratorTable& t, const Monomial& m) {
  int n = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    const auto& g = t[static_cast<int>(i)];
    if (g.ideal && (g.kind == GeneratorKind::ghost || g.kind == GeneratorKind::curvature)) n += m[i];
  }
  return n;
}

// H(gammaS) at one bidegree with coordinates in the Hochschild-Serre basis.
class ClassSpace {
public:
  ClassSpace(const TablePtr& table, const Derivation& gs, int ghost, int curvature,
             const std::vector<const AssembledClass*>& basis)
      : gs_(&gs), index_(basis_slice(*table, direct_slice(ghost, curvature))), size_(basis.size()) {
    for (const auto& w : slice_elements(table, direct_slice(ghost - 1, curvature))) {
      const Element b = gs.apply(w);
      if (!b.is_zero()) echelon_.insert(index_.coordinates(b));
    }
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!echelon_.insert(index_.coordinates(basis[i]->element), static_cast<int>(i)))
        throw Error("internal: Hochschild-Serre classes are dependent at ghost " + std::to_string(ghost) +
                    ", curvature " + std::to_string(curvature));
  }

  std::size_t size() const { return size_; }

  QVec coordinates(const Element& x) const {
    if (x.is_zero()) return {};
    if (!gs_->apply(x).is_zero()) throw Error("internal: class coordinates requested for a non-cocycle");
    const auto r = echelon_.reduce(index_.coordinates(x));
    if (!r.residual.empty()) throw Error("internal: cocycle outside the span of the Hochschild-Serre basis");
    return r.combination;
  }

private:
  const Derivation* gs_;
  MonomialIndex index_;
  EchelonBasis echelon_;
  std::size_t size_;
};

using Key = std::pair<int, int>;

Element product_without(const TablePtr& table, const std::vector<Element>& factors, std::size_t skip,
                        const Element* replacement) {
  Element out = Element::one(table);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i == skip) {
      if (replacement) out = out * *replacement;
      continue;
    }
    out = out * factors[i];
  }
  return out;
}

}  // namespace

// ---- lifts and obstructions -----------------------------------------------

Element lift_once(const TablePtr& table, const Element& b) {
  require_full(table, "lift_once");
  const Derivation g = gamma_operator(table);
  if (!g.apply(b).is_zero()) throw ValidationError("lift_once: input is not a gamma-cocycle");
  const Element w = lambda_operator(table).apply(b);
  if (!(d_operator(table).apply(b) + g.apply(w)).is_zero()) throw Error("internal: d b + gamma(lambda b) != 0");
  return w;
}

Element second_lift_defect(const TablePtr& table, const Element& b) {
  require_full(table, "second_lift_defect");
  const Derivation l = lambda_operator(table);
  const Element lb = l.apply(b);
  return d_operator(table).apply(lb) + gamma_operator(table).apply(Rational(1, 2) * l.apply(lb)) -
         tau_operator(table).apply(b);
}

Obstruction obstruction(const TablePtr& table, const Element& b) {
  if (!free_of_connections(b))
    throw ValidationError("obstruction: element must be free of connections and covariant ghost derivatives");
  const Derivation gs = gamma_s(table);
  if (!gs.apply(b).is_zero()) throw ValidationError("obstruction: input is not a gamma-cocycle");
  Obstruction out;
  out.tau_b = tau_operator(table).apply(b);
  if (out.tau_b.is_zero()) return out;
  const auto deg = element_degrees(out.tau_b);
  if (!deg) throw ValidationError("obstruction: input is not homogeneous");
  const CohomologyBasis h = cohomology(gs, direct_slice((*deg)[static_cast<int>(Grading::ghost)],
                                                        (*deg)[static_cast<int>(Grading::curvatures)]));
  out.coordinates = h.coordinates(out.tau_b);
  out.basis = h.representatives();
  out.trivial = std::all_of(out.coordinates.begin(), out.coordinates.end(), [](const Rational& q) { return q == 0; });
  return out;
}

SigmaTauSplit split_sigma_tau(const TablePtr& table, const Element& v) {
  const Derivation sigma = sigma_operator(table);
  const Derivation tau = tau_operator(table);
  for (const auto& op : subalgebra_action(table))
    if (!op.apply(v).is_zero()) throw ValidationError("split_sigma_tau: input is not invariant under the subalgebra");
  std::map<int, Element> parts;
  for (const auto& [m, c] : v.terms()) {
    auto [it, inserted] = parts.try_emplace(n_cf(*table, m), Element(table));
    it->second.add_term(m, c);
  }
  SigmaTauSplit out{Element(table), Element(table), Element(table), Element(table), Element(table)};
  for (const auto& [k, vk] : parts) {
    if (k == 0) {
      out.v0 = vk;
      continue;
    }
    const Element tk = Rational(1, k) * tau.apply(vk);
    const Element sk = Rational(1, k) * sigma.apply(vk);
    out.t += tk;
    out.s += sk;
    out.sigma_part += sigma.apply(tk);
    out.tau_part += tau.apply(sk);
  }
  if (!(out.v0 + out.sigma_part + out.tau_part == v)) throw Error("internal: sigma/tau reconstruction failed");
  return out;
}

// ---- transgression ---------------------------------------------------------

DescentChain transgress(const TablePtr& table, const Element& theta) {
  require_full(table, "transgress");
  DescentChain chain;
  chain.bottom = theta;
  chain.rungs.push_back(theta);
  const Derivation g = gamma_operator(table);
  const Derivation d = d_operator(table);
  if (!g.apply(theta).is_zero()) throw ValidationError("transgress: input is not a gamma-cocycle");
  const auto deg = element_degrees(theta);
  if (!deg) {
    chain.top_d = theta.is_zero() ? Element(table) : d.apply(theta);
    if (!theta.is_zero()) throw ValidationError("transgress: input is not homogeneous");
    return chain;
  }
  const int form = (*deg)[static_cast<int>(Grading::form)];
  const int ghost = (*deg)[static_cast<int>(Grading::ghost)];
  const bool sub_only = (*deg)[static_cast<int>(Grading::ideal_factors)] == 0;
  for (int r = 1; r <= ghost; ++r) {
    const Element rhs = -d.apply(chain.rungs.back());
    SliceSpec s;
    s.set(Grading::form, form + r).set(Grading::ghost, ghost - r);
    if (sub_only) s.set(Grading::ideal_factors, 0);
    SliceSpec plain = s;
    plain.set(Grading::covariant_ghosts, 0);
    auto w = is_coboundary(g, rhs, plain);
    if (!w) w = is_coboundary(g, rhs, s);
    if (!w) {
      chain.obstruction = rhs;
      break;
    }
    chain.rungs.push_back(std::move(*w));
  }
  chain.top_d = d.apply(chain.rungs.back());
  return chain;
}

// ---- classification --------------------------------------------------------

const char* list_name(DescentList l) {
  switch (l) {
    case DescentList::e2: return "E2";
    case DescentList::f1: return "F1";
    case DescentList::d1f1: return "d1F1";
  }
  return "?";
}

const char* e2_kind_name(E2Kind k) {
  switch (k) {
    case E2Kind::none: return "";
    case E2Kind::trivial: return "trivial";
    case E2Kind::f3: return "F3";
    case E2Kind::d3f3: return "d3F3";
  }
  return "?";
}

std::vector<const DescentClass*> DescentClassification::members(DescentList l) const {
  std::vector<const DescentClass*> out;
  for (const auto& c : classes)
    if (c.list == l) out.push_back(&c);
  return out;
}

DescentClassification classify(const TablePtr& table, const ClassificationOptions& options) {
  require_full(table, "classify");
  if (!table->split()) throw ValidationError("classify needs a semidirect split");
  const Derivation sigma = sigma_operator(table);  // rejects a non-abelian ideal
  const Derivation tau = tau_operator(table);
  const Derivation gs = gamma_s(table);
  const int cap = options.max_curvature;
  const int inner_cap = cap + 2;

  DescentClassification out;
  out.max_curvature = cap;
  HSOptions hso;
  hso.module = ModuleKind::symmetric;
  hso.max_curvature = inner_cap;
  hso.jobs = options.jobs;
  out.hs = hochschild_serre(table, hso);
  for (const auto& p : out.hs.primitive_part.primitives) out.primitive_chains.push_back(transgress(table, p));

  // class spaces per bidegree
  std::map<Key, std::vector<const AssembledClass*>> by_key;
  for (const auto& a : out.hs.assembled) by_key[{a.ghost, a.curvature}].push_back(&a);
  std::vector<Key> keys;
  for (const auto& [k, v] : by_key) keys.push_back(k);
  auto space_list = parallel_map(keys.size(), options.jobs, [&](std::size_t i) {
    return std::make_shared<ClassSpace>(table, gs, keys[i].first, keys[i].second, by_key.at(keys[i]));
  });
  std::map<Key, std::shared_ptr<ClassSpace>> spaces;
  for (std::size_t i = 0; i < keys.size(); ++i) spaces.emplace(keys[i], space_list[i]);
  for (const auto& [k, v] : by_key) out.dims[k] = v.size();

  // candidates and greedy selection per bidegree, all curvatures up to inner_cap
  std::vector<DescentClass> all;
  std::map<Key, std::vector<QVec>> d1_coords;  // coordinates of d1F1 classes per bidegree
  for (const auto& key : keys) {
    const auto& basis = by_key.at(key);
    const ClassSpace& space = *spaces.at(key);
    std::vector<DescentClass> cand[3];
    for (const AssembledClass* a : basis) {
      const SigmaTauSplit st = split_sigma_tau(table, a->v);
      auto make = [&](DescentList l, const Element& part, const Element& witness) {
        DescentClass c;
        c.list = l;
        c.ghost = a->ghost;
        c.curvature = a->curvature;
        c.representative = part * a->theta;
        c.basis_element = a->element;
        c.v = a->v;
        c.theta = a->theta;
        c.theta_factors = a->theta_factors;
        c.witness = witness;
        return c;
      };
      cand[0].push_back(make(DescentList::e2, st.v0, st.v0));
      cand[1].push_back(make(DescentList::d1f1, st.tau_part, st.s));
      cand[2].push_back(make(DescentList::f1, st.sigma_part, st.t));
    }
    EchelonBasis chosen;
    std::size_t count = 0;
    for (auto& group : cand)
      for (auto& c : group) {
        if (c.representative.is_zero()) continue;
        const QVec coords = space.coordinates(c.representative);
        if (coords.empty() || !chosen.insert(coords)) continue;
        ++count;
        if (c.list == DescentList::d1f1) d1_coords[key].push_back(coords);
        all.push_back(std::move(c));
      }
    if (count != space.size() && key.second <= cap) out.complete = false;
  }

  auto modulo_d1 = [&](const Key& key, const std::vector<QVec>& extra) {
    EchelonBasis e;
    for (const auto& v : d1_coords[key]) e.insert(v);
    for (const auto& v : extra) e.insert(v);
    return e;
  };

  // d1: tau-images of F1 classes must be nonzero and inside the d1F1 span
  for (auto& c : all) {
    if (c.list != DescentList::f1 || c.curvature > cap) continue;
    const Element img = tau.apply(c.representative);
    c.d1_image = img;
    const Key target{c.ghost - 1, c.curvature + 1};
    auto sp = spaces.find(target);
    if (img.is_zero() || sp == spaces.end()) {
      out.d1_consistent = false;
      continue;
    }
    const QVec coords = sp->second->coordinates(img);
    if (coords.empty() || !modulo_d1(target, {}).contains(coords)) out.d1_consistent = false;
  }

  // E2 refinement through the transgression of the primitives
  const auto& prims = out.hs.primitive_part.primitives;
  std::map<Key, std::vector<QVec>> d3_images;
  for (auto& c : all) {
    if (c.list != DescentList::e2) continue;
    if (c.theta_factors.empty() || c.curvature > cap) continue;
    std::vector<Element> factors;
    for (int i : c.theta_factors) factors.push_back(prims[static_cast<std::size_t>(i)]);
    Element image(table);
    for (std::size_t j = 0; j < factors.size(); ++j) {
      const Element& p = out.primitive_chains[static_cast<std::size_t>(c.theta_factors[j])].top_d;
      Element term = c.witness * p * product_without(table, factors, j, nullptr);
      image += (j % 2 == 0) ? term : -term;
    }
    c.d3_image = image;
    const auto deg = element_degrees(image);
    if (!deg) {
      c.e2_kind = E2Kind::trivial;
      continue;
    }
    const Key target{(*deg)[static_cast<int>(Grading::ghost)], (*deg)[static_cast<int>(Grading::curvatures)]};
    auto sp = spaces.find(target);
    if (sp == spaces.end()) throw Error("internal: no class space for a d3 image");
    const QVec coords = sp->second->coordinates(image);
    if (!coords.empty() && !modulo_d1(target, {}).contains(coords)) {
      c.e2_kind = E2Kind::f3;
      d3_images[target].push_back(coords);
    } else {
      c.e2_kind = E2Kind::trivial;
    }
  }
  for (auto& c : all) {
    if (c.list != DescentList::e2 || c.curvature > cap || c.e2_kind == E2Kind::f3) continue;
    const Key key{c.ghost, c.curvature};
    const QVec coords = spaces.at(key)->coordinates(c.representative);
    auto it = d3_images.find(key);
    c.e2_kind = (it != d3_images.end() && modulo_d1(key, it->second).contains(coords)) ? E2Kind::d3f3 : E2Kind::trivial;
  }

  for (auto& c : all)
    if (c.curvature <= cap) out.classes.push_back(std::move(c));
  for (auto it = out.dims.begin(); it != out.dims.end();)
    it = it->first.second > cap ? out.dims.erase(it) : std::next(it);
  return out;
}

Element lambda_sharp(const TablePtr& table, const DescentClass& c, const std::vector<DescentChain>& chains) {
  require_full(table, "lambda_sharp");
  if (c.list != DescentList::f1) throw ValidationError("lambda_sharp: class is not in F1");
  const Element b = sigma_operator(table).apply(c.witness);
  if (b.is_zero()) return Element(table);
  const Derivation l = lambda_operator(table);
  // Theta-hat: replace one primitive at a time by the first rung of its chain
  std::vector<Element> factors;
  Element theta_hat(table);
  for (int i : c.theta_factors) factors.push_back(chains.at(static_cast<std::size_t>(i)).bottom);
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const auto& chain = chains.at(static_cast<std::size_t>(c.theta_factors[j]));
    if (chain.rungs.size() < 2) throw ValidationError("lambda_sharp: primitive does not transgress");
    theta_hat += product_without(table, factors, j, &chain.rungs[1]);
  }
  const Element result = l.apply(b) * c.theta + b * theta_hat;
  const Element check = gamma_operator(table).apply(result) + d_operator(table).apply(b * c.theta);
  if (!check.is_zero()) throw Error("internal: lambda-sharp representative fails gamma x + d b = 0");
  return result;
}

DescentTable build_table(const TablePtr& table, const DescentClassification& c) {
  DescentTable t;
  t.max_ghost = static_cast<int>(table->algebra().dim());
  int depth = 1;
  for (int q : c.hs.primitive_part.primitive_degrees) depth = std::max(depth, q);
  t.max_depth = depth;
  t.cells.assign(static_cast<std::size_t>(t.max_ghost) + 1,
                 std::vector<std::vector<std::string>>(static_cast<std::size_t>(depth) + 1));
  auto put = [&](int ghost, int r, const Element& x) {
    if (ghost < 0 || ghost > t.max_ghost || r > depth) return;
    t.cells[static_cast<std::size_t>(ghost)][static_cast<std::size_t>(r)].push_back(x.to_string());
  };
  const Derivation g = gamma_operator(table);
  const Derivation d = d_operator(table);
  for (const auto& cl : c.classes) {
    switch (cl.list) {
      case DescentList::d1f1: break;
      case DescentList::f1:
        put(cl.ghost, 0, cl.representative);
        put(cl.ghost - 1, 1, lambda_sharp(table, cl, c.primitive_chains));
        break;
      case DescentList::e2:
        if (cl.e2_kind == E2Kind::d3f3) break;
        if (cl.theta_factors.empty()) {
          put(cl.ghost, 0, cl.representative);
        } else if (cl.theta_factors.size() == 1) {
          const auto& chain = c.primitive_chains.at(static_cast<std::size_t>(cl.theta_factors[0]));
          Element prev(table);
          for (std::size_t r = 0; r < chain.rungs.size(); ++r) {
            const Element rung = cl.witness * chain.rungs[r];
            if (r > 0 && !(g.apply(rung) + d.apply(prev)).is_zero())
              throw Error("internal: descent tower over a primitive fails its linking identity");
            put(cl.ghost - static_cast<int>(r), static_cast<int>(r), rung);
            prev = rung;
          }
        } else {
          put(cl.ghost, 0, cl.representative);
          t.partial = true;
        }
        break;
    }
  }
  return t;
}

nlohmann::json DescentTable::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t g = 0; g < cells.size(); ++g) rows.push_back({{"ghost", g}, {"columns", cells[g]}});
  nlohmann::json j = {{"rows", rows}, {"max_depth", max_depth}};
  if (partial) j["partial"] = true;
  return j;
}

std::string DescentTable::to_text() const {
  std::ostringstream os;
  os << "ghost";
  for (int r = 0; r <= max_depth; ++r) os << "  depth" << r;
  os << '\n';
  for (std::size_t g = 0; g < cells.size(); ++g) {
    os << std::setw(5) << g;
    for (const auto& cell : cells[g]) os << std::setw(8) << cell.size();
    os << '\n';
  }
  for (std::size_t g = 0; g < cells.size(); ++g)
    for (std::size_t r = 0; r < cells[g].size(); ++r)
      for (const auto& s : cells[g][r]) os << "[" << g << "," << r << "] " << s << '\n';
  return os.str();
}

nlohmann::json DescentClassification::to_json() const {
  nlohmann::json lists = {{"E2", nlohmann::json::array()}, {"F1", nlohmann::json::array()}, {"d1F1", nlohmann::json::array()}};
  for (const auto& c : classes) {
    nlohmann::json e = {{"ghost", c.ghost},
                        {"curvature", c.curvature},
                        {"representative", c.representative.to_string()},
                        {"theta", c.theta.to_string()},
                        {"witness", c.witness.to_string()}};
    if (c.list == DescentList::e2) e["kind"] = e2_kind_name(c.e2_kind);
    lists[list_name(c.list)].push_back(e);
  }
  nlohmann::json dim_rows = nlohmann::json::array();
  for (const auto& [k, n] : dims) dim_rows.push_back({{"ghost", k.first}, {"curvature", k.second}, {"dim", n}});
  nlohmann::json chains = nlohmann::json::array();
  for (const auto& ch : primitive_chains) {
    nlohmann::json rungs = nlohmann::json::array();
    for (const auto& r : ch.rungs) rungs.push_back(r.to_string());
    chains.push_back({{"rungs", rungs}, {"top_d", ch.top_d.to_string()}});
  }
  return {{"classes", lists},       {"dims", dim_rows},          {"complete", complete},
          {"d1_consistent", d1_consistent}, {"max_curv_degree", max_curvature}, {"chains", chains}};
}

}  // namespace brst
