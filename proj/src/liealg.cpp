#include "brst/liealg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "brst/errors.hpp"

namespace brst {

namespace {

int levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  // even permutations of (0,1,2)
  if ((a == 0 && b == 1) || (a == 1 && b == 2) || (a == 2 && b == 0)) return 1;
  return -1;
}

RationalMatrix lorentz_metric() { return RationalMatrix::diagonal({-1, 1, 1}); }

RationalMatrix block_diagonal(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

// [J_a, J_b] = eps_abc J^c, [J_a, P_b] = eps_abc P^c, [P_a, P_b] = lambda eps_abc J^c,
// indices raised with g. Without translations this is so(3) / so(2,1).
std::vector<LieAlgebra::Entry> rotation_translation_entries(const RationalMatrix& g, bool with_translations,
                                                            const Rational& lambda) {
  const RationalMatrix ginv = g.inverse();
  std::vector<LieAlgebra::Entry> entries;
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        Rational v = 0;
        for (int d = 0; d < 3; ++d) v += levi_civita(a, b, d) * ginv(d, c);
        if (v == 0) continue;
        entries.push_back({a, b, c, v});
        if (with_translations && lambda != 0) entries.push_back({a + 3, b + 3, c, lambda * v});
      }
    }
  }
  if (with_translations) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          Rational v = 0;
          for (int d = 0; d < 3; ++d) v += levi_civita(a, b, d) * ginv(d, c);
          if (v != 0) entries.push_back({a, b + 3, c + 3, v});
        }
  }
  return entries;
}

const std::vector<std::string> kRotationLabels = {"J1", "J2", "J3"};
const std::vector<std::string> kPoincareLabels = {"J1", "J2", "J3", "P1", "P2", "P3"};

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t") + 1);
  return s;
}

std::vector<std::string> split_sum(const std::string& name) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : name) {
    if (ch == '+') {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

std::optional<std::size_t> abelian_dim(const std::string& name) {
  if (name.rfind("abelian", 0) != 0) return std::nullopt;
  std::string rest = name.substr(7);
  if (!rest.empty() && (rest.front() == '(' || rest.front() == '<')) {
    if (rest.size() < 2 || (rest.back() != ')' && rest.back() != '>')) return std::nullopt;
    rest = rest.substr(1, rest.size() - 2);
  }
  if (rest.empty() || !std::all_of(rest.begin(), rest.end(), ::isdigit)) return std::nullopt;
  const auto n = std::stoul(rest);
  if (n == 0) return std::nullopt;
  return n;
}

}  // namespace

// ---- LieAlgebra ------------------------------------------------------------

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> basis, const std::vector<Entry>& entries,
                       std::optional<RationalMatrix> index_metric)
    : name_(std::move(name)), basis_(std::move(basis)) {
  const int n = static_cast<int>(basis_.size());
  if (n == 0) throw ParseError("algebra '" + name_ + "' has an empty basis");
  {
    std::set<std::string> seen(basis_.begin(), basis_.end());
    if (seen.size() != basis_.size()) throw ParseError("algebra '" + name_ + "' has duplicate basis labels");
  }
  f_.assign(static_cast<std::size_t>(n) * n * n, Rational(0));
  std::set<std::array<int, 3>> given;
  for (const auto& e : entries) {
    if (e.a < 0 || e.b < 0 || e.c < 0 || e.a >= n || e.b >= n || e.c >= n)
      throw ParseError("structure entry index out of range in '" + name_ + "'");
    if (e.a == e.b) throw ParseError("structure entry with a == b in '" + name_ + "'");
    const std::array<int, 3> key{std::min(e.a, e.b), std::max(e.a, e.b), e.c};
    if (!given.insert(key).second)
      throw ParseError("duplicate structure entry for (" + std::to_string(e.a) + "," + std::to_string(e.b) + "," +
                       std::to_string(e.c) + ") in '" + name_ + "'");
    f_[(e.a * n + e.b) * n + e.c] = e.value;
    f_[(e.b * n + e.a) * n + e.c] = -e.value;
  }
  metric_ = index_metric ? *index_metric : RationalMatrix::identity(n);
  if (metric_.rows() != basis_.size() || metric_.cols() != basis_.size())
    throw ParseError("metric dimension does not match basis in '" + name_ + "'");
  if (!metric_.is_symmetric()) throw ParseError("metric of '" + name_ + "' is not symmetric");
}

LieAlgebra LieAlgebra::from_tensor(std::string name, std::vector<std::string> basis, std::vector<Rational> tensor,
                                   std::optional<RationalMatrix> index_metric) {
  const std::size_t n = basis.size();
  if (tensor.size() != n * n * n) throw ParseError("structure tensor has wrong size");
  LieAlgebra alg;
  alg.name_ = std::move(name);
  alg.basis_ = std::move(basis);
  alg.f_ = std::move(tensor);
  alg.metric_ = index_metric ? *index_metric : RationalMatrix::identity(n);
  return alg;
}

bool LieAlgebra::is_abelian() const {
  return std::all_of(f_.begin(), f_.end(), [](const Rational& q) { return q == 0; });
}

nlohmann::json LieAlgebra::to_json() const {
  nlohmann::json structure = nlohmann::json::array();
  const std::size_t n = dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (f(a, b, c) != 0) structure.push_back({a, b, c, brst::to_string(f(a, b, c))});
  nlohmann::json metric = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(brst::to_string(metric_(i, j)));
    metric.push_back(row);
  }
  return {{"name", name_}, {"basis", basis_}, {"structure", structure}, {"metric", metric}};
}

LieAlgebra LieAlgebra::from_json(const nlohmann::json& j) {
  auto field = [&](const char* key) -> const nlohmann::json& {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("algebra spec: missing field '") + key + "'");
    return j.at(key);
  };
  auto as_rational = [](const nlohmann::json& v, const std::string& where) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw ParseError(where + ": rationals must be \"p/q\" strings or integers");
  };
  const auto& name_j = field("name");
  if (!name_j.is_string()) throw ParseError("algebra spec: field 'name' must be a string");
  const auto& basis_j = field("basis");
  if (!basis_j.is_array()) throw ParseError("algebra spec: field 'basis' must be an array");
  std::vector<std::string> basis;
  for (std::size_t i = 0; i < basis_j.size(); ++i) {
    if (!basis_j[i].is_string()) throw ParseError("algebra spec: basis[" + std::to_string(i) + "] is not a string");
    basis.push_back(basis_j[i].get<std::string>());
  }
  const auto& structure_j = field("structure");
  if (!structure_j.is_array()) throw ParseError("algebra spec: field 'structure' must be an array");
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < structure_j.size(); ++i) {
    const auto& e = structure_j[i];
    const std::string where = "algebra spec: structure[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
        !e[2].is_number_integer())
      throw ParseError(where + " must be [a, b, c, \"p/q\"]");
    entries.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), as_rational(e[3], where)});
  }
  std::optional<RationalMatrix> metric;
  if (j.contains("metric") && !j.at("metric").is_null()) {
    const auto& m = j.at("metric");
    const std::size_t n = basis.size();
    if (!m.is_array() || m.size() != n) throw ParseError("algebra spec: metric must be a dim x dim array");
    RationalMatrix mat(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      if (!m[r].is_array() || m[r].size() != n) throw ParseError("algebra spec: metric must be a dim x dim array");
      for (std::size_t c = 0; c < n; ++c)
        mat(r, c) = as_rational(m[r][c], "algebra spec: metric[" + std::to_string(r) + "]");
    }
    metric = std::move(mat);
  }
  try {
    return LieAlgebra(name_j.get<std::string>(), std::move(basis), entries, std::move(metric));
  } catch (const ParseError& e) {
    throw ParseError(std::string("algebra spec: ") + e.what());
  }
}

// ---- SemidirectSplit -------------------------------------------------------

bool SemidirectSplit::in_ideal(int a) const { return std::find(ideal.begin(), ideal.end(), a) != ideal.end(); }

bool SemidirectSplit::in_subalgebra(int a) const {
  return std::find(subalgebra.begin(), subalgebra.end(), a) != subalgebra.end();
}

SemidirectSplit SemidirectSplit::parse(const std::string& text, std::size_t dim) {
  SemidirectSplit split;
  std::stringstream ss(text);
  std::string part;
  bool saw_k = false, saw_j = false;
  while (std::getline(ss, part, ';')) {
    part = trim(part);
    if (part.size() < 2 || part[1] != '=') throw ParseError("split must look like 'K=0,1,2;J=3,4,5'");
    std::vector<int>* target = nullptr;
    if (part[0] == 'K') {
      target = &split.subalgebra;
      saw_k = true;
    } else if (part[0] == 'J') {
      target = &split.ideal;
      saw_j = true;
    } else {
      throw ParseError("split part must start with K= or J=");
    }
    std::stringstream items(part.substr(2));
    std::string item;
    while (std::getline(items, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      if (!std::all_of(item.begin(), item.end(), ::isdigit)) throw ParseError("split index '" + item + "' invalid");
      const int idx = std::stoi(item);
      if (idx < 0 || static_cast<std::size_t>(idx) >= dim)
        throw ParseError("split index " + item + " out of range");
      target->push_back(idx);
    }
  }
  if (!saw_k && !saw_j) throw ParseError("split must look like 'K=0,1,2;J=3,4,5'");
  return split;
}

std::string SemidirectSplit::to_string() const {
  auto join = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  return "K=" + join(subalgebra) + ";J=" + join(ideal);
}

// ---- validation ------------------------------------------------------------

ValidationReport validate(const LieAlgebra& alg) {
  ValidationReport report;
  const int n = static_cast<int>(alg.dim());
  bool antisymmetric = true;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const Rational sum = alg.f(a, b, c) + alg.f(b, a, c);
        if (sum != 0) {
          antisymmetric = false;
          report.violations.push_back({Violation::Kind::antisymmetry, {a, b, c, -1}, sum});
        }
      }
  // With antisymmetric constants the Jacobiator is totally antisymmetric in
  // (a,b,c), so a<b<c suffices; otherwise every triple is checked.
  for (int a = 0; a < n; ++a)
    for (int b = antisymmetric ? a + 1 : 0; b < n; ++b)
      for (int c = antisymmetric ? b + 1 : 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          Rational sum = 0;
          for (int e = 0; e < n; ++e)
            sum += alg.f(a, b, e) * alg.f(e, c, d) + alg.f(b, c, e) * alg.f(e, a, d) + alg.f(c, a, e) * alg.f(e, b, d);
          if (sum != 0) report.violations.push_back({Violation::Kind::jacobi, {a, b, c, d}, sum});
        }
  return report;
}

BilinearForm killing_form(const LieAlgebra& alg) {
  std::vector<int> all(alg.dim());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return restricted_killing_form(alg, all);
}

BilinearForm restricted_killing_form(const LieAlgebra& alg, const std::vector<int>& idx) {
  const std::size_t k = idx.size();
  BilinearForm form{RationalMatrix(k, k)};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Rational sum = 0;
      for (int c : idx)
        for (int d : idx) sum += alg.f(idx[i], c, d) * alg.f(idx[j], d, c);
      form.matrix(i, j) = sum;
    }
  return form;
}

SemidirectCertificate verify_semidirect(const LieAlgebra& alg, const SemidirectSplit& split) {
  const int n = static_cast<int>(alg.dim());
  std::vector<int> seen(n, 0);
  for (int a : split.subalgebra) {
    if (a < 0 || a >= n) throw ValidationError("split index out of range");
    ++seen[a];
  }
  for (int a : split.ideal) {
    if (a < 0 || a >= n) throw ValidationError("split index out of range");
    ++seen[a];
  }
  for (int a = 0; a < n; ++a)
    if (seen[a] != 1) throw ValidationError("split index sets do not partition the basis (index " + std::to_string(a) + ")");

  SemidirectCertificate cert;
  auto label = [&](int a) { return alg.basis()[a]; };
  auto first_violation = [&](const std::vector<int>& xs, const std::vector<int>& ys,
                             const std::vector<int>& forbidden) -> std::optional<std::string> {
    for (int x : xs)
      for (int y : ys)
        for (int c : forbidden)
          if (alg.f(x, y, c) != 0)
            return "[" + label(x) + "," + label(y) + "] has a component along " + label(c);
    return std::nullopt;
  };
  auto k_closed = first_violation(split.subalgebra, split.subalgebra, split.ideal);
  auto kj_stable = first_violation(split.subalgebra, split.ideal, split.subalgebra);
  auto j_closed = first_violation(split.ideal, split.ideal, split.subalgebra);
  auto j_abelian = first_violation(split.ideal, split.ideal, split.ideal);
  cert.subalgebra_closed = !k_closed;
  cert.ideal_stable = !kj_stable;
  cert.ideal_closed = !j_closed;
  cert.ideal_abelian = !j_abelian && !j_closed;
  cert.subalgebra_killing = restricted_killing_form(alg, split.subalgebra);
  cert.subalgebra_killing_rank = cert.subalgebra_killing.rank();

  if (k_closed) {
    cert.failure = "subalgebra not closed: " + *k_closed;
  } else if (kj_stable) {
    cert.failure = "ideal not stable under subalgebra: " + *kj_stable;
  } else if (j_closed) {
    cert.failure = "ideal not closed: " + *j_closed;
  } else if (split.abelian_ideal && j_abelian) {
    cert.failure = "ideal declared abelian but " + *j_abelian;
  } else if (cert.subalgebra_killing_rank != split.subalgebra.size()) {
    cert.failure = "Killing form of the subalgebra is degenerate (rank " +
                   std::to_string(cert.subalgebra_killing_rank) + " of " + std::to_string(split.subalgebra.size()) + ")";
  } else {
    cert.ok = true;
  }
  return cert;
}

InvarianceResult check_invariant_metric(const LieAlgebra& alg, const BilinearForm& form) {
  const int n = static_cast<int>(alg.dim());
  if (form.dim() != alg.dim() || form.matrix.cols() != alg.dim())
    throw ValidationError("metric dimension does not match the algebra");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Rational sum = 0;
        for (int d = 0; d < n; ++d) sum += alg.f(c, a, d) * form.matrix(d, b) + alg.f(c, b, d) * form.matrix(a, d);
        if (sum != 0) return {false, std::array<int, 3>{a, b, c}};
      }
  return {};
}

// ---- builtins --------------------------------------------------------------

LieAlgebra so3() {
  return LieAlgebra("so3", kRotationLabels, rotation_translation_entries(RationalMatrix::identity(3), false, 0),
                    RationalMatrix::identity(3));
}

LieAlgebra so21() {
  return LieAlgebra("so21", kRotationLabels, rotation_translation_entries(lorentz_metric(), false, 0), lorentz_metric());
}

LieAlgebra iso3() {
  const auto g = RationalMatrix::identity(3);
  return LieAlgebra("iso3", kPoincareLabels, rotation_translation_entries(g, true, 0), block_diagonal(g, g));
}

LieAlgebra iso21() {
  const auto g = lorentz_metric();
  return LieAlgebra("iso21", kPoincareLabels, rotation_translation_entries(g, true, 0), block_diagonal(g, g));
}

LieAlgebra abelian(std::size_t n) {
  std::vector<std::string> basis;
  for (std::size_t i = 0; i < n; ++i) basis.push_back("X" + std::to_string(i + 1));
  return LieAlgebra("abelian" + std::to_string(n), std::move(basis), {});
}

LieAlgebra direct_sum(const LieAlgebra& x, const LieAlgebra& y) {
  const int nx = static_cast<int>(x.dim());
  std::vector<std::string> basis = x.basis();
  std::set<std::string> used(basis.begin(), basis.end());
  for (const auto& l : y.basis()) {
    std::string label = l;
    for (int k = 2; used.count(label); ++k) label = l + "_" + std::to_string(k);
    used.insert(label);
    basis.push_back(label);
  }
  std::vector<LieAlgebra::Entry> entries;
  for (int a = 0; a < nx; ++a)
    for (int b = a + 1; b < nx; ++b)
      for (int c = 0; c < nx; ++c)
        if (x.f(a, b, c) != 0) entries.push_back({a, b, c, x.f(a, b, c)});
  const int ny = static_cast<int>(y.dim());
  for (int a = 0; a < ny; ++a)
    for (int b = a + 1; b < ny; ++b)
      for (int c = 0; c < ny; ++c)
        if (y.f(a, b, c) != 0) entries.push_back({a + nx, b + nx, c + nx, y.f(a, b, c)});
  return LieAlgebra(x.name() + "+" + y.name(), std::move(basis), entries,
                    block_diagonal(x.index_metric(), y.index_metric()));
}

std::vector<std::string> builtin_names() { return {"so3", "so21", "iso3", "iso21", "so21+so21", "abelian<n>"}; }

LieAlgebra builtin_algebra(const std::string& raw) {
  const auto parts = split_sum(raw);
  if (parts.size() > 1) {
    LieAlgebra acc = builtin_algebra(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) acc = direct_sum(acc, builtin_algebra(parts[i]));
    return acc;
  }
  const std::string name = trim(raw);
  if (name == "so3") return so3();
  if (name == "so21") return so21();
  if (name == "iso3") return iso3();
  if (name == "iso21") return iso21();
  if (name == "so21xso21") return direct_sum(so21(), so21());
  if (auto n = abelian_dim(name)) return abelian(*n);
  throw ParseError("unknown builtin algebra '" + raw + "'");
}

SemidirectSplit default_split(const std::string& raw) {
  const auto parts = split_sum(raw);
  if (parts.size() > 1) {
    SemidirectSplit acc = default_split(parts[0]);
    int offset = static_cast<int>(builtin_algebra(parts[0]).dim());
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const auto s = default_split(parts[i]);
      for (int a : s.subalgebra) acc.subalgebra.push_back(a + offset);
      for (int a : s.ideal) acc.ideal.push_back(a + offset);
      acc.abelian_ideal = acc.abelian_ideal && s.abelian_ideal;
      offset += static_cast<int>(builtin_algebra(parts[i]).dim());
    }
    std::sort(acc.subalgebra.begin(), acc.subalgebra.end());
    std::sort(acc.ideal.begin(), acc.ideal.end());
    return acc;
  }
  const std::string name = trim(raw);
  if (name == "iso3" || name == "iso21") return {{0, 1, 2}, {3, 4, 5}, true};
  if (name == "so3" || name == "so21") return {{0, 1, 2}, {}, true};
  if (name == "so21xso21") return {{0, 1, 2, 3, 4, 5}, {}, true};
  if (auto n = abelian_dim(name)) {
    SemidirectSplit s;
    s.abelian_ideal = true;
    for (std::size_t i = 0; i < *n; ++i) s.ideal.push_back(static_cast<int>(i));
    return s;
  }
  throw ParseError("unknown builtin algebra '" + raw + "'");
}

BilinearForm iso21_omega0() {
  const auto g = lorentz_metric();
  BilinearForm form{RationalMatrix(6, 6)};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      form.matrix(a, b + 3) = g(a, b);
      form.matrix(a + 3, b) = g(a, b);
    }
  return form;
}

Deformation deform_iso21(const Rational& lambda, const Rational& mu) {
  const auto g = lorentz_metric();
  std::string name = "iso21[lambda=" + to_string(lambda) + ",mu=" + to_string(mu) + "]";
  LieAlgebra alg(name, kPoincareLabels, rotation_translation_entries(g, true, lambda), block_diagonal(g, g));
  BilinearForm metric = iso21_omega0();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      metric.matrix(a, b) += mu * g(a, b);
      metric.matrix(a + 3, b + 3) += mu * lambda * g(a, b);
    }
  return {std::move(alg), std::move(metric)};
}

}  // namespace brst
