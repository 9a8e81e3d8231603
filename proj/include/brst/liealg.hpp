#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "brst/rational.hpp"

namespace brst {

/// Symmetric bilinear form on a Lie algebra (Killing form, invariant metric).
struct BilinearForm {
  RationalMatrix matrix;

  std::size_t dim() const noexcept { return matrix.rows(); }
  std::size_t rank() const { return matrix.rank(); }
  bool nondegenerate() const { return dim() == 0 || matrix.determinant() != 0; }
};

/// A finite-dimensional real Lie algebra given by exact structure constants
/// f^c_{ab} with [x_a, x_b] = f^c_{ab} x_c.
///
/// The tensor is stored densely; `dim` never exceeds a handful in practice.
/// Instances are immutable after construction.
class LieAlgebra {
public:
  struct Entry {
    int a, b, c;
    Rational value;  // f^c_{ab}
  };

  /// Builds from antisymmetric storage: every entry sets f^c_{ab} and
  /// f^c_{ba} = -f^c_{ab}. Rejects a == b, out-of-range indices and entries
  /// given for both (a,b) and (b,a).
  LieAlgebra(std::string name, std::vector<std::string> basis, const std::vector<Entry>& entries,
             std::optional<RationalMatrix> index_metric = std::nullopt);

  /// Builds from a raw dense tensor (index (a*dim + b)*dim + c). Antisymmetry
  /// is not enforced; validate() reports violations.
  static LieAlgebra from_tensor(std::string name, std::vector<std::string> basis, std::vector<Rational> tensor,
                                std::optional<RationalMatrix> index_metric = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<std::string>& basis() const noexcept { return basis_; }

  /// f^c_{ab}
  const Rational& f(std::size_t a, std::size_t b, std::size_t c) const { return f_[(a * dim() + b) * dim() + c]; }

  /// Metric used to raise and lower adjoint indices in derived formulas.
  const RationalMatrix& index_metric() const noexcept { return metric_; }

  bool is_abelian() const;

  /// Canonical JSON: {"basis","metric","name","structure"} with a<b entries.
  nlohmann::json to_json() const;
  static LieAlgebra from_json(const nlohmann::json& j);

private:
  LieAlgebra() = default;

  std::string name_;
  std::vector<std::string> basis_;
  std::vector<Rational> f_;
  RationalMatrix metric_;
};

/// Partition of the basis into a subalgebra K and an ideal J (G = K |x J).
struct SemidirectSplit {
  std::vector<int> subalgebra;  // e_A, ghosts eta^A
  std::vector<int> ideal;       // h_alpha, ghosts C^alpha
  bool abelian_ideal = false;

  bool in_ideal(int a) const;
  bool in_subalgebra(int a) const;

  /// "K=0,1,2;J=3,4,5" (the abelian flag is inferred by the caller).
  static SemidirectSplit parse(const std::string& text, std::size_t dim);
  std::string to_string() const;
};

struct Violation {
  enum class Kind { antisymmetry, jacobi };
  Kind kind;
  std::array<int, 4> indices;  // antisymmetry: (a,b,c,-1); jacobi: (a,b,c,d)
  Rational value;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate(const LieAlgebra& alg);

/// G_{AB} = sum_{C,D} f^D_{AC} f^C_{BD}
BilinearForm killing_form(const LieAlgebra& alg);

/// Killing form of the subalgebra spanned by `indices` (restricted sums).
BilinearForm restricted_killing_form(const LieAlgebra& alg, const std::vector<int>& indices);

struct SemidirectCertificate {
  bool ok = false;
  std::string failure;  // first violated condition when !ok
  bool subalgebra_closed = false;
  bool ideal_stable = false;
  bool ideal_closed = false;
  bool ideal_abelian = false;
  BilinearForm subalgebra_killing;
  std::size_t subalgebra_killing_rank = 0;
};

/// Checks closure of K and J and Killing nondegeneracy of K. Throws
/// ValidationError when the index sets do not partition the basis.
SemidirectCertificate verify_semidirect(const LieAlgebra& alg, const SemidirectSplit& split);

struct InvarianceResult {
  bool invariant = true;
  std::optional<std::array<int, 3>> witness;  // (A,B,C)
};

/// True iff sum_D (f^D_{CA} W_{DB} + f^D_{CB} W_{AD}) = 0 for all A,B,C.
InvarianceResult check_invariant_metric(const LieAlgebra& alg, const BilinearForm& form);

// ---- builtin library -------------------------------------------------------

LieAlgebra so3();
LieAlgebra so21();
LieAlgebra iso3();
LieAlgebra iso21();
LieAlgebra abelian(std::size_t n);
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

/// Resolves "so3", "so21", "iso3", "iso21", "abelian<n>", and '+'-joined sums
/// such as "so21+so21" or "so3+abelian1". Throws ParseError for unknown names.
LieAlgebra builtin_algebra(const std::string& name);

/// The split each builtin ships with (rotations/Lorentz as K, translations as
/// J; all of a semisimple algebra as K; all of an abelian algebra as J).
SemidirectSplit default_split(const std::string& builtin_name);

std::vector<std::string> builtin_names();

/// Deformed iso(2,1): [P_a,P_b] = lambda eps_abc J^c, with the metric
/// Omega^{lambda,mu} = Omega^(0) + mu diag(g, lambda g). Basis (J_1..3, P_1..3).
struct Deformation {
  LieAlgebra algebra;
  BilinearForm metric;
};
Deformation deform_iso21(const Rational& lambda, const Rational& mu);

/// Omega^(0) for iso(2,1): off-diagonal g_ab blocks in the (J, P) basis.
BilinearForm iso21_omega0();

}  // namespace brst
