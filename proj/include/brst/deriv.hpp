#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brst/gca.hpp"

namespace brst {

/// Graded derivation stored by its images on generators. Parity is fixed by
/// the total degree shift (form + ghost).
class Derivation {
public:
  Derivation(std::string name, TablePtr table, int form_shift, int ghost_shift);

  const std::string& name() const noexcept { return name_; }
  const TablePtr& table() const noexcept { return table_; }
  bool odd() const noexcept { return ((form_shift_ + ghost_shift_) & 1) != 0; }
  int form_shift() const noexcept { return form_shift_; }
  int ghost_shift() const noexcept { return ghost_shift_; }

  const Element& image(int id) const { return images_[static_cast<std::size_t>(id)]; }
  void set_image(int id, Element image);
  void add_to_image(int id, const Element& x);

  Element apply(const Element& x) const;
  Element apply(const Monomial& m) const;

  /// Change of each grading under the derivation, read off the images.
  /// nullopt when the images disagree; 0 for the zero derivation.
  std::optional<int> grading_shift(Grading g) const;

  Derivation renamed(std::string name) const;

private:
  std::string name_;
  TablePtr table_;
  int form_shift_;
  int ghost_shift_;
  std::vector<Element> images_;
};

/// [D1, D2] = D1 D2 - (-1)^{p1 p2} D2 D1.
Derivation graded_commutator(const Derivation& d1, const Derivation& d2, std::string name = {});
Derivation scaled(const Rational& s, const Derivation& d, std::string name = {});
Derivation sum(const Derivation& a, const Derivation& b, std::string name = {});

/// Same shift, same table and the same image on every generator.
bool derivations_equal(const Derivation& a, const Derivation& b);

struct NilpotencyResult {
  bool nilpotent = true;
  std::optional<int> witness;  // generator id with D^2 x != 0
  Element value;                // D^2 on the witness
};

/// D^2 = 1/2 {D, D} on generators. Throws ValidationError for even D.
NilpotencyResult nilpotency_check(const Derivation& d);

/// Operator library. Names:
///   gamma, d, lambda, tau, sigma,
///   gammaS, gammaS0, gammaS1 (aliases gammaR, gammaR1),
///   N_CF, N_C, N_eta, rhoT:<a>, dC:<a>, zero
/// d and lambda need small_full; sigma needs an abelian ideal.
Derivation build_operator(const std::string& name, const TablePtr& table);

std::vector<std::string> operator_names();

/// Named pieces used by the operator library, exposed for tests.
Derivation gamma_operator(const TablePtr& table);
Derivation d_operator(const TablePtr& table);
Derivation lambda_operator(const TablePtr& table);
Derivation tau_operator(const TablePtr& table);
Derivation sigma_operator(const TablePtr& table);
Derivation gamma_s(const TablePtr& table);
Derivation gamma_s_part(const TablePtr& table, int ideal_ghost_change);
Derivation counting_operator(const TablePtr& table, const std::string& which);
Derivation rho_t(const TablePtr& table, int adjoint_index);
Derivation ghost_partial(const TablePtr& table, int adjoint_index);

}  // namespace brst
