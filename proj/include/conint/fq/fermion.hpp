#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "conint/chem/active_space.hpp"

namespace conint::fq {

using cplx = std::complex<double>;

struct Ladder {
  int mode = 0;
  bool dagger = false;

  auto operator<=>(const Ladder&) const = default;
};

using LadderString = std::vector<Ladder>;

/// Sum of products of fermionic creation/annihilation operators.
///
/// Spin orbitals follow a block convention fixed throughout the library:
/// alpha orbital i is mode i and beta orbital i is mode i + n_orbitals.
class FermionOperator {
 public:
  FermionOperator() = default;
  explicit FermionOperator(int n_modes) : n_modes_(n_modes) {}

  static FermionOperator identity(int n_modes, cplx coeff = 1.0);

  int n_modes() const noexcept { return n_modes_; }
  const std::map<LadderString, cplx>& terms() const noexcept { return terms_; }

  /// Adds coeff * (ladder product), merging with an identical ladder string.
  void add_term(cplx coeff, LadderString ops);

  FermionOperator adjoint() const;

  /// Equivalent operator with every term in normal order: creation operators
  /// left of annihilation operators, each group sorted by descending mode.
  /// Terms with |coeff| <= tol are dropped.
  FermionOperator normal_ordered(double tol = 0.0) const;

  FermionOperator& operator+=(const FermionOperator& other);
  FermionOperator& operator*=(cplx s);
  friend FermionOperator operator+(FermionOperator a, const FermionOperator& b) { return a += b; }
  friend FermionOperator operator*(const FermionOperator& a, const FermionOperator& b);
  friend FermionOperator operator*(cplx s, FermionOperator a) { return a *= s; }

  /// Largest coefficient difference between the normal-ordered forms of this
  /// operator and its adjoint.
  double hermiticity_error() const;

  std::string to_string() const;

 private:
  void check_modes(const LadderString& ops) const;

  int n_modes_ = 0;
  std::map<LadderString, cplx> terms_;
};

/// H = E_core + sum_{pq,s} h_pq a+_ps a_qs
///      + 1/2 sum_{pqrs,s,t} (pq|rs) a+_ps a+_rt a_st a_qs
/// with (pq|rs) in chemists' notation. The physicists' integral <pr|qs>
/// equals (pq|rs), which fixes the operator order above. Products that
/// would annihilate or create the same spin orbital twice are skipped.
FermionOperator second_quantize(const chem::ActiveSpaceHamiltonian& h);

/// Number operator summed over the given modes.
FermionOperator number_operator(int n_modes, const std::vector<int>& modes);

}  // namespace conint::fq
