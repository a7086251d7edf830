#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace conint::fq {

using cplx = std::complex<double>;

/// A Pauli string stored as X and Z bit masks (bit i = qubit i):
///   P = i^{popcount(x & z)} X^x Z^z,
/// so a qubit with both bits set carries Y = iXZ.
struct PauliString {
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  auto operator<=>(const PauliString&) const = default;

  bool is_identity() const noexcept { return (x | z) == 0; }
  bool is_diagonal() const noexcept { return x == 0; }
  int weight() const noexcept;
  char at(int qubit) const noexcept;

  /// Text form: character k describes qubit k (qubit 0 leftmost).
  std::string to_string(int n_qubits) const;
  static PauliString parse(std::string_view text);

  static PauliString single(int qubit, char pauli);
};

/// Product a*b = phase * c with phase = i^k; returns (k mod 4, c).
std::pair<int, PauliString> multiply(const PauliString& a, const PauliString& b) noexcept;

/// True when the two strings commute.
bool commutes(const PauliString& a, const PauliString& b) noexcept;

inline cplx i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

/// Weighted sum of Pauli strings on a fixed number of qubits (<= 63).
/// Terms are kept merged and in a deterministic order.
class PauliOperator {
 public:
  PauliOperator() = default;
  explicit PauliOperator(int n_qubits);

  static PauliOperator identity(int n_qubits, cplx coeff = 1.0);
  static PauliOperator from_string(std::string_view pauli, cplx coeff = 1.0);

  int n_qubits() const noexcept { return n_qubits_; }
  const std::map<PauliString, cplx>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  void add_term(const PauliString& p, cplx coeff);
  cplx coefficient(const PauliString& p) const;

  /// Drops terms with |coeff| < tol (the 1e-12 default is the library-wide cutoff).
  PauliOperator& simplify(double tol = kDropTolerance);

  PauliOperator adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  /// Largest imaginary coefficient magnitude.
  double max_imag() const;
  bool is_diagonal() const;

  PauliOperator& operator+=(const PauliOperator& o);
  PauliOperator& operator-=(const PauliOperator& o);
  PauliOperator& operator*=(cplx s);
  friend PauliOperator operator+(PauliOperator a, const PauliOperator& b) { return a += b; }
  friend PauliOperator operator-(PauliOperator a, const PauliOperator& b) { return a -= b; }
  friend PauliOperator operator*(cplx s, PauliOperator a) { return a *= s; }
  friend PauliOperator operator*(const PauliOperator& a, const PauliOperator& b);

  /// Dense 2^n x 2^n matrix with qubit 0 as the least significant index bit.
  Eigen::MatrixXcd to_dense() const;

  /// One term per line: `<re> <im> <string>`, 17 significant digits.
  void write(std::ostream& out) const;
  std::string to_text() const;
  static PauliOperator read(std::istream& in);
  static PauliOperator parse_text(std::string_view text);

  static constexpr double kDropTolerance = 1e-12;

 private:
  void check(const PauliString& p) const;

  int n_qubits_ = 0;
  std::map<PauliString, cplx> terms_;
};

/// Largest |[A, B]| coefficient after merging.
double commutator_norm(const PauliOperator& a, const PauliOperator& b);

}  // namespace conint::fq
