#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace conint::sim {

using cplx = std::complex<double>;

/// 2^n complex amplitudes; amplitude index bit q is qubit q.
class Statevector {
 public:
  Statevector() = default;
  /// |0...0> on n qubits.
  explicit Statevector(int n_qubits);
  Statevector(int n_qubits, std::vector<cplx> amplitudes);

  static Statevector basis_state(int n_qubits, std::uint64_t index);

  int n_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return amp_.size(); }
  const std::vector<cplx>& amplitudes() const noexcept { return amp_; }
  std::vector<cplx>& amplitudes() noexcept { return amp_; }
  cplx operator[](std::size_t i) const { return amp_[i]; }
  cplx& operator[](std::size_t i) { return amp_[i]; }

  double norm_squared() const;
  void normalize();

  /// Raw little-endian (re, im) doubles, no header.
  void save_binary(const std::string& path) const;
  static Statevector load_binary(const std::string& path);

 private:
  int n_ = 0;
  std::vector<cplx> amp_;
};

/// <a|b>
cplx inner_product(const Statevector& a, const Statevector& b);

/// |<a|b>|^2
double overlap(const Statevector& a, const Statevector& b);

}  // namespace conint::sim
