#include "conint/sim/statevector.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "conint/error.hpp"

namespace conint::sim {

namespace {
constexpr int kMaxQubits = 30;

void check_qubits(int n) {
  if (n < 0 || n > kMaxQubits) {
    throw InvalidArgument("statevector qubit count must lie in [0, " + std::to_string(kMaxQubits) + "]");
  }
}
}  // namespace

Statevector::Statevector(int n) : n_(n) {
  check_qubits(n);
  amp_.assign(std::size_t{1} << n, cplx{});
  amp_[0] = 1.0;
}

Statevector::Statevector(int n, std::vector<cplx> a) : n_(n), amp_(std::move(a)) {
  check_qubits(n);
  if (amp_.size() != (std::size_t{1} << n)) {
    throw DimensionMismatch("amplitude count " + std::to_string(amp_.size()) +
                            " is not 2^" + std::to_string(n));
  }
}

Statevector Statevector::basis_state(int n, std::uint64_t index) {
  Statevector s(n);
  if (index >= s.dim()) throw InvalidArgument("basis index out of range");
  s.amp_[0] = 0.0;
  s.amp_[index] = 1.0;
  return s;
}

double Statevector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return s;
}

void Statevector::normalize() {
  const double nrm = std::sqrt(norm_squared());
  if (nrm == 0.0) throw InvalidArgument("cannot normalise the zero vector");
  for (auto& a : amp_) a /= nrm;
}

void Statevector::save_binary(const std::string& path) const {
  static_assert(std::endian::native == std::endian::little, "binary dump assumes little-endian");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot create '" + path + "'");
  out.write(reinterpret_cast<const char*>(amp_.data()),
            static_cast<std::streamsize>(amp_.size() * sizeof(cplx)));
  if (!out) throw Error("failed writing statevector dump");
}

Statevector Statevector::load_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  const auto bytes = static_cast<std::size_t>(in.tellg());
  const std::size_t count = bytes / sizeof(cplx);
  if (bytes % sizeof(cplx) != 0 || count == 0 || !std::has_single_bit(count)) {
    throw ParseError("statevector dump size is not 16 * 2^n bytes", 0);
  }
  std::vector<cplx> a(count);
  in.seekg(0);
  in.read(reinterpret_cast<char*>(a.data()), static_cast<std::streamsize>(bytes));
  return Statevector(std::countr_zero(count), std::move(a));
}

cplx inner_product(const Statevector& a, const Statevector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("states have different dimensions");
  cplx s{};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double overlap(const Statevector& a, const Statevector& b) {
  return std::min(1.0, std::norm(inner_product(a, b)));
}

}  // namespace conint::sim
