#include "conint/fq/pauli.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "conint/error.hpp"

namespace conint::fq {

int PauliString::weight() const noexcept { return std::popcount(x | z); }

char PauliString::at(int q) const noexcept {
  const bool bx = (x >> q) & 1U, bz = (z >> q) & 1U;
  if (bx && bz) return 'Y';
  if (bx) return 'X';
  if (bz) return 'Z';
  return 'I';
}

std::string PauliString::to_string(int n) const {
  std::string s(static_cast<std::size_t>(n), 'I');
  for (int q = 0; q < n; ++q) s[q] = at(q);
  return s;
}

PauliString PauliString::single(int q, char p) {
  if (q < 0 || q >= 63) throw InvalidArgument("qubit index out of range");
  const std::uint64_t b = std::uint64_t{1} << q;
  switch (p) {
    case 'I': return {};
    case 'X': return {b, 0};
    case 'Y': return {b, b};
    case 'Z': return {0, b};
    default: throw InvalidArgument(std::string("unknown Pauli letter '") + p + "'");
  }
}

PauliString PauliString::parse(std::string_view text) {
  if (text.size() > 63) throw InvalidArgument("Pauli string longer than 63 qubits");
  PauliString p;
  for (std::size_t q = 0; q < text.size(); ++q) {
    const auto s = single(static_cast<int>(q), text[q]);
    p.x |= s.x;
    p.z |= s.z;
  }
  return p;
}

std::pair<int, PauliString> multiply(const PauliString& a, const PauliString& b) noexcept {
  const PauliString c{a.x ^ b.x, a.z ^ b.z};
  const int k = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) - std::popcount(c.x & c.z) +
                2 * std::popcount(a.z & b.x);
  return {((k % 4) + 4) % 4, c};
}

bool commutes(const PauliString& a, const PauliString& b) noexcept {
  return ((std::popcount(a.x & b.z) + std::popcount(a.z & b.x)) & 1) == 0;
}

PauliOperator::PauliOperator(int n) : n_qubits_(n) {
  if (n < 0 || n > 63) throw InvalidArgument("qubit count must lie in [0, 63]");
}

PauliOperator PauliOperator::identity(int n, cplx c) {
  PauliOperator op(n);
  op.add_term({}, c);
  return op;
}

PauliOperator PauliOperator::from_string(std::string_view s, cplx c) {
  PauliOperator op(static_cast<int>(s.size()));
  op.add_term(PauliString::parse(s), c);
  return op;
}

void PauliOperator::check(const PauliString& p) const {
  const std::uint64_t mask = n_qubits_ == 64 ? ~0ULL : ((std::uint64_t{1} << n_qubits_) - 1);
  if (((p.x | p.z) & ~mask) != 0) {
    throw DimensionMismatch("Pauli string acts outside the operator's " +
                            std::to_string(n_qubits_) + " qubits");
  }
}

void PauliOperator::add_term(const PauliString& p, cplx c) {
  check(p);
  terms_[p] += c;
}

cplx PauliOperator::coefficient(const PauliString& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? cplx{} : it->second;
}

PauliOperator& PauliOperator::simplify(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < tol) it = terms_.erase(it);
    else ++it;
  }
  return *this;
}

PauliOperator PauliOperator::adjoint() const {
  PauliOperator out(n_qubits_);
  for (const auto& [p, c] : terms_) out.terms_[p] = std::conj(c);
  return out;
}

double PauliOperator::max_imag() const {
  double m = 0.0;
  for (const auto& [p, c] : terms_) m = std::max(m, std::abs(c.imag()));
  return m;
}

bool PauliOperator::is_hermitian(double tol) const { return max_imag() <= tol; }

bool PauliOperator::is_diagonal() const {
  for (const auto& [p, c] : terms_)
    if (!p.is_diagonal() && c != cplx{}) return false;
  return true;
}

PauliOperator& PauliOperator::operator+=(const PauliOperator& o) {
  if (o.n_qubits_ != n_qubits_) throw DimensionMismatch("adding operators on different qubit counts");
  for (const auto& [p, c] : o.terms_) terms_[p] += c;
  return *this;
}

PauliOperator& PauliOperator::operator-=(const PauliOperator& o) {
  if (o.n_qubits_ != n_qubits_) throw DimensionMismatch("subtracting operators on different qubit counts");
  for (const auto& [p, c] : o.terms_) terms_[p] -= c;
  return *this;
}

PauliOperator& PauliOperator::operator*=(cplx s) {
  for (auto& [p, c] : terms_) c *= s;
  return *this;
}

PauliOperator operator*(const PauliOperator& a, const PauliOperator& b) {
  if (a.n_qubits_ != b.n_qubits_) throw DimensionMismatch("multiplying operators on different qubit counts");
  PauliOperator out(a.n_qubits_);
  for (const auto& [pa, ca] : a.terms_)
    for (const auto& [pb, cb] : b.terms_) {
      const auto [k, pc] = multiply(pa, pb);
      out.terms_[pc] += i_power(k) * ca * cb;
    }
  return out;
}

Eigen::MatrixXcd PauliOperator::to_dense() const {
  if (n_qubits_ > 14) throw SizeLimitError("dense Pauli matrix limited to 14 qubits");
  const std::size_t dim = std::size_t{1} << n_qubits_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [p, c] : terms_) {
    const cplx base = c * i_power(std::popcount(p.x & p.z));
    for (std::size_t col = 0; col < dim; ++col) {
      const double sign = (std::popcount(col & p.z) & 1) ? -1.0 : 1.0;
      m(col ^ p.x, col) += sign * base;
    }
  }
  return m;
}

void PauliOperator::write(std::ostream& out) const {
  char buf[64];
  for (const auto& [p, c] : terms_) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g ", c.real(), c.imag());
    out << buf << (n_qubits_ == 0 ? std::string("-") : p.to_string(n_qubits_)) << '\n';
  }
}

std::string PauliOperator::to_text() const {
  std::ostringstream s;
  write(s);
  return s.str();
}

PauliOperator PauliOperator::read(std::istream& in) {
  std::string raw;
  int line = 0;
  int n = -1;
  PauliOperator op;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r") == std::string::npos || raw[raw.find_first_not_of(" \t")] == '#')
      continue;
    std::istringstream row(raw);
    double re = 0.0, im = 0.0;
    std::string s;
    if (!(row >> re >> im >> s)) throw ParseError("expected '<re> <im> <pauli string>'", line);
    if (s == "-") s.clear();
    if (n < 0) {
      n = static_cast<int>(s.size());
      op = PauliOperator(n);
    } else if (static_cast<int>(s.size()) != n) {
      throw ParseError("Pauli string length differs from earlier lines", line);
    }
    try {
      op.add_term(PauliString::parse(s), {re, im});
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), line);
    }
  }
  return op;
}

PauliOperator PauliOperator::parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read(in);
}

double commutator_norm(const PauliOperator& a, const PauliOperator& b) {
  auto c = a * b - b * a;
  double m = 0.0;
  for (const auto& [p, v] : c.terms()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace conint::fq
