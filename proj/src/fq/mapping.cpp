#include "conint/fq/mapping.hpp"

#include <bit>
#include <vector>

#include "conint/error.hpp"

namespace conint::fq {

std::string to_string(MappingKind kind) {
  switch (kind) {
    case MappingKind::JordanWigner: return "jordan-wigner";
    case MappingKind::Parity: return "parity";
    case MappingKind::ParityReduced: return "parity-reduced";
  }
  return "?";
}

MappingKind parse_mapping(const std::string& text) {
  if (text == "jordan-wigner" || text == "jw") return MappingKind::JordanWigner;
  if (text == "parity") return MappingKind::Parity;
  if (text == "parity-reduced" || text == "parity-tapered") return MappingKind::ParityReduced;
  throw InvalidArgument("unknown mapping '" + text + "'");
}

void MappingScheme::validate() const {
  if (kind == MappingKind::ParityReduced && (n_alpha < 0 || n_beta < 0)) {
    throw InvalidArgument("parity-reduced mapping needs the alpha and beta particle counts");
  }
}

namespace {

using LadderImage = std::vector<PauliOperator>;

PauliOperator ladder_from_parts(int n, PauliString real_part, PauliString imag_part, bool dagger) {
  // 1/2 (A + iB) for annihilation, 1/2 (A - iB) for creation, with A, B Hermitian strings.
  PauliOperator op(n);
  op.add_term(real_part, 0.5);
  op.add_term(imag_part, cplx(0.0, dagger ? -0.5 : 0.5));
  return op;
}

LadderImage jw_images(int n) {
  LadderImage img(2 * n);
  for (int j = 0; j < n; ++j) {
    const std::uint64_t zs = (std::uint64_t{1} << j) - 1;
    const std::uint64_t b = std::uint64_t{1} << j;
    const PauliString xs{b, zs}, ys{b, zs | b};
    // Z-string and X_j/Y_j act on disjoint qubits, so the bit masks compose directly.
    for (int d = 0; d < 2; ++d) img[2 * j + d] = ladder_from_parts(n, xs, ys, d == 1);
  }
  return img;
}

LadderImage parity_images(int n) {
  LadderImage img(2 * n);
  const std::uint64_t all = (n == 64) ? ~0ULL : ((std::uint64_t{1} << n) - 1);
  for (int j = 0; j < n; ++j) {
    const std::uint64_t b = std::uint64_t{1} << j;
    const std::uint64_t upper = all & ~((b << 1) - 1);
    const std::uint64_t zprev = j > 0 ? (b >> 1) : 0;
    const PauliString a{b | upper, zprev}, y{b | upper, b};
    for (int d = 0; d < 2; ++d) img[2 * j + d] = ladder_from_parts(n, a, y, d == 1);
  }
  return img;
}

PauliOperator map_with(const FermionOperator& f, const LadderImage& img) {
  const int n = f.n_modes();
  PauliOperator out(n);
  for (const auto& [ops, c] : f.terms()) {
    PauliOperator term = PauliOperator::identity(n, c);
    for (const auto& l : ops) term = term * img[2 * l.mode + (l.dagger ? 1 : 0)];
    out += term;
  }
  out.simplify();
  return out;
}

std::uint64_t remove_bit(std::uint64_t v, int bit) {
  const std::uint64_t low = v & ((std::uint64_t{1} << bit) - 1);
  const std::uint64_t high = (v >> (bit + 1)) << bit;
  return low | high;
}

std::uint64_t insert_bit(std::uint64_t v, int bit, bool value) {
  const std::uint64_t low = v & ((std::uint64_t{1} << bit) - 1);
  const std::uint64_t high = (v >> bit) << (bit + 1);
  return low | high | (static_cast<std::uint64_t>(value) << bit);
}

}  // namespace

PauliOperator map_jordan_wigner(const FermionOperator& f) {
  if (f.n_modes() > 63) throw InvalidArgument("at most 63 modes supported");
  return map_with(f, jw_images(f.n_modes()));
}

PauliOperator map_parity(const FermionOperator& f) {
  if (f.n_modes() > 63) throw InvalidArgument("at most 63 modes supported");
  return map_with(f, parity_images(f.n_modes()));
}

PauliOperator taper_two_qubits(const PauliOperator& p, int n_alpha, int n_beta) {
  const int n = p.n_qubits();
  if (n < 2 || n % 2 != 0) throw InvalidArgument("tapering needs an even qubit count >= 2");
  const int n_orb = n / 2;
  if (n_alpha < 0 || n_beta < 0 || n_alpha > n_orb || n_beta > n_orb) {
    throw InvalidArgument("particle counts do not fit the spin-orbital blocks");
  }
  const int qa = n_orb - 1, qt = n - 1;
  const double sa = (n_alpha % 2) ? -1.0 : 1.0;
  const double st = ((n_alpha + n_beta) % 2) ? -1.0 : 1.0;
  PauliOperator out(n - 2);
  for (const auto& [s, c] : p.terms()) {
    if (((s.x >> qa) & 1U) || ((s.x >> qt) & 1U)) {
      throw StructuralError("term " + s.to_string(n) +
                            " has X or Y on a tapered qubit; operator breaks the parity symmetry");
    }
    cplx v = c;
    if ((s.z >> qa) & 1U) v *= sa;
    if ((s.z >> qt) & 1U) v *= st;
    // Remove the higher bit first so the lower index stays valid.
    PauliString r{remove_bit(remove_bit(s.x, qt), qa), remove_bit(remove_bit(s.z, qt), qa)};
    out.add_term(r, v);
  }
  out.simplify();
  return out;
}

PauliOperator map_operator(const FermionOperator& f, const MappingScheme& scheme) {
  scheme.validate();
  switch (scheme.kind) {
    case MappingKind::JordanWigner: return map_jordan_wigner(f);
    case MappingKind::Parity: return map_parity(f);
    case MappingKind::ParityReduced:
      return taper_two_qubits(map_parity(f), scheme.n_alpha, scheme.n_beta);
  }
  throw InvalidArgument("unknown mapping kind");
}

int mapped_qubits(int n_modes, MappingKind kind) {
  return kind == MappingKind::ParityReduced ? n_modes - 2 : n_modes;
}

std::uint64_t encode_occupation(std::uint64_t occ, int n_modes, MappingKind kind) {
  if (kind == MappingKind::JordanWigner) return occ;
  std::uint64_t par = 0;
  int acc = 0;
  for (int j = 0; j < n_modes; ++j) {
    acc ^= static_cast<int>((occ >> j) & 1U);
    par |= static_cast<std::uint64_t>(acc) << j;
  }
  if (kind == MappingKind::Parity) return par;
  if (n_modes < 2 || n_modes % 2) throw InvalidArgument("reduced encoding needs an even mode count");
  return remove_bit(remove_bit(par, n_modes - 1), n_modes / 2 - 1);
}

std::uint64_t decode_occupation(std::uint64_t index, int n_modes, const MappingScheme& scheme) {
  if (scheme.kind == MappingKind::JordanWigner) return index;
  std::uint64_t par = index;
  if (scheme.kind == MappingKind::ParityReduced) {
    scheme.validate();
    par = insert_bit(par, n_modes / 2 - 1, scheme.n_alpha % 2);
    par = insert_bit(par, n_modes - 1, (scheme.n_alpha + scheme.n_beta) % 2);
  }
  std::uint64_t occ = 0;
  int prev = 0;
  for (int j = 0; j < n_modes; ++j) {
    const int cur = static_cast<int>((par >> j) & 1U);
    occ |= static_cast<std::uint64_t>(cur ^ prev) << j;
    prev = cur;
  }
  return occ;
}

}  // namespace conint::fq
