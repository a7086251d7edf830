#include "conint/sim/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "conint/error.hpp"

namespace conint::sim {

void NoiseModel::validate() const {
  if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0)) {
    throw InvalidArgument("depolarizing probabilities must lie in [0, 1]");
  }
}

namespace {

void apply_1q(std::vector<cplx>& a, int q, const cplx m00, const cplx m01, const cplx m10,
              const cplx m11) {
  const std::size_t stride = std::size_t{1} << q;
  const std::size_t dim = a.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const cplx a0 = a[i], a1 = a[i + stride];
      a[i] = m00 * a0 + m01 * a1;
      a[i + stride] = m10 * a0 + m11 * a1;
    }
  }
}

void apply_pauli_letter(std::vector<cplx>& a, int q, int which) {
  // which: 1 = X, 2 = Y, 3 = Z
  const cplx i(0.0, 1.0);
  switch (which) {
    case 1: apply_1q(a, q, 0.0, 1.0, 1.0, 0.0); break;
    case 2: apply_1q(a, q, 0.0, -i, i, 0.0); break;
    case 3: apply_1q(a, q, 1.0, 0.0, 0.0, -1.0); break;
    default: break;
  }
}

void apply_noise(Statevector& s, const Gate& g, const NoiseModel& noise, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (g.control < 0) {
    if (noise.p1 <= 0.0) return;
    if (u(rng) < noise.p1) {
      std::uniform_int_distribution<int> pick(1, 3);
      apply_pauli_letter(s.amplitudes(), g.target, pick(rng));
    }
  } else {
    if (noise.p2 <= 0.0) return;
    if (u(rng) < noise.p2) {
      std::uniform_int_distribution<int> pick(1, 15);
      const int k = pick(rng);
      apply_pauli_letter(s.amplitudes(), g.control, k / 4);
      apply_pauli_letter(s.amplitudes(), g.target, k % 4);
    }
  }
}

}  // namespace

void apply_gate(Statevector& s, const Gate& g, double angle) {
  auto& a = s.amplitudes();
  const double c = std::cos(0.5 * angle), sn = std::sin(0.5 * angle);
  const cplx i(0.0, 1.0);
  switch (g.kind) {
    case GateKind::RX: apply_1q(a, g.target, c, -i * sn, -i * sn, c); break;
    case GateKind::RY: apply_1q(a, g.target, c, -sn, sn, c); break;
    case GateKind::RZ: {
      const cplx e0(c, -sn), e1(c, sn);
      const std::size_t bit = std::size_t{1} << g.target;
      for (std::size_t k = 0; k < a.size(); ++k) a[k] *= (k & bit) ? e1 : e0;
      break;
    }
    case GateKind::X: apply_1q(a, g.target, 0.0, 1.0, 1.0, 0.0); break;
    case GateKind::CX: {
      const std::size_t cb = std::size_t{1} << g.control, tb = std::size_t{1} << g.target;
      for (std::size_t k = 0; k < a.size(); ++k)
        if ((k & cb) && !(k & tb)) std::swap(a[k], a[k | tb]);
      break;
    }
    case GateKind::CZ: {
      const std::size_t mask = (std::size_t{1} << g.control) | (std::size_t{1} << g.target);
      for (std::size_t k = 0; k < a.size(); ++k)
        if ((k & mask) == mask) a[k] = -a[k];
      break;
    }
  }
}

Statevector apply_circuit(const Statevector& state, const Circuit& circuit,
                          const std::vector<double>& params, const NoiseModel* noise) {
  if (state.n_qubits() != circuit.n_qubits()) {
    throw DimensionMismatch("state has " + std::to_string(state.n_qubits()) +
                            " qubits, circuit has " + std::to_string(circuit.n_qubits()));
  }
  if (static_cast<int>(params.size()) != circuit.n_parameters()) {
    throw DimensionMismatch("expected " + std::to_string(circuit.n_parameters()) +
                            " parameters, got " + std::to_string(params.size()));
  }
  Statevector s = state;
  const bool noisy = noise != nullptr && noise->enabled();
  if (noisy) noise->validate();
  std::mt19937_64 rng(noisy ? noise->seed : 0);
  for (const auto& g : circuit.gates()) {
    apply_gate(s, g, g.angle(params));
    if (noisy) apply_noise(s, g, *noise, rng);
  }
  return s;
}

void apply_pauli_operator(const fq::PauliOperator& op, const std::vector<cplx>& in,
                          std::vector<cplx>& out) {
  const std::size_t dim = std::size_t{1} << op.n_qubits();
  if (in.size() != dim) throw DimensionMismatch("vector length does not match operator");
  out.assign(dim, cplx{});
  for (const auto& [p, c] : op.terms()) {
    const cplx base = c * fq::i_power(std::popcount(p.x & p.z));
    for (std::size_t k = 0; k < dim; ++k) {
      const cplx v = (std::popcount(k & p.z) & 1) ? -base : base;
      out[k ^ p.x] += v * in[k];
    }
  }
}

cplx pauli_expectation(const Statevector& s, const fq::PauliString& p) {
  const auto& a = s.amplitudes();
  cplx acc{};
  for (std::size_t k = 0; k < a.size(); ++k) {
    const cplx v = std::conj(a[k ^ p.x]) * a[k];
    acc += (std::popcount(k & p.z) & 1) ? -v : v;
  }
  return acc * fq::i_power(std::popcount(p.x & p.z));
}

double expectation_exact(const Statevector& s, const fq::PauliOperator& op) {
  if (op.n_qubits() != s.n_qubits()) throw DimensionMismatch("operator and state widths differ");
  cplx e{};
  for (const auto& [p, c] : op.terms()) e += c * pauli_expectation(s, p);
  if (std::abs(e.imag()) > 1e-10) {
    throw InvalidArgument("expectation has imaginary part " + std::to_string(e.imag()) +
                          "; operator is not Hermitian");
  }
  return e.real();
}

double expectation_sampled(const Statevector& s, const fq::PauliOperator& op, int shots,
                           std::mt19937_64& rng) {
  if (shots < 1) throw InvalidArgument("shot count must be at least 1");
  if (op.n_qubits() != s.n_qubits()) throw DimensionMismatch("operator and state widths differ");
  double total = 0.0;
  constexpr double half_pi = std::numbers::pi / 2;
  for (const auto& [p, c] : op.terms()) {
    if (std::abs(c.imag()) > 1e-10) throw InvalidArgument("sampling needs real coefficients");
    if (p.is_identity()) {
      total += c.real();
      continue;
    }
    // Rotate each X/Y qubit so the string becomes a product of Z's.
    Statevector r = s;
    std::uint64_t mask = 0;
    for (int q = 0; q < s.n_qubits(); ++q) {
      const char l = p.at(q);
      if (l == 'I') continue;
      mask |= std::uint64_t{1} << q;
      if (l == 'X') apply_gate(r, Gate{GateKind::RY, q}, -half_pi);
      else if (l == 'Y') apply_gate(r, Gate{GateKind::RX, q}, half_pi);
    }
    double p_plus = 0.0;
    for (std::size_t k = 0; k < r.dim(); ++k)
      if (!(std::popcount(k & mask) & 1)) p_plus += std::norm(r[k]);
    p_plus = std::clamp(p_plus, 0.0, 1.0);
    // The count of +1 outcomes over independent shots is binomial.
    std::binomial_distribution<int> draw(shots, p_plus);
    const int plus = draw(rng);
    total += c.real() * (2.0 * plus - shots) / shots;
  }
  return total;
}

double expectation_sampled(const Statevector& s, const fq::PauliOperator& op, int shots,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return expectation_sampled(s, op, shots, rng);
}

std::vector<double> parameter_shift_gradient(const Statevector& initial, const Circuit& circuit,
                                             const std::vector<double>& params,
                                             const fq::PauliOperator& op) {
  if (static_cast<int>(params.size()) != circuit.n_parameters()) {
    throw DimensionMismatch("parameter vector length does not match circuit");
  }
  std::vector<double> grad(params.size(), 0.0);
  const auto& gates = circuit.gates();
  auto run_shifted = [&](std::size_t which, double shift) {
    Statevector s = initial;
    for (std::size_t i = 0; i < gates.size(); ++i) {
      double angle = gates[i].angle(params);
      if (i == which) angle += shift;
      apply_gate(s, gates[i], angle);
    }
    return expectation_exact(s, op);
  };
  constexpr double shift = std::numbers::pi / 2;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    if (g.param < 0 || !is_rotation(g.kind)) continue;
    const double d = 0.5 * (run_shifted(i, shift) - run_shifted(i, -shift));
    grad[static_cast<std::size_t>(g.param)] += g.scale * d;
  }
  return grad;
}

}  // namespace conint::sim
