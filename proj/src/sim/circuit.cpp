#include "conint/sim/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "conint/error.hpp"

namespace conint::sim {

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CX: return "CX";
    case GateKind::CZ: return "CZ";
    case GateKind::X: return "X";
  }
  return "?";
}

bool is_rotation(GateKind k) { return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ; }

Circuit::Circuit(int n) : n_(n) {
  if (n < 0) throw InvalidArgument("negative qubit count");
}

void Circuit::check_qubit(int q) const {
  if (q < 0 || q >= n_) {
    throw InvalidArgument("qubit " + std::to_string(q) + " outside circuit of " +
                          std::to_string(n_) + " qubits");
  }
}

int Circuit::add_parameter(const std::string& name) {
  if (std::find(names_.begin(), names_.end(), name) != names_.end()) {
    throw InvalidArgument("duplicate parameter name '" + name + "'");
  }
  names_.push_back(name);
  return static_cast<int>(names_.size()) - 1;
}

void Circuit::x(int q) {
  check_qubit(q);
  gates_.push_back(Gate{GateKind::X, q});
}

void Circuit::cx(int c, int t) {
  check_qubit(c);
  check_qubit(t);
  if (c == t) throw InvalidArgument("CX control and target must differ");
  gates_.push_back(Gate{GateKind::CX, t, c});
}

void Circuit::cz(int c, int t) {
  check_qubit(c);
  check_qubit(t);
  if (c == t) throw InvalidArgument("CZ control and target must differ");
  gates_.push_back(Gate{GateKind::CZ, t, c});
}

void Circuit::rotation(GateKind kind, int q, int param, double scale, double offset) {
  if (!is_rotation(kind)) throw InvalidArgument("not a rotation gate");
  check_qubit(q);
  if (param >= n_parameters()) {
    throw InvalidArgument("parameter slot " + std::to_string(param) + " is not declared");
  }
  Gate g{kind, q};
  g.param = param;
  g.scale = scale;
  g.offset = offset;
  gates_.push_back(g);
}

void Circuit::append(const Circuit& other, const std::string& prefix) {
  if (other.n_ != n_) throw DimensionMismatch("appending a circuit with a different width");
  const int base = n_parameters();
  for (const auto& name : other.names_) add_parameter(prefix + name);
  for (Gate g : other.gates_) {
    if (g.param >= 0) g.param += base;
    gates_.push_back(g);
  }
}

void Circuit::append_pauli_exponential(const fq::PauliString& p, int param, double scale) {
  std::vector<int> support;
  for (int q = 0; q < n_; ++q)
    if (p.at(q) != 'I') support.push_back(q);
  if (support.empty()) return;  // global phase
  constexpr double half_pi = std::numbers::pi / 2;
  auto basis_in = [&](int q) {
    if (p.at(q) == 'X') rotation_fixed(GateKind::RY, q, -half_pi);
    else if (p.at(q) == 'Y') rotation_fixed(GateKind::RX, q, half_pi);
  };
  auto basis_out = [&](int q) {
    if (p.at(q) == 'X') rotation_fixed(GateKind::RY, q, half_pi);
    else if (p.at(q) == 'Y') rotation_fixed(GateKind::RX, q, -half_pi);
  };
  for (int q : support) basis_in(q);
  for (std::size_t i = 0; i + 1 < support.size(); ++i) cx(support[i], support[i + 1]);
  rz(support.back(), param, -2.0 * scale);
  for (std::size_t i = support.size() - 1; i > 0; --i) cx(support[i - 1], support[i]);
  for (int q : support) basis_out(q);
}

std::string Circuit::to_text() const {
  std::ostringstream out;
  out << "qubits " << n_ << " parameters " << n_parameters() << '\n';
  char buf[128];
  for (const auto& g : gates_) {
    if (is_rotation(g.kind)) {
      if (g.param >= 0) {
        std::snprintf(buf, sizeof buf, "%s %d p=%d scale=%.17g offset=%.17g", gate_name(g.kind),
                      g.target, g.param, g.scale, g.offset);
      } else {
        std::snprintf(buf, sizeof buf, "%s %d angle=%.17g", gate_name(g.kind), g.target, g.offset);
      }
    } else if (g.control >= 0) {
      std::snprintf(buf, sizeof buf, "%s %d %d", gate_name(g.kind), g.control, g.target);
    } else {
      std::snprintf(buf, sizeof buf, "%s %d", gate_name(g.kind), g.target);
    }
    out << buf << '\n';
  }
  return out.str();
}

}  // namespace conint::sim
