#pragma once

#include <string>
#include <vector>

#include "conint/fq/pauli.hpp"

namespace conint::sim {

enum class GateKind { RX, RY, RZ, CX, CZ, X };

const char* gate_name(GateKind kind);
bool is_rotation(GateKind kind);

/// One gate. Rotations use R(angle) = exp(-i angle P / 2) with
///   angle = offset + scale * params[param]   (param >= 0)
///   angle = offset                            (param < 0, fixed gate).
/// Allowing several gates to share a parameter with different scales is what
/// lets a Pauli-exponential ladder carry a single excitation amplitude.
struct Gate {
  GateKind kind = GateKind::X;
  int target = 0;
  int control = -1;  // CX/CZ only
  int param = -1;
  double scale = 1.0;
  double offset = 0.0;

  double angle(const std::vector<double>& params) const {
    return param >= 0 ? offset + scale * params[static_cast<std::size_t>(param)] : offset;
  }
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n_qubits);

  int n_qubits() const noexcept { return n_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  const std::vector<std::string>& parameter_names() const noexcept { return names_; }
  int n_parameters() const noexcept { return static_cast<int>(names_.size()); }

  /// Declares a new parameter slot; names must be unique.
  int add_parameter(const std::string& name);

  void x(int q);
  void cx(int control, int target);
  void cz(int control, int target);
  void rotation(GateKind kind, int q, int param, double scale = 1.0, double offset = 0.0);
  void rx(int q, int param, double scale = 1.0, double offset = 0.0) { rotation(GateKind::RX, q, param, scale, offset); }
  void ry(int q, int param, double scale = 1.0, double offset = 0.0) { rotation(GateKind::RY, q, param, scale, offset); }
  void rz(int q, int param, double scale = 1.0, double offset = 0.0) { rotation(GateKind::RZ, q, param, scale, offset); }

  /// Fixed-angle rotation.
  void rotation_fixed(GateKind kind, int q, double angle) { rotation(kind, q, -1, 1.0, angle); }

  /// Appends another circuit; its parameters are renamed with `prefix` and
  /// appended after this circuit's slots.
  void append(const Circuit& other, const std::string& prefix = {});

  /// exp(i * phi * P) with phi = scale * params[param]: basis change to Z,
  /// CX parity ladder, RZ(-2 phi) on the last support qubit, and the inverse.
  void append_pauli_exponential(const fq::PauliString& pauli, int param, double scale);

  /// One gate per line, e.g. `RY 2 p=5 scale=1 offset=0` or `CX 0 1`.
  std::string to_text() const;

 private:
  void check_qubit(int q) const;

  int n_ = 0;
  std::vector<Gate> gates_;
  std::vector<std::string> names_;
};

}  // namespace conint::sim
