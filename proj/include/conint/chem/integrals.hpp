#pragma once

#include <Eigen/Core>
#include <vector>

#include "conint/chem/basis.hpp"
#include "conint/chem/geometry.hpp"

namespace conint::chem {

/// Dense four-index tensor in chemists' notation (pq|rs), row-major.
class EriTensor {
 public:
  EriTensor() = default;
  explicit EriTensor(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  int dim() const noexcept { return n_; }

  double operator()(int p, int q, int r, int s) const { return data_[index(p, q, r, s)]; }
  double& operator()(int p, int q, int r, int s) { return data_[index(p, q, r, s)]; }

  /// Writes all eight permutation-equivalent entries.
  void set_symmetric(int p, int q, int r, int s, double value);

  /// Largest deviation from the eight-fold real-orbital symmetry.
  double symmetry_error() const;

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

 private:
  std::size_t index(int p, int q, int r, int s) const {
    return ((static_cast<std::size_t>(p) * n_ + q) * n_ + r) * n_ + s;
  }

  int n_ = 0;
  std::vector<double> data_;
};

struct IntegralTensors {
  Eigen::MatrixXd overlap;
  Eigen::MatrixXd kinetic;
  Eigen::MatrixXd nuclear;
  EriTensor eri;
  double nuclear_repulsion = 0.0;

  int n_functions() const { return static_cast<int>(overlap.rows()); }
  Eigen::MatrixXd core_hamiltonian() const { return kinetic + nuclear; }
};

/// One- and two-electron integrals over contracted Cartesian Gaussians
/// (McMurchie-Davidson with Hermite Gaussians). Only s and p shells are
/// supported; anything higher raises UnsupportedFeature.
IntegralTensors compute_integrals(const Geometry& geometry, const BasisSet& basis);

}  // namespace conint::chem
