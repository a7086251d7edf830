#include "conint/sim/eigensolver.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>
#include <bit>
#include <cmath>
#include <sstream>

#include "conint/error.hpp"
#include "conint/sim/simulator.hpp"

namespace conint::sim {

std::vector<std::uint64_t> sector_basis(int n, const std::vector<SectorConstraint>& sector) {
  for (const auto& c : sector) {
    if (c.op.n_qubits() != n) throw DimensionMismatch("sector operator width differs");
    if (!c.op.is_diagonal()) throw StructuralError("sector operators must be diagonal");
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 0; k < dim; ++k) {
    bool ok = true;
    for (const auto& c : sector) {
      double v = 0.0;
      for (const auto& [p, coeff] : c.op.terms())
        v += ((std::popcount(k & p.z) & 1) ? -1.0 : 1.0) * coeff.real();
      if (std::abs(v - c.value) > 1e-9) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(k);
  }
  return out;
}

namespace {

using SpMat = Eigen::SparseMatrix<cplx, Eigen::RowMajor, std::int64_t>;
using CVec = Eigen::VectorXcd;

SpMat sector_matrix(const fq::PauliOperator& op, const std::vector<std::uint64_t>& basis) {
  const std::uint64_t full = std::uint64_t{1} << op.n_qubits();
  std::vector<std::int64_t> where(full, -1);
  for (std::size_t i = 0; i < basis.size(); ++i) where[basis[i]] = static_cast<std::int64_t>(i);
  std::vector<Eigen::Triplet<cplx, std::int64_t>> trip;
  for (const auto& [p, c] : op.terms()) {
    const cplx base = c * fq::i_power(std::popcount(p.x & p.z));
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const std::uint64_t k = basis[col];
      const std::int64_t row = where[k ^ p.x];
      if (row < 0) {
        continue;  // leaves the sector; vanishes for symmetry-conserving operators
      }
      trip.emplace_back(row, static_cast<std::int64_t>(col),
                        (std::popcount(k & p.z) & 1) ? -base : base);
    }
  }
  SpMat m(static_cast<std::int64_t>(basis.size()), static_cast<std::int64_t>(basis.size()));
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();
  return m;
}

}  // namespace

EigenResult lowest_eigenpairs(const fq::PauliOperator& op, int k,
                              const std::vector<SectorConstraint>& sector,
                              const EigenOptions& options) {
  if (op.max_imag() > 1e-10) throw InvalidArgument("operator is not Hermitian");
  if (k < 1) throw InvalidArgument("k must be >= 1");
  const int n = op.n_qubits();
  EigenResult out;
  LanczosResult<cplx> lz;
  std::vector<std::uint64_t> basis;
  Eigen::MatrixXcd dense_for_check;
  const bool check = n <= options.dense_check_qubits;

  if (sector.empty()) {
    const std::size_t dim = std::size_t{1} << n;
    out.sector_dim = dim;
    std::vector<cplx> in(dim), res(dim);
    auto apply = [&](const CVec& x, CVec& y) {
      for (std::size_t i = 0; i < dim; ++i) in[i] = x[static_cast<Eigen::Index>(i)];
      apply_pauli_operator(op, in, res);
      y.resize(static_cast<Eigen::Index>(dim));
      for (std::size_t i = 0; i < dim; ++i) y[static_cast<Eigen::Index>(i)] = res[i];
    };
    lz = lanczos_lowest<cplx>(apply, static_cast<Eigen::Index>(dim), k, options.lanczos);
    if (check) dense_for_check = op.to_dense();
  } else {
    basis = sector_basis(n, sector);
    out.sector_dim = basis.size();
    if (basis.empty()) throw InvalidArgument("the requested sector is empty");
    if (static_cast<int>(basis.size()) < k) {
      throw InvalidArgument("sector of dimension " + std::to_string(basis.size()) +
                            " holds fewer than " + std::to_string(k) + " states");
    }
    const SpMat m = sector_matrix(op, basis);
    auto apply = [&](const CVec& x, CVec& y) { y = m * x; };
    lz = lanczos_lowest<cplx>(apply, static_cast<Eigen::Index>(basis.size()), k, options.lanczos);
    if (check) dense_for_check = Eigen::MatrixXcd(m);
  }

  if (check) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_for_check, Eigen::EigenvaluesOnly);
    for (int i = 0; i < k; ++i) {
      const double d = es.eigenvalues()[i];
      if (std::abs(d - lz.values[static_cast<std::size_t>(i)]) > options.dense_check_tol) {
        std::ostringstream msg;
        msg.precision(15);
        msg << "Lanczos eigenvalue " << i << " = " << lz.values[static_cast<std::size_t>(i)]
            << " disagrees with dense diagonalisation " << d;
        throw ConvergenceError(msg.str(), lz.values[static_cast<std::size_t>(i)], 0);
      }
    }
  }
  out.values = lz.values;
  if (options.want_vectors) {
    const std::size_t full = std::size_t{1} << n;
    for (const auto& v : lz.vectors) {
      std::vector<cplx> amp(full, cplx{});
      if (basis.empty()) {
        for (std::size_t i = 0; i < full; ++i) amp[i] = v[static_cast<Eigen::Index>(i)];
      } else {
        for (std::size_t i = 0; i < basis.size(); ++i) amp[basis[i]] = v[static_cast<Eigen::Index>(i)];
      }
      out.vectors.emplace_back(n, std::move(amp));
    }
  }
  return out;
}

std::vector<double> lowest_eigenvalues(const fq::PauliOperator& op, int k,
                                       const std::vector<SectorConstraint>& sector,
                                       const EigenOptions& options) {
  return lowest_eigenpairs(op, k, sector, options).values;
}

}  // namespace conint::sim
