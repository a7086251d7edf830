#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <sstream>
#include <type_traits>
#include <vector>

#include "conint/error.hpp"

namespace conint::sim {

struct LanczosOptions {
  double tolerance = 1e-10;  // on Ritz residual norms
  int max_iterations = 500;  // Krylov dimension per sweep
  std::uint64_t seed = 20240607;
  int check_every = 4;
};

template <class Scalar>
struct LanczosResult {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  std::vector<double> values;
  std::vector<Vector> vectors;
  std::vector<double> residuals;
  int matvecs = 0;
};

namespace detail {

template <class Scalar>
Scalar random_scalar(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  if constexpr (std::is_same_v<Scalar, double>) {
    return g(rng);
  } else {
    const double re = g(rng);
    return Scalar(re, g(rng));
  }
}

}  // namespace detail

/// k lowest eigenpairs of a Hermitian operator given as a matrix-vector
/// product `apply(const Vector& in, Vector& out)`.
///
/// Eigenpairs are found one at a time: each sweep runs Lanczos with full
/// reorthogonalisation in the orthogonal complement of the already locked
/// vectors, converges its lowest Ritz pair and locks it. Working in the
/// complement means degenerate eigenvalues are found with their full
/// multiplicity, which single-vector Lanczos cannot do on its own.
template <class Scalar, class MatVec>
LanczosResult<Scalar> lanczos_lowest(MatVec&& apply, Eigen::Index dim, int k,
                                     const LanczosOptions& opt = {}) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (k < 1) throw InvalidArgument("requested eigenvalue count must be >= 1");
  if (k > dim) {
    throw InvalidArgument("requested " + std::to_string(k) + " eigenvalues of a " +
                          std::to_string(dim) + "-dimensional operator");
  }
  LanczosResult<Scalar> res;
  std::mt19937_64 rng(opt.seed);
  std::vector<Vector> locked;

  auto project_out = [&](Vector& v) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : locked) v -= u * u.dot(v);
  };
  auto op = [&](const Vector& in, Vector& out) {
    apply(in, out);
    ++res.matvecs;
    project_out(out);
  };

  for (int target = 0; target < k; ++target) {
    const Eigen::Index remaining = dim - static_cast<Eigen::Index>(locked.size());
    const int m_max = static_cast<int>(std::min<Eigen::Index>(remaining, opt.max_iterations));
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = detail::random_scalar<Scalar>(rng);
    project_out(v);
    v.normalize();

    Matrix basis(dim, m_max);
    std::vector<double> alpha, beta;
    Vector w(dim);
    bool done = false;
    double best_value = 0.0, best_res = INFINITY;
    Vector best_vec;
    int m = 0;
    basis.col(0) = v;
    while (!done) {
      op(basis.col(m), w);
      const double a = std::real(basis.col(m).dot(w));
      alpha.push_back(a);
      // Full reorthogonalisation, twice, against the Krylov basis and the
      // locked vectors. Without the latter, tiny locked components of the
      // basis get amplified by |alpha| every step.
      for (int pass = 0; pass < 2; ++pass) {
        const Vector coeffs = basis.leftCols(m + 1).adjoint() * w;
        w -= basis.leftCols(m + 1) * coeffs;
        for (const auto& u : locked) w -= u * u.dot(w);
      }
      const double b = w.norm();
      ++m;
      const bool exhausted = m == m_max || b < 1e-13;
      if (exhausted || m % opt.check_every == 0) {
        Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
        Eigen::VectorXd off = m > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1))
                                    : Eigen::VectorXd();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        if (m == 1) {
          Eigen::MatrixXd t(1, 1);
          t(0, 0) = diag[0];
          tri.compute(t);
        } else {
          tri.computeFromTridiagonal(diag, off);
        }
        const double theta = tri.eigenvalues()[0];
        const double ritz_res = exhausted && b < 1e-13 ? 0.0 : b * std::abs(tri.eigenvectors()(m - 1, 0));
        if (ritz_res < opt.tolerance || exhausted) {
          Vector y = basis.leftCols(m) * tri.eigenvectors().col(0).template cast<Scalar>();
          project_out(y);
          y.normalize();
          Vector ay(dim);
          apply(y, ay);
          ++res.matvecs;
          const double true_res = (ay - theta * y).norm();
          if (true_res < best_res) {
            best_res = true_res;
            best_value = theta;
            best_vec = y;
          }
          if (ritz_res < opt.tolerance || b < 1e-13 || m == remaining) {
            done = true;
          } else {
            std::ostringstream msg;
            msg << "Lanczos did not converge eigenvalue " << target << " within " << m
                << " iterations; Ritz residual " << ritz_res << ", true residual " << true_res;
            for (std::size_t i = 0; i < res.residuals.size(); ++i)
              msg << "; locked[" << i << "] residual " << res.residuals[i];
            throw ConvergenceError(msg.str(), theta, m);
          }
        }
      }
      if (!done) {
        beta.push_back(b);
        basis.col(m) = w / b;
      }
    }
    res.values.push_back(best_value);
    res.vectors.push_back(best_vec);
    res.residuals.push_back(best_res);
    locked.push_back(best_vec);
  }
  // Sweeps run in shrinking complements, so values arrive ascending up to
  // the tolerance; enforce the order exactly.
  std::vector<std::size_t> order(res.values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return res.values[a] < res.values[b]; });
  LanczosResult<Scalar> sorted;
  sorted.matvecs = res.matvecs;
  for (auto i : order) {
    sorted.values.push_back(res.values[i]);
    sorted.vectors.push_back(std::move(res.vectors[i]));
    sorted.residuals.push_back(res.residuals[i]);
  }
  return sorted;
}

}  // namespace conint::sim
