#include "conint/chem/scf.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "conint/error.hpp"

namespace conint::chem {

void coulomb_exchange(const EriTensor& eri, const Eigen::MatrixXd& d, Eigen::MatrixXd& j,
                      Eigen::MatrixXd& k) {
  const int n = eri.dim();
  j = Eigen::MatrixXd::Zero(n, n);
  k = Eigen::MatrixXd::Zero(n, n);
  for (int m = 0; m < n; ++m)
    for (int nu = 0; nu <= m; ++nu) {
      double jj = 0.0, kk = 0.0;
      for (int l = 0; l < n; ++l)
        for (int s = 0; s < n; ++s) {
          jj += d(l, s) * eri(m, nu, l, s);
          kk += d(l, s) * eri(m, l, nu, s);
        }
      j(m, nu) = j(nu, m) = jj;
      k(m, nu) = k(nu, m) = kk;
    }
}

SCFResult run_rhf(const IntegralTensors& t, int n_electrons, const SCFOptions& opt) {
  const int n = t.n_functions();
  if (n_electrons <= 0 || n_electrons % 2 != 0) {
    throw InvalidArgument("RHF needs a positive even electron count, got " +
                          std::to_string(n_electrons));
  }
  if (n_electrons > 2 * n) throw InvalidArgument("more electrons than basis functions can hold");
  const int n_occ = n_electrons / 2;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s_eig(t.overlap);
  if (s_eig.eigenvalues().minCoeff() <= 1e-10) {
    throw InvalidArgument("overlap matrix is numerically singular");
  }
  const Eigen::MatrixXd x = s_eig.eigenvectors() *
                            s_eig.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                            s_eig.eigenvectors().transpose();
  const Eigen::MatrixXd h = t.core_hamiltonian();

  auto diagonalize = [&](const Eigen::MatrixXd& f, Eigen::MatrixXd& c, Eigen::VectorXd& eps) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x.transpose() * f * x);
    c = x * es.eigenvectors();
    eps = es.eigenvalues();
  };
  auto density_from = [&](const Eigen::MatrixXd& c) -> Eigen::MatrixXd {
    const auto occ = c.leftCols(n_occ);
    return 2.0 * occ * occ.transpose();
  };
  auto fock_of = [&](const Eigen::MatrixXd& d) -> Eigen::MatrixXd {
    Eigen::MatrixXd j, k;
    coulomb_exchange(t.eri, d, j, k);
    return h + j - 0.5 * k;
  };
  auto energy_of = [&](const Eigen::MatrixXd& d, const Eigen::MatrixXd& f) {
    return t.nuclear_repulsion + 0.5 * d.cwiseProduct(h + f).sum();
  };

  SCFResult r;
  r.n_electrons = n_electrons;
  Eigen::MatrixXd d;
  if (opt.initial_density) {
    if (opt.initial_density->rows() != n || opt.initial_density->cols() != n) {
      throw DimensionMismatch("initial density has the wrong shape");
    }
    d = *opt.initial_density;
  } else {
    diagonalize(h, r.coefficients, r.orbital_energies);
    d = density_from(r.coefficients);
  }

  Eigen::MatrixXd f = fock_of(d);
  double e = energy_of(d, f);
  double e_old = e;
  bool diis = false;
  std::vector<Eigen::MatrixXd> fock_hist, err_hist;
  const Eigen::MatrixXd& s = t.overlap;
  for (int it = 1; it <= opt.max_iterations; ++it) {
    Eigen::MatrixXd f_use = f;
    if (diis) {
      // Orthogonal-basis commutator X^T (FDS - SDF) X as the error vector.
      fock_hist.push_back(f);
      err_hist.push_back(x.transpose() * (f * d * s - s * d * f) * x);
      if (static_cast<int>(fock_hist.size()) > opt.diis_space) {
        fock_hist.erase(fock_hist.begin());
        err_hist.erase(err_hist.begin());
      }
      const int m = static_cast<int>(fock_hist.size());
      if (m >= 2) {
        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m + 1, m + 1);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
        for (int i = 0; i < m; ++i)
          for (int j2 = 0; j2 < m; ++j2) b(i, j2) = err_hist[i].cwiseProduct(err_hist[j2]).sum();
        for (int i = 0; i < m; ++i) b(i, m) = b(m, i) = -1.0;
        rhs[m] = -1.0;
        const Eigen::VectorXd c = b.completeOrthogonalDecomposition().solve(rhs);
        f_use.setZero();
        for (int i = 0; i < m; ++i) f_use += c[i] * fock_hist[i];
      }
    }
    diagonalize(f_use, r.coefficients, r.orbital_energies);
    Eigen::MatrixXd d_new = density_from(r.coefficients);
    const double dd = (d_new - d).cwiseAbs().maxCoeff();
    if (it <= opt.damping_iterations) d_new = opt.damping * d + (1.0 - opt.damping) * d_new;
    Eigen::MatrixXd f_new = fock_of(d_new);
    const double e_new = energy_of(d_new, f_new);
    r.iterations = it;
    if (dd < opt.density_tol && std::abs(e_new - e) < opt.energy_tol) {
      r.converged = true;
      r.density = std::move(d_new);
      r.fock = std::move(f_new);
      r.energy = e_new;
      diagonalize(r.fock, r.coefficients, r.orbital_energies);
      return r;
    }
    if (opt.diis_fallback && !diis && it > opt.damping_iterations && e_new > e + 1e-12) diis = true;
    e_old = e;
    d = std::move(d_new);
    f = std::move(f_new);
    e = e_new;
  }
  (void)e_old;
  throw ConvergenceError("RHF did not converge in " + std::to_string(opt.max_iterations) +
                             " iterations",
                         e, opt.max_iterations);
}

}  // namespace conint::chem
