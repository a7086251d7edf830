#include "conint/chem/active_space.hpp"

#include <cmath>
#include <string>

#include "conint/error.hpp"

namespace conint::chem {

void ActiveSpaceHamiltonian::validate(double tol) const {
  if (n_orbitals <= 0) throw InvalidArgument("active space needs at least one orbital");
  if (n_electrons <= 0 || n_electrons > 2 * n_orbitals) {
    throw InvalidArgument("active electron count " + std::to_string(n_electrons) +
                          " does not fit in " + std::to_string(n_orbitals) + " orbitals");
  }
  if ((n_electrons + ms2) % 2 != 0 || n_alpha() < 0 || n_beta() < 0 ||
      n_alpha() > n_orbitals || n_beta() > n_orbitals) {
    throw InvalidArgument("inconsistent MS2 = " + std::to_string(ms2));
  }
  if (h.rows() != n_orbitals || h.cols() != n_orbitals || eri.dim() != n_orbitals) {
    throw DimensionMismatch("integral shapes do not match the orbital count");
  }
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw InvalidArgument("one-body integrals are not symmetric");
  }
  if (eri.symmetry_error() > tol) throw InvalidArgument("two-body integrals lack 8-fold symmetry");
}

EriTensor transform_eri(const EriTensor& ao, const Eigen::MatrixXd& c) {
  const int n = ao.dim();
  const int m = static_cast<int>(c.cols());
  if (c.rows() != n) throw DimensionMismatch("coefficient rows must equal the AO count");
  // Step-wise: (mu nu|la si) -> (p nu|la si) -> (p q|la si) -> (p q|r si) -> (p q|r s).
  std::vector<double> a(static_cast<std::size_t>(m) * n * n * n, 0.0);
  auto ia = [&](int p, int nu, int la, int si) {
    return ((static_cast<std::size_t>(p) * n + nu) * n + la) * n + si;
  };
  for (int p = 0; p < m; ++p)
    for (int mu = 0; mu < n; ++mu) {
      const double cp = c(mu, p);
      if (cp == 0.0) continue;
      for (int nu = 0; nu < n; ++nu)
        for (int la = 0; la < n; ++la)
          for (int si = 0; si < n; ++si) a[ia(p, nu, la, si)] += cp * ao(mu, nu, la, si);
    }
  std::vector<double> b(static_cast<std::size_t>(m) * m * n * n, 0.0);
  auto ib = [&](int p, int q, int la, int si) {
    return ((static_cast<std::size_t>(p) * m + q) * n + la) * n + si;
  };
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int nu = 0; nu < n; ++nu) {
        const double cq = c(nu, q);
        for (int la = 0; la < n; ++la)
          for (int si = 0; si < n; ++si) b[ib(p, q, la, si)] += cq * a[ia(p, nu, la, si)];
      }
  std::vector<double> cc(static_cast<std::size_t>(m) * m * m * n, 0.0);
  auto ic = [&](int p, int q, int r, int si) {
    return ((static_cast<std::size_t>(p) * m + q) * m + r) * n + si;
  };
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int la = 0; la < n; ++la) {
          const double cr = c(la, r);
          for (int si = 0; si < n; ++si) cc[ic(p, q, r, si)] += cr * b[ib(p, q, la, si)];
        }
  EriTensor out(m);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) {
          double v = 0.0;
          for (int si = 0; si < n; ++si) v += c(si, s) * cc[ic(p, q, r, si)];
          out(p, q, r, s) = v;
        }
  // Symmetrise away round-off so downstream symmetry checks hold tightly.
  for (int p = 0; p < m; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s <= r; ++s) {
          if (r * (r + 1) / 2 + s > p * (p + 1) / 2 + q) continue;
          const double v = (out(p, q, r, s) + out(q, p, r, s) + out(p, q, s, r) +
                            out(q, p, s, r) + out(r, s, p, q) + out(s, r, p, q) +
                            out(r, s, q, p) + out(s, r, q, p)) / 8.0;
          out.set_symmetric(p, q, r, s, v);
        }
  return out;
}

ActiveSpaceHamiltonian select_active_space(const SCFResult& scf, const IntegralTensors& t,
                                           int n_e, int n_o) {
  const int n_total = scf.n_electrons;
  const int n_mo = static_cast<int>(scf.coefficients.cols());
  if (n_e <= 0 || n_e > n_total) {
    throw InvalidArgument("active electron count must lie in (0, " + std::to_string(n_total) + "]");
  }
  if ((n_total - n_e) % 2 != 0) throw InvalidArgument("frozen electron count must be even");
  if (n_e > 2 * n_o) throw InvalidArgument("active electrons exceed active orbital capacity");
  const int n_frozen = (n_total - n_e) / 2;
  if (n_o <= 0 || n_frozen + n_o > n_mo) {
    throw InvalidArgument("active space (" + std::to_string(n_e) + "," + std::to_string(n_o) +
                          ") does not fit in " + std::to_string(n_mo) + " orbitals");
  }
  const Eigen::MatrixXd hcore = t.core_hamiltonian();
  const Eigen::MatrixXd cf = scf.coefficients.leftCols(n_frozen);
  const Eigen::MatrixXd ca = scf.coefficients.middleCols(n_frozen, n_o);

  ActiveSpaceHamiltonian out;
  out.n_electrons = n_e;
  out.n_orbitals = n_o;
  Eigen::MatrixXd fc = hcore;
  out.e_core = t.nuclear_repulsion;
  if (n_frozen > 0) {
    const Eigen::MatrixXd dc = 2.0 * cf * cf.transpose();
    Eigen::MatrixXd j, k;
    coulomb_exchange(t.eri, dc, j, k);
    fc = hcore + j - 0.5 * k;
    out.e_core += 0.5 * dc.cwiseProduct(hcore + fc).sum();
  }
  out.h = ca.transpose() * fc * ca;
  out.h = 0.5 * (out.h + out.h.transpose()).eval();
  out.eri = transform_eri(t.eri, ca);
  return out;
}

ActiveSpaceHamiltonian full_space_hamiltonian(const SCFResult& scf, const IntegralTensors& t) {
  return select_active_space(scf, t, scf.n_electrons, static_cast<int>(scf.coefficients.cols()));
}

}  // namespace conint::chem
