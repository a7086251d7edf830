#include <doctest.h>

#include <Eigen/Geometry>

#include "conint/chem/active_space.hpp"
#include "conint/chem/basis.hpp"
#include "conint/chem/integrals.hpp"
#include "conint/chem/scf.hpp"
#include "conint/error.hpp"
#include "conint/units.hpp"
#include "conint/vqa/vqa.hpp"
#include "h2_rhf.hpp"

using namespace conint;
using namespace conint::chem;

namespace {

IntegralTensors integrals(const Geometry& g, const char* basis) {
  return compute_integrals(g, BasisSet(g, BasisLibrary::builtin(basis)));
}

Geometry h2() {
  return Geometry({make_atom("H", {0, 0, 0}), make_atom("H", {0, 0, bohr_to_angstrom(1.4)})});
}

double fci(const SCFResult& scf, const IntegralTensors& t) {
  const auto h = full_space_hamiltonian(scf, t);
  return vqa::sa_casci(h, {1.0}, 1).energies[0];
}

}  // namespace

TEST_CASE("H2 RHF matches the symmetry-determined solution") {
  const auto t = integrals(h2(), "sto-3g");
  const auto r = run_rhf(t, 2);
  CHECK(r.converged);
  CHECK(std::abs(r.energy - oracle::h2_symmetric_rhf(t)) < 1e-8);
  // Independent program (pyscf, same geometry and basis).
  CHECK(std::abs(r.energy - (-1.116714325063)) < 1e-8);
}

TEST_CASE("RHF orbitals are S-orthonormal and energies sorted") {
  const auto g = build_h2o_scaled(1.0);
  for (const char* basis : {"sto-3g", "6-31g"}) {
    const auto t = integrals(g, basis);
    const auto r = run_rhf(t, g.n_electrons());
    REQUIRE(r.converged);
    const Eigen::MatrixXd ctsc = r.coefficients.transpose() * t.overlap * r.coefficients;
    CHECK((ctsc - Eigen::MatrixXd::Identity(ctsc.rows(), ctsc.cols())).cwiseAbs().maxCoeff() < 1e-8);
    for (int i = 1; i < r.orbital_energies.size(); ++i) {
      CHECK(r.orbital_energies[i] >= r.orbital_energies[i - 1]);
    }
  }
}

TEST_CASE("H2O RHF energies agree with an independent program") {
  const auto g = build_h2o_scaled(1.0);
  CHECK(std::abs(run_rhf(integrals(g, "sto-3g"), 10).energy - (-74.9631198616)) < 1e-7);
  CHECK(std::abs(run_rhf(integrals(g, "6-31g"), 10).energy - (-75.9839533261)) < 1e-7);
}

TEST_CASE("RHF energy is invariant under rigid rotation") {
  const auto g = build_h2o_scaled(1.2);
  const Eigen::Matrix3d rot =
      (Eigen::AngleAxisd(0.7, Eigen::Vector3d::UnitX()) * Eigen::AngleAxisd(-1.3, Eigen::Vector3d::UnitZ()))
          .toRotationMatrix();
  const auto g2 = g.rotated(rot);
  const double e1 = run_rhf(integrals(g, "6-31g"), 10).energy;
  const double e2 = run_rhf(integrals(g2, "6-31g"), 10).energy;
  CHECK(std::abs(e1 - e2) < 1e-8);
}

TEST_CASE("RHF lies above full CI") {
  const auto th = integrals(h2(), "sto-3g");
  const auto rh = run_rhf(th, 2);
  const double fh = fci(rh, th);
  CHECK(rh.energy > fh);
  CHECK(std::abs(fh - (-1.137275943617)) < 1e-8);

  const auto g = build_h2o_scaled(1.0);
  const auto tw = integrals(g, "sto-3g");
  const auto rw = run_rhf(tw, 10);
  const double fw = fci(rw, tw);
  CHECK(rw.energy > fw);
  CHECK(std::abs(fw - (-75.0127593131)) < 1e-7);
}

TEST_CASE("stretched water converges") {
  const auto g = build_h2o_scaled(2.0);
  const auto t = integrals(g, "sto-3g");
  const auto r = run_rhf(t, 10);
  CHECK(r.converged);
  CHECK(r.energy < -74.0);
}

TEST_CASE("SCF reports non-convergence") {
  const auto t = integrals(build_h2o_scaled(1.0), "sto-3g");
  SCFOptions o;
  o.max_iterations = 2;
  CHECK_THROWS_AS(run_rhf(t, 10, o), ConvergenceError);
}
