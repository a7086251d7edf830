#include <doctest.h>

#include "conint/chem/active_space.hpp"
#include "conint/chem/basis.hpp"
#include "conint/chem/integrals.hpp"
#include "conint/chem/scf.hpp"
#include "conint/error.hpp"
#include "conint/vqa/vqa.hpp"
#include "fock_space.hpp"

using namespace conint;
using namespace conint::chem;

namespace {

struct Water {
  IntegralTensors t;
  SCFResult scf;
};

const Water& water() {
  static const Water w = [] {
    const auto g = build_h2o_scaled(1.0);
    Water x;
    x.t = compute_integrals(g, BasisSet(g, BasisLibrary::builtin("sto-3g")));
    x.scf = run_rhf(x.t, 10);
    return x;
  }();
  return w;
}

}  // namespace

TEST_CASE("frozen-core folding reproduces CI with the core held doubly occupied") {
  const auto& w = water();
  const auto full = full_space_hamiltonian(w.scf, w.t);
  const int n = full.n_orbitals;  // 7
  REQUIRE(n == 7);
  // (4,3): orbitals 0-2 frozen, 3-5 active, 6 deleted.
  const auto terms = oracle::molecular_terms(n, full.h, full.eri);
  const auto dets = oracle::sector_dets(n, 5, 5, 0b0000111, 0b1000000);
  REQUIRE(dets.size() == 9);
  const auto m = oracle::matrix(terms, dets);
  const auto ev = oracle::sorted_eigenvalues(m);

  const auto act = select_active_space(w.scf, w.t, 4, 3);
  const auto ci = vqa::sa_casci(act, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 3);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(ci.energies[i] - (ev[i] + full.e_core)) < 1e-9);
  // Reference values from an independent CASCI implementation.
  CHECK(std::abs(ci.energies[0] - (-74.96753241)) < 1e-7);
  CHECK(std::abs(ci.energies[1] - (-74.56338931)) < 1e-7);
  CHECK(std::abs(ci.energies[2] - (-74.4853207)) < 1e-7);
}

TEST_CASE("enlarging the active space never raises the CI energy") {
  const auto& w = water();
  const double e43 = vqa::sa_casci(select_active_space(w.scf, w.t, 4, 3), {1.0}, 1).energies[0];
  const double e65 = vqa::sa_casci(select_active_space(w.scf, w.t, 6, 5), {1.0}, 1).energies[0];
  const double e_full = vqa::sa_casci(full_space_hamiltonian(w.scf, w.t), {1.0}, 1).energies[0];
  CHECK(e65 <= e43 + 1e-12);
  CHECK(e_full <= e65 + 1e-12);
}

TEST_CASE("active Hamiltonian invariants") {
  const auto& w = water();
  const auto h = select_active_space(w.scf, w.t, 4, 3);
  CHECK(h.n_orbitals == 3);
  CHECK(h.n_electrons == 4);
  CHECK((h.h - h.h.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(h.eri.symmetry_error() < 1e-10);
  CHECK_NOTHROW(h.validate());
  // The HF determinant energy of the active problem is the RHF energy.
  double e = h.e_core;
  for (int i = 0; i < 2; ++i) {
    e += 2.0 * h.h(i, i);
    for (int j = 0; j < 2; ++j) e += 2.0 * h.eri(i, i, j, j) - h.eri(i, j, j, i);
  }
  CHECK(std::abs(e - w.scf.energy) < 1e-9);
}

TEST_CASE("invalid active spaces are rejected") {
  const auto& w = water();
  CHECK_THROWS_AS(select_active_space(w.scf, w.t, 3, 3), InvalidArgument);   // odd count
  CHECK_THROWS_AS(select_active_space(w.scf, w.t, 12, 7), InvalidArgument);  // more than present
  CHECK_THROWS_AS(select_active_space(w.scf, w.t, 4, 8), InvalidArgument);   // too many orbitals
  CHECK_THROWS_AS(select_active_space(w.scf, w.t, 8, 3), InvalidArgument);   // overfilled
}
