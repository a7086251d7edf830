#include <doctest.h>

#include "conint/chem/active_space.hpp"
#include "conint/chem/basis.hpp"
#include "conint/chem/integrals.hpp"
#include "conint/chem/scf.hpp"
#include "conint/error.hpp"
#include "conint/scan/scan.hpp"
#include "conint/vqa/vqa.hpp"
#include "fock_space.hpp"

using namespace conint;
using namespace conint::vqa;

namespace {

struct Mol {
  chem::IntegralTensors t;
  chem::SCFResult scf;
};

Mol water(const char* basis) {
  const auto g = chem::build_h2o_scaled(1.3);
  Mol m;
  m.t = chem::compute_integrals(g, chem::BasisSet(g, chem::BasisLibrary::builtin(basis)));
  m.scf = chem::run_rhf(m.t, 10);
  return m;
}

std::vector<double> oracle_roots(const chem::ActiveSpaceHamiltonian& h, int k) {
  const auto terms = oracle::molecular_terms(h.n_orbitals, h.h, h.eri);
  const auto dets = oracle::sector_dets(h.n_orbitals, h.n_alpha(), h.n_beta());
  auto ev = oracle::sorted_eigenvalues(oracle::matrix(terms, dets));
  ev.resize(static_cast<std::size_t>(k));
  for (auto& e : ev) e += h.e_core;
  return ev;
}

}  // namespace

TEST_CASE("Slater-Condon CI matches operator application") {
  const auto m = water("sto-3g");
  for (auto [ne, no] : {std::pair{4, 3}, std::pair{6, 5}, std::pair{8, 6}}) {
    const auto h = chem::select_active_space(m.scf, m.t, ne, no);
    const auto ci = sa_casci(h, {0.25, 0.25, 0.25, 0.25}, 4);
    const auto ref = oracle_roots(h, 4);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(ci.energies[i] - ref[i]) < 1e-9);
    double avg = 0.0;
    for (double e : ci.energies) avg += 0.25 * e;
    CHECK(ci.averaged_energy == doctest::Approx(avg).epsilon(1e-14));
  }
}

TEST_CASE("high-spin sector") {
  const auto m = water("sto-3g");
  auto h = chem::select_active_space(m.scf, m.t, 4, 3);
  h.ms2 = 2;  // 3 alpha, 1 beta
  const auto ci = sa_casci(h, {1.0}, 1);
  CHECK(ci.n_determinants == 3);
  CHECK(std::abs(ci.energies[0] - oracle_roots(h, 1)[0]) < 1e-9);
}

TEST_CASE("large determinant spaces use the iterative solver and agree with sector Lanczos") {
  const auto m = water("6-31g");
  const auto h = chem::select_active_space(m.scf, m.t, 8, 7);
  const auto ci = sa_casci(h, {0.5, 0.5}, 2);
  CHECK(ci.n_determinants == 1225);
  const auto ex = exact_spectrum(h, 2);
  CHECK(std::abs(ci.energies[0] - ex[0]) < 1e-8);
  CHECK(std::abs(ci.energies[1] - ex[1]) < 1e-8);
}

TEST_CASE("weights and size limits are validated") {
  const auto m = water("sto-3g");
  const auto h = chem::select_active_space(m.scf, m.t, 4, 3);
  CHECK_THROWS_AS(sa_casci(h, {0.5, 0.6}, 2), InvalidArgument);
  CHECK_THROWS_AS(sa_casci(h, {1.5, -0.5}, 2), InvalidArgument);
  CHECK_THROWS_AS(sa_casci(h, {1.0}, 2), InvalidArgument);
  CHECK_THROWS_AS(sa_casci(h, {0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1}, 10), InvalidArgument);

  chem::ActiveSpaceHamiltonian big;
  big.n_orbitals = 20;
  big.n_electrons = 16;
  big.h = Eigen::MatrixXd::Zero(20, 20);
  big.eri = chem::EriTensor(20);
  CHECK_THROWS_AS(sa_casci(big, {1.0}, 1), SizeLimitError);
}
