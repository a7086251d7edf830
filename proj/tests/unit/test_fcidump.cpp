#include <doctest.h>

#include <sstream>

#include "conint/chem/fcidump.hpp"
#include "conint/error.hpp"
#include "conint/vqa/vqa.hpp"

using namespace conint;
using namespace conint::chem;

TEST_CASE("FCIDUMP from an independent program gives its FCI energy") {
  const auto h = read_fcidump(std::string(CONINT_TEST_DATA) + "/h2_sto3g.fcidump");
  CHECK(h.n_orbitals == 2);
  CHECK(h.n_electrons == 2);
  CHECK(h.ms2 == 0);
  const double e = vqa::sa_casci(h, {1.0}, 1).energies[0];
  CHECK(std::abs(e - (-1.137275943617)) < 1e-9);
  CHECK(std::abs(vqa::exact_spectrum(h, 1)[0] - e) < 1e-9);
}

TEST_CASE("FCIDUMP round trip is exact") {
  const auto h = read_fcidump(std::string(CONINT_TEST_DATA) + "/h2_sto3g.fcidump");
  std::stringstream ss;
  write_fcidump(h, ss);
  const auto back = read_fcidump(ss);
  CHECK(back.e_core == h.e_core);
  CHECK((back.h - h.h).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.eri.data() == h.eri.data());
}

TEST_CASE("malformed FCIDUMP input is rejected") {
  const std::string header = " &FCI NORB=2,NELEC=2,MS2=0,\n ORBSYM=1,1,\n ISYM=1,\n &END\n";
  {
    std::istringstream in(header + " 0.5 1 1 3 3\n");  // orbital index out of range
    CHECK_THROWS_AS(read_fcidump(in), ParseError);
  }
  {
    std::istringstream in(header + " 0.5 1 1 1 1\n 0.6 1 1 1 1\n");  // conflicting duplicate
    CHECK_THROWS_AS(read_fcidump(in), ParseError);
  }
  {
    std::istringstream in(" &FCI NELEC=2,\n &END\n");  // NORB missing
    CHECK_THROWS_AS(read_fcidump(in), ParseError);
  }
  {
    std::istringstream in(header + " abc 1 1 1 1\n");
    CHECK_THROWS_AS(read_fcidump(in), ParseError);
  }
}
