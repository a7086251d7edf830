#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cstdio>
#include <random>

#include "conint/error.hpp"
#include "conint/sim/circuit.hpp"
#include "conint/sim/eigensolver.hpp"
#include "conint/sim/simulator.hpp"
#include "conint/sim/statevector.hpp"

using namespace conint;
using namespace conint::sim;
using fq::PauliOperator;
using fq::PauliString;

namespace {

Statevector random_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> a(1ULL << n);
  for (auto& x : a) x = {g(rng), g(rng)};
  Statevector s(n, a);
  s.normalize();
  return s;
}

PauliOperator random_operator(int n, int terms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  PauliOperator op(n);
  for (int t = 0; t < terms; ++t) {
    std::string s(static_cast<std::size_t>(n), 'I');
    for (auto& ch : s) ch = "IXYZ"[pick(rng)];
    op += PauliOperator::from_string(s, c(rng));
  }
  return op.simplify();
}

double distance(const Statevector& a, const Statevector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Eigen::VectorXcd as_vector(const Statevector& s) {
  return Eigen::Map<const Eigen::VectorXcd>(s.amplitudes().data(), static_cast<Eigen::Index>(s.dim()));
}

}  // namespace

TEST_CASE("random circuits preserve the norm") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed);
    const int n = 7;
    Circuit c(n);
    std::vector<double> params;
    std::uniform_int_distribution<int> kind(0, 5), q(0, n - 1);
    std::uniform_real_distribution<double> ang(-7.0, 7.0);
    for (int g = 0; g < 1000; ++g) {
      const int a = q(rng);
      const int b = (a + 1 + q(rng) % (n - 1)) % n;
      const int k = kind(rng);
      if (k == 0) c.x(a);
      else if (k == 1) c.cx(a, b);
      else if (k == 2) c.cz(a, b);
      else {
        const int p = c.add_parameter("p" + std::to_string(g));
        params.push_back(ang(rng));
        c.rotation(k == 3 ? GateKind::RX : k == 4 ? GateKind::RY : GateKind::RZ, a, p);
      }
    }
    const auto s = apply_circuit(random_state(n, seed), c, params);
    CHECK(std::abs(1.0 - s.norm_squared()) < 1e-9);
  }
}

TEST_CASE("gate algebra") {
  const auto s = random_state(3, 5);
  Circuit cxcx(3);
  cxcx.cx(0, 2);
  cxcx.cx(0, 2);
  CHECK(distance(apply_circuit(s, cxcx, {}), s) < 1e-12);

  Circuit two(3), one(3);
  two.rz(1, two.add_parameter("a"));
  two.rz(1, two.add_parameter("b"));
  one.rz(1, one.add_parameter("ab"));
  CHECK(distance(apply_circuit(s, two, {0.37, -1.21}), apply_circuit(s, one, {0.37 - 1.21})) < 1e-12);
}

TEST_CASE("gates match their matrices") {
  // RX(t)|0> = cos(t/2)|0> - i sin(t/2)|1>
  Circuit c(1);
  c.rx(0, c.add_parameter("t"));
  const auto s = apply_circuit(Statevector(1), c, {0.8});
  CHECK(std::abs(s[0] - cplx(std::cos(0.4), 0)) < 1e-15);
  CHECK(std::abs(s[1] - cplx(0, -std::sin(0.4))) < 1e-15);
  // Qubit q is bit q of the index; CX flips the target when the control is set.
  Circuit x(3);
  x.x(1);
  x.cx(1, 2);
  const auto b = apply_circuit(Statevector(3), x, {});
  CHECK(std::abs(b[0b110] - 1.0) < 1e-15);
  // RY on |0> and the CZ phase
  Circuit y(2);
  y.ry(0, y.add_parameter("t"));
  y.x(1);
  y.cz(0, 1);
  const auto z = apply_circuit(Statevector(2), y, {1.0});
  CHECK(std::abs(z[0b10] - cplx(std::cos(0.5), 0)) < 1e-15);
  CHECK(std::abs(z[0b11] - cplx(-std::sin(0.5), 0)) < 1e-15);
}

TEST_CASE("Pauli expectations match dense algebra") {
  const auto s = random_state(4, 9);
  const auto op = random_operator(4, 15, 3);
  const Eigen::VectorXcd v = as_vector(s);
  const cplx ref = v.dot(op.to_dense() * v);
  CHECK(std::abs(expectation_exact(s, op) - ref.real()) < 1e-12);
  for (const auto& [p, c] : op.terms()) {
    const cplx one = v.dot(PauliOperator::from_string(p.to_string(4)).to_dense() * v);
    CHECK(std::abs(pauli_expectation(s, p) - one) < 1e-12);
  }
  // Non-Hermitian input is refused.
  auto bad = op;
  bad.add_term(PauliString::parse("XIII"), cplx(0, 0.5));
  CHECK_THROWS_AS(expectation_exact(s, bad), InvalidArgument);
}

TEST_CASE("Lanczos agrees with dense diagonalisation") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto op = random_operator(6, 30, 100 + seed);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.to_dense());
    EigenOptions o;
    o.dense_check_qubits = 0;  // compare against the test's own dense solve only
    const auto got = lowest_eigenvalues(op, 64, {}, o);
    REQUIRE(got.size() == 64);
    double worst = 0.0;
    for (int i = 0; i < 64; ++i) worst = std::max(worst, std::abs(got[i] - es.eigenvalues()[i]));
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("sector-restricted eigenvalues") {
  // H = Z0 + 0.5 X0 X1 + 0.3 Z1 ; sector Z0 Z1 = +1 (a symmetry of H).
  auto h = PauliOperator::from_string("ZI", 1.0) + PauliOperator::from_string("XX", 0.5) +
           PauliOperator::from_string("IZ", 0.3);
  const std::vector<SectorConstraint> sec{{PauliOperator::from_string("ZZ"), 1.0}};
  CHECK(sector_basis(2, sec).size() == 2);
  // Block on {|00>, |11>}: [[1.3, 0.5], [0.5, -1.3]]
  const auto v = lowest_eigenvalues(h, 2, sec);
  const double e = std::sqrt(1.3 * 1.3 + 0.25);
  CHECK(v[0] == doctest::Approx(-e).epsilon(1e-12));
  CHECK(v[1] == doctest::Approx(e).epsilon(1e-12));
  CHECK_THROWS_AS(sector_basis(2, {{PauliOperator::from_string("XI"), 1.0}}), StructuralError);
}

TEST_CASE("sampled expectation is unbiased and seeded") {
  const auto s = random_state(3, 21);
  const auto op = random_operator(3, 6, 8);
  const double exact = expectation_exact(s, op);
  const int n = 300;
  double mean = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = expectation_sampled(s, op, 500, static_cast<std::uint64_t>(i + 1));
    mean += e;
    sq += e * e;
  }
  mean /= n;
  const double sd = std::sqrt((sq / n - mean * mean) * n / (n - 1));
  CHECK(std::abs(mean - exact) < 3.0 * sd / std::sqrt(n));
  CHECK(expectation_sampled(s, op, 500, 77ULL) == expectation_sampled(s, op, 500, 77ULL));
  CHECK_THROWS_AS(expectation_sampled(s, op, 0, 1ULL), InvalidArgument);
}

TEST_CASE("zero-probability noise is bit-exact, non-zero noise is seeded") {
  Circuit c(3);
  for (int q = 0; q < 3; ++q) c.ry(q, c.add_parameter("y" + std::to_string(q)));
  c.cx(0, 1);
  c.cx(1, 2);
  const std::vector<double> th{0.3, -0.7, 1.9};
  const auto clean = apply_circuit(Statevector(3), c, th);
  NoiseModel off;
  off.seed = 5;
  const auto same = apply_circuit(Statevector(3), c, th, &off);
  CHECK(same.amplitudes() == clean.amplitudes());

  NoiseModel on;
  on.p1 = 0.3;
  on.p2 = 0.3;
  on.seed = 11;
  const auto a = apply_circuit(Statevector(3), c, th, &on);
  const auto b = apply_circuit(Statevector(3), c, th, &on);
  CHECK(a.amplitudes() == b.amplitudes());
  CHECK(std::abs(a.norm_squared() - 1.0) < 1e-12);
  NoiseModel bad;
  bad.p1 = 1.5;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("statevector binary round trip") {
  const auto s = random_state(4, 3);
  const std::string path = "sv_roundtrip.bin";
  s.save_binary(path);
  const auto t = Statevector::load_binary(path);
  CHECK(t.n_qubits() == 4);
  CHECK(t.amplitudes() == s.amplitudes());
  std::remove(path.c_str());
}
