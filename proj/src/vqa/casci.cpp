#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "conint/error.hpp"
#include "conint/sim/lanczos.hpp"
#include "conint/vqa/vqa.hpp"

namespace conint::vqa {

namespace {

using Mask = std::uint64_t;

std::vector<Mask> strings(int n, int k) {
  std::vector<Mask> out;
  if (k == 0) return {0};
  Mask m = (Mask{1} << k) - 1;
  const Mask limit = Mask{1} << n;
  while (m < limit) {
    out.push_back(m);
    // next combination with the same popcount (Gosper's hack)
    const Mask c = m & (~m + 1);
    const Mask r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
  return out;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Spin-orbital determinants: bit p (< n) is alpha orbital p, bit n + p beta
// orbital p, matching the qubit mappings' mode order.
class CIBuilder {
 public:
  explicit CIBuilder(const chem::ActiveSpaceHamiltonian& h) : h_(h), n_(h.n_orbitals) {
    const auto sa = strings(n_, h.n_alpha());
    const auto sb = strings(n_, h.n_beta());
    for (Mask a : sa)
      for (Mask b : sb) dets_.push_back(a | (b << n_));
    for (std::size_t i = 0; i < dets_.size(); ++i) index_.emplace(dets_[i], i);
  }

  std::size_t size() const { return dets_.size(); }

  // (pq|rs) for spin orbitals; zero unless spins match pairwise.
  double chem(int p, int q, int r, int s) const {
    if (spin(p) != spin(q) || spin(r) != spin(s)) return 0.0;
    return h_.eri(p % n_, q % n_, r % n_, s % n_);
  }
  // <pq||rs> = (pr|qs) - (ps|qr)
  double anti(int p, int q, int r, int s) const { return chem(p, r, q, s) - chem(p, s, q, r); }
  double one(int p, int q) const { return spin(p) == spin(q) ? h_.h(p % n_, q % n_) : 0.0; }

  std::vector<Eigen::Triplet<double>> triplets() const {
    std::vector<Eigen::Triplet<double>> t;
    const int nm = 2 * n_;
    std::vector<int> occ, vir;
    for (std::size_t I = 0; I < dets_.size(); ++I) {
      const Mask d = dets_[I];
      occ.clear();
      vir.clear();
      for (int p = 0; p < nm; ++p) ((d >> p) & 1 ? occ : vir).push_back(p);

      double diag = h_.e_core;
      for (int i : occ) diag += one(i, i);
      for (int i : occ)
        for (int j : occ) diag += 0.5 * anti(i, j, i, j);
      t.emplace_back(static_cast<int>(I), static_cast<int>(I), diag);

      for (int i : occ)
        for (int a : vir) {
          if (spin(i) != spin(a)) continue;
          double sign = 1.0;
          Mask e = d;
          annihilate(e, i, sign);
          create(e, a, sign);
          double v = one(a, i);
          for (int j : occ)
            if (j != i) v += anti(a, j, i, j);
          push(t, I, e, sign * v);
        }

      for (std::size_t x = 0; x < occ.size(); ++x)
        for (std::size_t y = x + 1; y < occ.size(); ++y)
          for (std::size_t u = 0; u < vir.size(); ++u)
            for (std::size_t w = u + 1; w < vir.size(); ++w) {
              const int i = occ[x], j = occ[y], a = vir[u], b = vir[w];
              if (spin(i) + spin(j) != spin(a) + spin(b)) continue;
              const double v = anti(a, b, i, j);
              if (v == 0.0) continue;
              // a+_a a+_b a_j a_i |D>
              double sign = 1.0;
              Mask e = d;
              annihilate(e, i, sign);
              annihilate(e, j, sign);
              create(e, b, sign);
              create(e, a, sign);
              push(t, I, e, sign * v);
            }
    }
    return t;
  }

 private:
  int spin(int p) const { return p >= n_ ? 1 : 0; }

  static void annihilate(Mask& m, int p, double& sign) {
    if (std::popcount(m & ((Mask{1} << p) - 1)) & 1) sign = -sign;
    m &= ~(Mask{1} << p);
  }
  static void create(Mask& m, int p, double& sign) {
    if (std::popcount(m & ((Mask{1} << p) - 1)) & 1) sign = -sign;
    m |= Mask{1} << p;
  }
  void push(std::vector<Eigen::Triplet<double>>& t, std::size_t row, Mask target, double v) const {
    if (v == 0.0) return;
    const auto it = index_.find(target);
    if (it == index_.end()) throw StructuralError("CI excitation left the determinant space");
    t.emplace_back(static_cast<int>(row), static_cast<int>(it->second), v);
  }

  const chem::ActiveSpaceHamiltonian& h_;
  int n_;
  std::vector<Mask> dets_;
  std::unordered_map<Mask, std::size_t> index_;
};

}  // namespace

SACASCIResult sa_casci(const chem::ActiveSpaceHamiltonian& h, const std::vector<double>& weights,
                       int k) {
  h.validate();
  if (k < 1) throw InvalidArgument("sa_casci needs k >= 1");
  if (static_cast<int>(weights.size()) != k) {
    throw InvalidArgument("sa_casci needs one weight per state");
  }
  double wsum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidArgument("state-average weights must be non-negative");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-12) throw InvalidArgument("state-average weights must sum to 1");
  if (h.n_orbitals > 31) throw SizeLimitError("sa_casci supports at most 31 active orbitals");

  const double ndet = binomial(h.n_orbitals, h.n_alpha()) * binomial(h.n_orbitals, h.n_beta());
  if (ndet > static_cast<double>(kMaxDeterminants)) {
    throw SizeLimitError("active space has " + std::to_string(static_cast<long long>(ndet)) +
                         " determinants; the CI limit is " + std::to_string(kMaxDeterminants));
  }
  if (ndet < k) throw InvalidArgument("fewer determinants than requested states");

  CIBuilder ci(h);
  const auto dim = static_cast<Eigen::Index>(ci.size());
  Eigen::SparseMatrix<double, Eigen::RowMajor> H(dim, dim);
  const auto t = ci.triplets();
  H.setFromTriplets(t.begin(), t.end());

  SACASCIResult out;
  out.n_determinants = ci.size();
  if (dim <= 400) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(H), Eigen::EigenvaluesOnly);
    for (int i = 0; i < k; ++i) out.energies.push_back(es.eigenvalues()(i));
  } else {
    auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = H * x; };
    const auto r = sim::lanczos_lowest<double>(apply, dim, k);
    out.energies = r.values;
  }
  for (int i = 0; i < k; ++i) out.averaged_energy += weights[static_cast<std::size_t>(i)] * out.energies[static_cast<std::size_t>(i)];
  return out;
}

}  // namespace conint::vqa
