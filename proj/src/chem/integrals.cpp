#include "conint/chem/integrals.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "conint/chem/boys.hpp"
#include "conint/error.hpp"

namespace conint::chem {

void EriTensor::set_symmetric(int p, int q, int r, int s, double v) {
  (*this)(p, q, r, s) = v;
  (*this)(q, p, r, s) = v;
  (*this)(p, q, s, r) = v;
  (*this)(q, p, s, r) = v;
  (*this)(r, s, p, q) = v;
  (*this)(s, r, p, q) = v;
  (*this)(r, s, q, p) = v;
  (*this)(s, r, q, p) = v;
}

double EriTensor::symmetry_error() const {
  double err = 0.0;
  for (int p = 0; p < n_; ++p)
    for (int q = 0; q < n_; ++q)
      for (int r = 0; r < n_; ++r)
        for (int s = 0; s < n_; ++s) {
          const double v = (*this)(p, q, r, s);
          err = std::max({err, std::abs(v - (*this)(q, p, r, s)),
                          std::abs(v - (*this)(p, q, s, r)), std::abs(v - (*this)(r, s, p, q))});
        }
  return err;
}

namespace {

constexpr int kMaxL = 1;
constexpr int kMaxPairL = 2 * kMaxL + 2;  // room for the kinetic j+2 shift
constexpr int kMaxR = 4 * kMaxL;

// Hermite expansion coefficients E^{ij}_t for one Cartesian direction.
struct HermiteE {
  std::array<std::array<std::array<double, 2 * kMaxPairL + 1>, kMaxPairL + 1>, kMaxPairL + 1> e{};

  double operator()(int i, int j, int t) const {
    if (t < 0 || t > i + j) return 0.0;
    return e[i][j][t];
  }

  HermiteE(int li, int lj, double a, double b, double xa, double xb) {
    const double p = a + b;
    const double mu = a * b / p;
    const double xab = xa - xb;
    const double xp = (a * xa + b * xb) / p;
    const double xpa = xp - xa;
    const double xpb = xp - xb;
    const double inv2p = 0.5 / p;
    e[0][0][0] = std::exp(-mu * xab * xab);
    for (int i = 0; i <= li; ++i) {
      for (int j = 0; j <= lj; ++j) {
        if (i == 0 && j == 0) continue;
        for (int t = 0; t <= i + j; ++t) {
          double v;
          if (i > 0) {
            v = inv2p * (*this)(i - 1, j, t - 1) + xpa * (*this)(i - 1, j, t) +
                (t + 1) * (*this)(i - 1, j, t + 1);
          } else {
            v = inv2p * (*this)(i, j - 1, t - 1) + xpb * (*this)(i, j - 1, t) +
                (t + 1) * (*this)(i, j - 1, t + 1);
          }
          e[i][j][t] = v;
        }
      }
    }
  }
};

// Hermite Coulomb integrals R^0_{tuv}(p, PC) for t + u + v <= L.
struct HermiteR {
  static constexpr int N = kMaxR + 1;
  std::array<double, N * N * N> r{};

  double operator()(int t, int u, int v) const { return r[(t * N + u) * N + v]; }

  HermiteR(int order, double p, const Eigen::Vector3d& pc) {
    std::array<double, N> f{};
    boys_function(p * pc.squaredNorm(), std::span<double>(f.data(), order + 1));
    // work[n][t][u][v]
    std::array<double, N * N * N * N> w{};
    auto at = [&](int n, int t, int u, int v) -> double& { return w[((n * N + t) * N + u) * N + v]; };
    double fac = 1.0;
    for (int n = 0; n <= order; ++n) {
      at(n, 0, 0, 0) = fac * f[n];
      fac *= -2.0 * p;
    }
    for (int total = 1; total <= order; ++total) {
      for (int n = 0; n + total <= order; ++n) {
        for (int t = 0; t <= total; ++t) {
          for (int u = 0; t + u <= total; ++u) {
            const int v = total - t - u;
            double val;
            if (t > 0) {
              val = pc.x() * at(n + 1, t - 1, u, v);
              if (t > 1) val += (t - 1) * at(n + 1, t - 2, u, v);
            } else if (u > 0) {
              val = pc.y() * at(n + 1, t, u - 1, v);
              if (u > 1) val += (u - 1) * at(n + 1, t, u - 2, v);
            } else {
              val = pc.z() * at(n + 1, t, u, v - 1);
              if (v > 1) val += (v - 1) * at(n + 1, t, u, v - 2);
            }
            at(n, t, u, v) = val;
          }
        }
      }
    }
    for (int t = 0; t <= order; ++t)
      for (int u = 0; t + u <= order; ++u)
        for (int v = 0; t + u + v <= order; ++v) r[(t * N + u) * N + v] = at(0, t, u, v);
  }
};

struct PrimitivePair {
  double p;
  Eigen::Vector3d center;
  double coef;  // product of normalised contraction coefficients
  HermiteE ex, ey, ez;
};

std::vector<PrimitivePair> make_pairs(const BasisShell& a, const BasisShell& b, int extra_l = 0) {
  std::vector<PrimitivePair> out;
  out.reserve(a.primitives.size() * b.primitives.size());
  for (std::size_t i = 0; i < a.primitives.size(); ++i) {
    for (std::size_t j = 0; j < b.primitives.size(); ++j) {
      const double al = a.primitives[i].exponent;
      const double be = b.primitives[j].exponent;
      const double p = al + be;
      out.push_back(PrimitivePair{
          p, (al * a.origin + be * b.origin) / p, a.normalized[i] * b.normalized[j],
          HermiteE(a.l, b.l + extra_l, al, be, a.origin.x(), b.origin.x()),
          HermiteE(a.l, b.l + extra_l, al, be, a.origin.y(), b.origin.y()),
          HermiteE(a.l, b.l + extra_l, al, be, a.origin.z(), b.origin.z())});
    }
  }
  return out;
}

}  // namespace

IntegralTensors compute_integrals(const Geometry& geometry, const BasisSet& basis) {
  for (const auto& s : basis.shells()) {
    if (s.l > kMaxL) {
      throw UnsupportedFeature("angular momentum l = " + std::to_string(s.l) +
                               " is not supported (s and p shells only)");
    }
    if (s.primitives.empty()) throw InvalidArgument("basis shell has no primitives");
  }
  const int n = basis.n_functions();
  const auto& shells = basis.shells();
  const auto& off = basis.offsets();
  const int ns = static_cast<int>(shells.size());
  constexpr double pi = std::numbers::pi;

  IntegralTensors out;
  out.overlap = Eigen::MatrixXd::Zero(n, n);
  out.kinetic = Eigen::MatrixXd::Zero(n, n);
  out.nuclear = Eigen::MatrixXd::Zero(n, n);
  out.eri = EriTensor(n);
  out.nuclear_repulsion = geometry.nuclear_repulsion();

  std::vector<std::vector<std::vector<PrimitivePair>>> pairs(ns, std::vector<std::vector<PrimitivePair>>(ns));
  for (int a = 0; a < ns; ++a)
    for (int b = 0; b <= a; ++b) pairs[a][b] = make_pairs(shells[a], shells[b], 2);

  // One-electron integrals.
  for (int sa = 0; sa < ns; ++sa) {
    for (int sb = 0; sb <= sa; ++sb) {
      const auto ca = cartesian_components(shells[sa].l);
      const auto cb = cartesian_components(shells[sb].l);
      for (std::size_t ia = 0; ia < ca.size(); ++ia) {
        for (std::size_t ib = 0; ib < cb.size(); ++ib) {
          const auto [ax, ay, az] = ca[ia];
          const auto [bx, by, bz] = cb[ib];
          double s = 0.0, t = 0.0, v = 0.0;
          std::size_t idx = 0;
          for (std::size_t i = 0; i < shells[sa].primitives.size(); ++i) {
            for (std::size_t j = 0; j < shells[sb].primitives.size(); ++j, ++idx) {
              const auto& pp = pairs[sa][sb][idx];
              const double be = shells[sb].primitives[j].exponent;
              const double root = std::sqrt(pi / pp.p);
              auto s1 = [&](const HermiteE& e, int i1, int j1) {
                return j1 < 0 ? 0.0 : e(i1, j1, 0) * root;
              };
              auto t1 = [&](const HermiteE& e, int i1, int j1) {
                return -0.5 * (j1 * (j1 - 1) * s1(e, i1, j1 - 2) -
                               2.0 * be * (2 * j1 + 1) * s1(e, i1, j1) +
                               4.0 * be * be * s1(e, i1, j1 + 2));
              };
              const double sx = s1(pp.ex, ax, bx), sy = s1(pp.ey, ay, by), sz = s1(pp.ez, az, bz);
              s += pp.coef * sx * sy * sz;
              t += pp.coef * (t1(pp.ex, ax, bx) * sy * sz + sx * t1(pp.ey, ay, by) * sz +
                              sx * sy * t1(pp.ez, az, bz));
              for (const auto& atom : geometry.atoms()) {
                const HermiteR r(ax + ay + az + bx + by + bz, pp.p, pp.center - atom.position);
                double acc = 0.0;
                for (int tt = 0; tt <= ax + bx; ++tt)
                  for (int uu = 0; uu <= ay + by; ++uu)
                    for (int vv = 0; vv <= az + bz; ++vv)
                      acc += pp.ex(ax, bx, tt) * pp.ey(ay, by, uu) * pp.ez(az, bz, vv) * r(tt, uu, vv);
                v -= pp.coef * atom.charge * 2.0 * pi / pp.p * acc;
              }
            }
          }
          const int mu = off[sa] + static_cast<int>(ia);
          const int nu = off[sb] + static_cast<int>(ib);
          out.overlap(mu, nu) = out.overlap(nu, mu) = s;
          out.kinetic(mu, nu) = out.kinetic(nu, mu) = t;
          out.nuclear(mu, nu) = out.nuclear(nu, mu) = v;
        }
      }
    }
  }

  // Two-electron integrals over unique shell quartets.
  const double eri_prefactor = 2.0 * std::pow(pi, 2.5);
  for (int sa = 0; sa < ns; ++sa) {
    for (int sb = 0; sb <= sa; ++sb) {
      const int ab = sa * (sa + 1) / 2 + sb;
      for (int sc = 0; sc < ns; ++sc) {
        for (int sd = 0; sd <= sc; ++sd) {
          const int cd = sc * (sc + 1) / 2 + sd;
          if (cd > ab) continue;
          const auto ca = cartesian_components(shells[sa].l);
          const auto cb = cartesian_components(shells[sb].l);
          const auto cc = cartesian_components(shells[sc].l);
          const auto cdc = cartesian_components(shells[sd].l);
          const int order = shells[sa].l + shells[sb].l + shells[sc].l + shells[sd].l;
          const int nfa = static_cast<int>(ca.size()), nfb = static_cast<int>(cb.size());
          const int nfc = static_cast<int>(cc.size()), nfd = static_cast<int>(cdc.size());
          std::vector<double> block(static_cast<std::size_t>(nfa) * nfb * nfc * nfd, 0.0);
          for (const auto& p1 : pairs[sa][sb]) {
            for (const auto& p2 : pairs[sc][sd]) {
              const double alpha = p1.p * p2.p / (p1.p + p2.p);
              const HermiteR r(order, alpha, p1.center - p2.center);
              const double pref = p1.coef * p2.coef * eri_prefactor /
                                  (p1.p * p2.p * std::sqrt(p1.p + p2.p));
              std::size_t idx = 0;
              for (const auto& [ax, ay, az] : ca)
                for (const auto& [bx, by, bz] : cb)
                  for (const auto& [cx, cy, cz] : cc)
                    for (const auto& [dx, dy, dz] : cdc) {
                      double acc = 0.0;
                      for (int t = 0; t <= ax + bx; ++t)
                        for (int u = 0; u <= ay + by; ++u)
                          for (int v = 0; v <= az + bz; ++v) {
                            const double e1 = p1.ex(ax, bx, t) * p1.ey(ay, by, u) * p1.ez(az, bz, v);
                            if (e1 == 0.0) continue;
                            for (int tau = 0; tau <= cx + dx; ++tau)
                              for (int nu = 0; nu <= cy + dy; ++nu)
                                for (int phi = 0; phi <= cz + dz; ++phi) {
                                  const double sign = ((tau + nu + phi) % 2) ? -1.0 : 1.0;
                                  acc += e1 * sign * p2.ex(cx, dx, tau) * p2.ey(cy, dy, nu) *
                                         p2.ez(cz, dz, phi) * r(t + tau, u + nu, v + phi);
                                }
                          }
                      block[idx++] += pref * acc;
                    }
            }
          }
          std::size_t idx = 0;
          for (int ia = 0; ia < nfa; ++ia)
            for (int ib = 0; ib < nfb; ++ib)
              for (int ic = 0; ic < nfc; ++ic)
                for (int id = 0; id < nfd; ++id)
                  out.eri.set_symmetric(off[sa] + ia, off[sb] + ib, off[sc] + ic, off[sd] + id,
                                        block[idx++]);
        }
      }
    }
  }
  return out;
}

}  // namespace conint::chem
