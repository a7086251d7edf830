#pragma once
// Numerical-quadrature reference integrals for contracted s-type Gaussians
// on atoms along the z axis. Everything is evaluated on a spherical grid
// (r, mu = cos theta) around a chosen origin; azimuthal symmetry about z
// makes the phi integral a factor 2 pi. Nothing here shares code with the
// library's analytic integral engine.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

struct Rule {
  std::vector<double> x, w;
};

// n-point Gauss-Legendre on [-1, 1] by Newton iteration on P_n.
inline Rule gauss_legendre(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

// Contracted s function on the z axis: sum_i c_i (2a_i/pi)^{3/4} exp(-a_i |r - z0|^2).
struct SFunction {
  double z = 0.0;
  std::vector<double> exps, coefs;

  double value(double x, double y, double zz) const {
    const double r2 = x * x + y * y + (zz - z) * (zz - z);
    double v = 0.0;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      v += coefs[i] * std::pow(2.0 * exps[i] / M_PI, 0.75) * std::exp(-exps[i] * r2);
    }
    return v;
  }
  // Laplacian of the function at a point.
  double laplacian(double x, double y, double zz) const {
    const double r2 = x * x + y * y + (zz - z) * (zz - z);
    double v = 0.0;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      const double a = exps[i];
      v += coefs[i] * std::pow(2.0 * a / M_PI, 0.75) * std::exp(-a * r2) * (4.0 * a * a * r2 - 6.0 * a);
    }
    return v;
  }
};

// Integral of f(x, y, z), axially symmetric about z, over all space, on a
// spherical grid centred at (0, 0, z0): radial panels of Gauss-Legendre up to rmax.
inline double integrate(const std::function<double(double, double, double)>& f, double z0,
                        double rmax = 14.0, int panels = 70, int radial = 16, int angular = 96) {
  const Rule rr = gauss_legendre(radial), ra = gauss_legendre(angular);
  const double h = rmax / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    for (int i = 0; i < radial; ++i) {
      const double r = h * (p + 0.5 * (rr.x[i] + 1.0));
      const double wr = 0.5 * h * rr.w[i] * r * r;
      double ang = 0.0;
      for (int j = 0; j < angular; ++j) {
        const double mu = ra.x[j];
        const double s = std::sqrt(1.0 - mu * mu);
        ang += ra.w[j] * f(r * s, 0.0, z0 + r * mu);
      }
      total += wr * ang;
    }
  }
  return 2.0 * M_PI * total;
}

// Electrostatic potential at distance d from the centre of the normalised
// charge product of two s functions, sum over primitive pairs. The
// potential of a unit Gaussian charge of exponent p is erf(sqrt(p) d) / d.
inline double pair_potential(const SFunction& a, const SFunction& b, double x, double y, double z) {
  double v = 0.0;
  for (std::size_t i = 0; i < a.exps.size(); ++i) {
    for (std::size_t j = 0; j < b.exps.size(); ++j) {
      const double ai = a.exps[i], bj = b.exps[j], p = ai + bj;
      const double zp = (ai * a.z + bj * b.z) / p;
      const double dab = a.z - b.z;
      const double norm = a.coefs[i] * b.coefs[j] * std::pow(2.0 * ai / M_PI, 0.75) *
                          std::pow(2.0 * bj / M_PI, 0.75) * std::exp(-ai * bj / p * dab * dab) *
                          std::pow(M_PI / p, 1.5);  // total charge of the primitive product
      const double d = std::sqrt(x * x + y * y + (z - zp) * (z - zp));
      v += norm * (d < 1e-12 ? 2.0 * std::sqrt(p / M_PI) : std::erf(std::sqrt(p) * d) / d);
    }
  }
  return v;
}

inline double overlap(const SFunction& a, const SFunction& b) {
  return integrate([&](double x, double y, double z) { return a.value(x, y, z) * b.value(x, y, z); },
                   0.5 * (a.z + b.z));
}

inline double kinetic(const SFunction& a, const SFunction& b) {
  return integrate(
      [&](double x, double y, double z) { return -0.5 * a.value(x, y, z) * b.laplacian(x, y, z); },
      0.5 * (a.z + b.z));
}

// -Z <a| 1/|r - C| |b>, grid centred on the nucleus so r^2 dr cancels the pole.
inline double nuclear(const SFunction& a, const SFunction& b, double charge, double zc) {
  return integrate(
      [&](double x, double y, double z) {
        const double d = std::sqrt(x * x + y * y + (z - zc) * (z - zc));
        return -charge * a.value(x, y, z) * b.value(x, y, z) / d;
      },
      zc);
}

// (ab|cd): density ab on the grid times the potential of density cd.
inline double eri(const SFunction& a, const SFunction& b, const SFunction& c, const SFunction& d) {
  return integrate(
      [&](double x, double y, double z) { return a.value(x, y, z) * b.value(x, y, z) * pair_potential(c, d, x, y, z); },
      0.5 * (a.z + b.z));
}

}  // namespace oracle
