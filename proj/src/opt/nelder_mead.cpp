#include <algorithm>
#include <cmath>
#include <numeric>

#include "conint/opt/optimizer.hpp"

namespace conint::opt {

OptResult nelder_mead_minimize(const Objective& f, std::vector<double> x0,
                               const NelderMeadConfig& cfg) {
  const std::size_t n = x0.size();
  if (n == 0) throw InvalidArgument("Nelder-Mead needs at least one parameter");
  if (cfg.max_evaluations < static_cast<int>(n) + 1) {
    throw InvalidArgument("Nelder-Mead needs max_evaluations >= n + 1");
  }
  const double dn = static_cast<double>(n);
  const double rho = 1.0;
  const double chi = n > 1 ? 1.0 + 2.0 / dn : 2.0;
  const double psi = n > 1 ? 0.75 - 1.0 / (2.0 * dn) : 0.5;
  const double sigma = n > 1 ? 1.0 - 1.0 / dn : 0.5;

  OptResult res;
  auto eval = [&](const std::vector<double>& x) {
    const double v = f(x);
    ++res.evaluations;
    if (!std::isfinite(v)) {
      res.x = x;
      throw OptimizationError("Nelder-Mead: objective returned a non-finite value", res);
    }
    return v;
  };

  std::vector<std::vector<double>> sim(n + 1, x0);
  for (std::size_t k = 0; k < n; ++k) {
    sim[k + 1][k] = x0[k] != 0.0 ? (1.0 + cfg.initial_step) * x0[k] : 0.025;
  }
  std::vector<double> fs(n + 1);
  for (std::size_t k = 0; k <= n; ++k) fs[k] = eval(sim[k]);

  std::vector<std::size_t> order(n + 1);
  auto sort_simplex = [&]() {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fs[a] < fs[b]; });
    std::vector<std::vector<double>> s2(n + 1);
    std::vector<double> f2(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      s2[k] = std::move(sim[order[k]]);
      f2[k] = fs[order[k]];
    }
    sim = std::move(s2);
    fs = std::move(f2);
  };
  auto point = [&](const std::vector<double>& c, double t) {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = (1.0 + t) * c[i] - t * sim[n][i];
    return p;
  };

  res.reason = Termination::MaxIterations;
  sort_simplex();
  while (true) {
    double xspread = 0.0, fspread = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i) xspread = std::max(xspread, std::abs(sim[k][i] - sim[0][i]));
      fspread = std::max(fspread, std::abs(fs[k] - fs[0]));
    }
    if (xspread <= cfg.xatol && fspread <= cfg.fatol) {
      res.reason = Termination::Converged;
      break;
    }
    if (xspread < cfg.stagnation_diameter) {
      res.reason = Termination::Stagnation;
      break;
    }
    if (res.evaluations >= cfg.max_evaluations) break;
    ++res.iterations;

    std::vector<double> c(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) c[i] += sim[k][i] / dn;

    const auto xr = point(c, rho);
    const double fr = eval(xr);
    bool shrink = false;
    if (fr < fs[0]) {
      const auto xe = point(c, rho * chi);
      const double fe = eval(xe);
      if (fe < fr) {
        sim[n] = xe;
        fs[n] = fe;
      } else {
        sim[n] = xr;
        fs[n] = fr;
      }
    } else if (fr < fs[n - 1]) {
      sim[n] = xr;
      fs[n] = fr;
    } else if (fr < fs[n]) {
      const auto xc = point(c, psi * rho);
      const double fc = eval(xc);
      if (fc <= fr) {
        sim[n] = xc;
        fs[n] = fc;
      } else {
        shrink = true;
      }
    } else {
      const auto xcc = point(c, -psi);
      const double fcc = eval(xcc);
      if (fcc < fs[n]) {
        sim[n] = xcc;
        fs[n] = fcc;
      } else {
        shrink = true;
      }
    }
    if (shrink) {
      for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i) sim[k][i] = sim[0][i] + sigma * (sim[k][i] - sim[0][i]);
        fs[k] = eval(sim[k]);
      }
    }
    sort_simplex();
    double nrm = 0.0;
    for (double v : sim[0]) nrm += v * v;
    res.history.push_back({res.iterations, fs[0], std::sqrt(nrm)});
  }
  res.x = sim[0];
  res.value = fs[0];
  res.feasible = true;
  return res;
}

}  // namespace conint::opt
