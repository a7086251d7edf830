#include <cmath>
#include <random>

#include "conint/opt/optimizer.hpp"

namespace conint::opt {

namespace {

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

void SPSAConfig::validate() const {
  if (max_iterations < 1) throw InvalidArgument("SPSA needs at least one iteration");
  if (!(c > 0.0)) throw InvalidArgument("SPSA perturbation c must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0) || !(gamma > 0.0 && gamma <= 1.0)) {
    throw InvalidArgument("SPSA exponents must lie in (0, 1]");
  }
  if (a <= 0.0 && !(target_first_step > 0.0 && calibration_samples > 0)) {
    throw InvalidArgument("SPSA calibration needs a positive target step and sample count");
  }
}

double spsa_a_k(const SPSAConfig& c, double a, int k) {
  const double big_a = c.A < 0.0 ? 0.1 * c.max_iterations : c.A;
  return a / std::pow(k + 1 + big_a, c.alpha);
}

double spsa_c_k(const SPSAConfig& c, int k) { return c.c / std::pow(k + 1, c.gamma); }

OptResult spsa_minimize(const Objective& f, std::vector<double> x, const SPSAConfig& cfg) {
  cfg.validate();
  const std::size_t n = x.size();
  if (n == 0) throw InvalidArgument("SPSA needs at least one parameter");
  for (double v : x)
    if (!std::isfinite(v)) throw InvalidArgument("SPSA start point is not finite");
  std::mt19937_64 rng(cfg.seed);
  std::bernoulli_distribution coin(0.5);
  auto draw = [&](std::vector<double>& delta) {
    for (auto& d : delta) d = coin(rng) ? 1.0 : -1.0;
  };

  OptResult res;
  std::vector<double> delta(n), xp(n), xm(n);
  auto eval = [&](const std::vector<double>& p, bool calibration) {
    const double v = f(p);
    if (calibration) ++res.calibration_evaluations;
    else ++res.evaluations;
    if (!std::isfinite(v)) {
      res.x = x;
      throw OptimizationError("SPSA: objective returned a non-finite value", res);
    }
    return v;
  };

  double a = cfg.a;
  if (a <= 0.0) {
    // Average gradient-estimate magnitude at x0, then choose a so that
    // a_0 * |g| equals the target first step.
    const double c0 = spsa_c_k(cfg, 0);
    double mag = 0.0;
    for (int s = 0; s < cfg.calibration_samples; ++s) {
      draw(delta);
      for (std::size_t i = 0; i < n; ++i) {
        xp[i] = x[i] + c0 * delta[i];
        xm[i] = x[i] - c0 * delta[i];
      }
      mag += std::abs(eval(xp, true) - eval(xm, true)) / (2.0 * c0);
    }
    mag /= cfg.calibration_samples;
    const double big_a = cfg.A < 0.0 ? 0.1 * cfg.max_iterations : cfg.A;
    a = mag > 0.0 ? cfg.target_first_step * std::pow(1.0 + big_a, cfg.alpha) / mag : cfg.target_first_step;
  }

  double best = INFINITY;
  std::vector<double> best_x = x;
  for (int k = 0; k < cfg.max_iterations; ++k) {
    const double ck = spsa_c_k(cfg, k);
    const double ak = spsa_a_k(cfg, a, k);
    draw(delta);
    for (std::size_t i = 0; i < n; ++i) {
      xp[i] = x[i] + ck * delta[i];
      xm[i] = x[i] - ck * delta[i];
    }
    const double fp = eval(xp, false);
    const double fm = eval(xm, false);
    const double mean = 0.5 * (fp + fm);
    res.history.push_back({k, mean, norm2(x)});
    if (mean < best) {
      best = mean;
      best_x = x;
    }
    const double g = (fp - fm) / (2.0 * ck);
    for (std::size_t i = 0; i < n; ++i) x[i] -= ak * g * delta[i];
    res.iterations = k + 1;
  }
  res.x = best_x;
  res.value = best;
  res.reason = Termination::MaxIterations;
  return res;
}

}  // namespace conint::opt
