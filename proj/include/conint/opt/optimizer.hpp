#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "conint/error.hpp"

namespace conint::opt {

using Objective = std::function<double(const std::vector<double>&)>;
/// Feasible when the returned value is >= 0.
using ConstraintFn = std::function<double(const std::vector<double>&)>;

enum class Termination { Converged, MaxIterations, Stagnation };
std::string to_string(Termination t);

struct HistoryEntry {
  int iteration = 0;
  double value = 0.0;
  double param_norm = 0.0;
};

struct OptResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;           // objective calls made by the method proper
  int calibration_evaluations = 0;  // SPSA gain calibration, counted separately
  int iterations = 0;
  std::vector<HistoryEntry> history;
  Termination reason = Termination::MaxIterations;
  bool feasible = true;
  double max_violation = 0.0;  // largest -g_k(x) at the returned point (0 when feasible)
};

/// Thrown when the objective misbehaves (e.g. returns NaN); carries the
/// history accumulated so far.
class OptimizationError : public Error {
 public:
  OptimizationError(const std::string& what, OptResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const OptResult& partial() const noexcept { return partial_; }

 private:
  OptResult partial_;
};

/// `iteration,value,param_norm` with 17 significant digits.
void write_history_csv(const OptResult& r, std::ostream& out);
void write_history_csv(const OptResult& r, const std::string& path);

struct SPSAConfig {
  int max_iterations = 200;
  /// <= 0: calibrate so the first update has magnitude `target_first_step`.
  double a = 0.0;
  double c = 0.1;
  /// < 0: 0.1 * max_iterations.
  double A = -1.0;
  double alpha = 0.602;
  double gamma = 0.101;
  double target_first_step = 0.1;
  int calibration_samples = 25;
  std::uint64_t seed = 7;

  void validate() const;
};

/// Simultaneous-perturbation stochastic approximation. Each iteration spends
/// exactly two objective calls, f(x + c_k D) and f(x - c_k D), with D a
/// random +-1 vector; the history stores their mean as the value at x_k and
/// the result is the iterate with the lowest recorded value.
OptResult spsa_minimize(const Objective& f, std::vector<double> x0, const SPSAConfig& config);

/// Gain sequences as used by spsa_minimize (after calibration of `a`).
double spsa_a_k(const SPSAConfig& c, double a, int k);
double spsa_c_k(const SPSAConfig& c, int k);

struct COBYLAConfig {
  double rhobeg = 0.5;
  double rhoend = 1e-4;
  int max_evaluations = 2000;
  /// A point counts as feasible when every constraint is >= -feasibility_tol
  /// (absorbs rounding at active constraints).
  double feasibility_tol = 1e-10;
};

/// Powell's COBYLA (constrained optimisation by linear approximation).
/// Returns the best feasible point seen; if none was feasible, the point
/// with the smallest constraint violation, with `feasible = false`.
OptResult cobyla_minimize(const Objective& f, const std::vector<ConstraintFn>& constraints,
                          std::vector<double> x0, const COBYLAConfig& config = {});

struct NelderMeadConfig {
  int max_evaluations = 4000;
  double initial_step = 0.1;  // relative; absolute 0.025 for zero components
  double xatol = 1e-8;
  double fatol = 1e-12;
  double stagnation_diameter = 1e-10;
};

/// Nelder-Mead with dimension-adaptive coefficients (Gao & Han).
OptResult nelder_mead_minimize(const Objective& f, std::vector<double> x0,
                               const NelderMeadConfig& config = {});

}  // namespace conint::opt
