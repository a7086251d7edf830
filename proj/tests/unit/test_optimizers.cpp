#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conint/opt/optimizer.hpp"

using namespace conint;
using namespace conint::opt;

namespace {

double rosenbrock(const std::vector<double>& x) {
  return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
}

double quadratic(const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (i + 1.0) * std::pow(x[i] - 0.1 * (i + 1.0), 2);
  return s;
}

void check_running_min(const OptResult& r) {
  REQUIRE(!r.history.empty());
  double best = INFINITY;
  std::vector<double> running;
  for (const auto& h : r.history) {
    best = std::min(best, h.value);
    running.push_back(best);
  }
  for (std::size_t i = 1; i < running.size(); ++i) CHECK(running[i] <= running[i - 1]);
  CHECK(r.value <= best);
}

}  // namespace

TEST_CASE("SPSA minimises a separable quadratic") {
  SPSAConfig c;
  c.max_iterations = 1500;
  c.target_first_step = 0.5;
  const auto r = spsa_minimize(quadratic, std::vector<double>(5, 1.0), c);
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(r.x[i] - 0.1 * (i + 1.0)) < 1e-2);
  CHECK(r.evaluations == 2 * c.max_iterations);
  CHECK(r.calibration_evaluations == 2 * c.calibration_samples);
  check_running_min(r);
}

TEST_CASE("SPSA gain sequences decrease and stay positive") {
  SPSAConfig c;
  c.max_iterations = 500;
  for (int k = 1; k <= c.max_iterations; ++k) {
    CHECK(spsa_a_k(c, 0.2, k) < spsa_a_k(c, 0.2, k - 1));
    CHECK(spsa_c_k(c, k) < spsa_c_k(c, k - 1));
  }
  CHECK(spsa_c_k(c, c.max_iterations) > 0.0);
  // Default stability constant is a tenth of the budget.
  CHECK(spsa_a_k(c, 1.0, 0) == doctest::Approx(std::pow(51.0, -c.alpha)));
}

TEST_CASE("SPSA histories are reproducible") {
  SPSAConfig c;
  c.max_iterations = 300;
  c.seed = 42;
  const auto a = spsa_minimize(rosenbrock, {-1.0, 1.0}, c);
  const auto b = spsa_minimize(rosenbrock, {-1.0, 1.0}, c);
  REQUIRE(a.history.size() == b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) CHECK(a.history[i].value == b.history[i].value);
  CHECK(a.x == b.x);
  c.seed = 43;
  CHECK(spsa_minimize(rosenbrock, {-1.0, 1.0}, c).x != a.x);
}

TEST_CASE("SPSA rejects bad input") {
  SPSAConfig c;
  c.c = 0.0;
  CHECK_THROWS_AS(spsa_minimize(quadratic, {1.0}, c), InvalidArgument);
  CHECK_THROWS_AS(spsa_minimize(quadratic, {}, SPSAConfig{}), InvalidArgument);
  CHECK_THROWS_AS(spsa_minimize([](const auto&) { return NAN; }, {1.0}, SPSAConfig{}), OptimizationError);
}

TEST_CASE("COBYLA solves Rosenbrock") {
  COBYLAConfig c;
  c.rhoend = 1e-8;
  c.max_evaluations = 50000;
  const auto r = cobyla_minimize(rosenbrock, {}, {-1.2, 1.0}, c);
  CHECK(std::abs(r.x[0] - 1.0) < 1e-4);
  CHECK(std::abs(r.x[1] - 1.0) < 1e-4);
  CHECK(r.reason == Termination::Converged);
  check_running_min(r);
}

TEST_CASE("COBYLA honours constraints") {
  COBYLAConfig c;
  c.rhoend = 1e-7;
  SUBCASE("disc") {
    const std::vector<ConstraintFn> g{[](const auto& x) { return 1.0 - x[0] * x[0] - x[1] * x[1]; }};
    const auto r = cobyla_minimize([](const auto& x) { return x[0] + x[1]; }, g, {0.0, 0.0}, c);
    CHECK(r.feasible);
    CHECK(g[0](r.x) > -1e-6);
    CHECK(std::abs(r.x[0] + M_SQRT1_2) < 1e-4);
    CHECK(std::abs(r.x[1] + M_SQRT1_2) < 1e-4);
  }
  SUBCASE("linear program vertex") {
    const std::vector<ConstraintFn> g{[](const auto& x) { return 4.0 - x[0] - 2.0 * x[1]; },
                                      [](const auto& x) { return 5.0 - 3.0 * x[0] - x[1]; },
                                      [](const auto& x) { return x[0]; }, [](const auto& x) { return x[1]; }};
    const auto r = cobyla_minimize([](const auto& x) { return -x[0] - x[1]; }, g, {0.0, 0.0}, c);
    CHECK(r.feasible);
    for (const auto& gi : g) CHECK(gi(r.x) > -1e-6);
    CHECK(std::abs(r.x[0] - 1.2) < 1e-6);
    CHECK(std::abs(r.x[1] - 1.4) < 1e-6);
  }
  SUBCASE("equality by two inequalities, start infeasible") {
    // min x^2 + y^2 s.t. x + y = 1  ->  (0.5, 0.5)
    const std::vector<ConstraintFn> g{[](const auto& x) { return x[0] + x[1] - 1.0; },
                                      [](const auto& x) { return 1.0 - x[0] - x[1]; }};
    const auto r = cobyla_minimize([](const auto& x) { return x[0] * x[0] + x[1] * x[1]; }, g, {3.0, -2.0}, c);
    CHECK(r.max_violation < 1e-6);
    CHECK(std::abs(r.x[0] - 0.5) < 1e-4);
  }
}

TEST_CASE("COBYLA flags an infeasible problem") {
  const std::vector<ConstraintFn> g{[](const auto& x) { return x[0] - 1.0; }, [](const auto& x) { return -x[0] - 1.0; }};
  const auto r = cobyla_minimize([](const auto& x) { return x[0] * x[0]; }, g, {0.3}, COBYLAConfig{});
  CHECK_FALSE(r.feasible);
  CHECK(r.max_violation >= 1.0 - 1e-6);
}

TEST_CASE("COBYLA is deterministic and respects its budget") {
  COBYLAConfig c;
  c.max_evaluations = 40;
  const auto a = cobyla_minimize(rosenbrock, {}, {-1.2, 1.0}, c);
  const auto b = cobyla_minimize(rosenbrock, {}, {-1.2, 1.0}, c);
  CHECK(a.x == b.x);
  CHECK(a.evaluations <= 40);
  CHECK(a.reason == Termination::MaxIterations);
  CHECK_THROWS_AS(cobyla_minimize([](const auto&) { return INFINITY; }, {}, {0.0}, c), OptimizationError);
}

TEST_CASE("Nelder-Mead solves Rosenbrock") {
  NelderMeadConfig c;
  c.max_evaluations = 5000;
  const auto r = nelder_mead_minimize(rosenbrock, {-1.2, 1.0}, c);
  CHECK(std::abs(r.x[0] - 1.0) < 1e-4);
  CHECK(std::abs(r.x[1] - 1.0) < 1e-4);
  check_running_min(r);
  const auto q = nelder_mead_minimize(quadratic, {0.0, 0.0, 0.0}, c);
  CHECK(std::abs(q.x[2] - 0.3) < 1e-4);
}

TEST_CASE("history export") {
  COBYLAConfig c;
  c.max_evaluations = 5;
  const auto r = cobyla_minimize(quadratic, {}, {1.0, 1.0}, c);
  std::ostringstream out;
  write_history_csv(r, out);
  const auto text = out.str();
  CHECK(text.rfind("iteration,value,param_norm\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(r.history.size()) + 1);
}
