#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "conint/error.hpp"
#include "conint/vqa/vqa.hpp"

namespace conint::vqa {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) { return splitmix(a ^ splitmix(b)); }

// Energy evaluation shared by the three algorithms. Owns the shot-sampling
// RNG stream and the per-evaluation noise trajectory counter, so a run is a
// pure function of its configuration.
class Evaluator {
 public:
  explicit Evaluator(const VQEProblem& p, std::uint64_t stream)
      : p_(p),
        rng_(mix(p.measurement.seed, stream)),
        stream_(stream),
        initial_(sim::apply_circuit(sim::Statevector(p.n_qubits()), p.reference, {})) {}

  // The state the device would produce: noisy when a noise model is set.
  const sim::Statevector& state(const std::vector<double>& theta) {
    if (have_cache_ && theta == cached_x_) return cached_;
    if (p_.noise && p_.noise->enabled()) {
      sim::NoiseModel nm = *p_.noise;
      nm.seed = mix(mix(p_.noise->seed, stream_), trajectories_++);
      cached_ = sim::apply_circuit(initial_, p_.ansatz, theta, &nm);
    } else {
      cached_ = sim::apply_circuit(initial_, p_.ansatz, theta);
    }
    cached_x_ = theta;
    have_cache_ = true;
    return cached_;
  }

  double energy(const sim::Statevector& s) {
    if (p_.measurement.sampled) {
      return sim::expectation_sampled(s, p_.hamiltonian, p_.measurement.shots, rng_);
    }
    return sim::expectation_exact(s, p_.hamiltonian);
  }

  sim::Statevector noiseless(const std::vector<double>& theta) const {
    return sim::apply_circuit(initial_, p_.ansatz, theta);
  }

 private:
  const VQEProblem& p_;
  std::mt19937_64 rng_;
  std::uint64_t stream_;
  std::uint64_t trajectories_ = 0;
  sim::Statevector initial_;
  bool have_cache_ = false;
  std::vector<double> cached_x_;
  sim::Statevector cached_;
};

opt::OptResult minimize_once(const VQEProblem& p, const opt::Objective& f,
                             const std::vector<double>& x0, std::uint64_t spsa_seed) {
  switch (p.optimizer) {
    case OptimizerKind::SPSA: {
      auto cfg = p.spsa;
      cfg.seed = spsa_seed;
      return opt::spsa_minimize(f, x0, cfg);
    }
    case OptimizerKind::COBYLA:
      return opt::cobyla_minimize(f, {}, x0, p.cobyla);
    case OptimizerKind::NelderMead:
      return opt::nelder_mead_minimize(f, x0, p.nelder_mead);
  }
  throw InvalidArgument("unknown optimizer");
}

// `stream` separates the restart draws of different states.
opt::OptResult minimize(const VQEProblem& p, const opt::Objective& f,
                        const std::vector<double>& x0, std::uint64_t stream = 0) {
  auto best = minimize_once(p, f, x0, p.spsa.seed);
  int total = best.evaluations;
  for (int r = 1; r < p.restarts; ++r) {
    std::mt19937_64 rng(mix(mix(p.restart_seed, stream), static_cast<std::uint64_t>(r)));
    std::uniform_real_distribution<double> u(-p.restart_spread, p.restart_spread);
    auto start = x0;
    for (auto& v : start) v += u(rng);
    auto cand = minimize_once(p, f, start, mix(p.spsa.seed, static_cast<std::uint64_t>(r)));
    total += cand.evaluations;
    if (cand.value < best.value) best = std::move(cand);
  }
  best.evaluations = total;
  return best;
}

std::vector<double> start_point(const VQEProblem& p) {
  if (p.initial_parameters.empty()) {
    return std::vector<double>(static_cast<std::size_t>(p.ansatz.n_parameters()), 0.0);
  }
  return p.initial_parameters;
}

void check_start(const VQEProblem& p, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != p.ansatz.n_parameters()) {
    throw DimensionMismatch("start vector has " + std::to_string(x.size()) +
                            " entries, ansatz has " + std::to_string(p.ansatz.n_parameters()) +
                            " parameters");
  }
}

StateRecord finish_state(const VQEProblem& p, Evaluator& ev, opt::OptResult&& r,
                         const std::vector<StateRecord>& lower) {
  StateRecord s;
  s.parameters = r.x;
  s.state = ev.noiseless(r.x);
  s.noiseless_energy = sim::expectation_exact(s.state, p.hamiltonian);
  s.energy = p.measurement.sampled || (p.noise && p.noise->enabled())
                 ? ev.energy(ev.state(r.x))
                 : s.noiseless_energy;
  for (const auto& l : lower) s.overlaps.push_back(sim::overlap(s.state, l.state));
  s.optimization = std::move(r);
  return s;
}

}  // namespace

std::string to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::SPSA: return "spsa";
    case OptimizerKind::COBYLA: return "cobyla";
    case OptimizerKind::NelderMead: return "nelder-mead";
  }
  return "?";
}

OptimizerKind parse_optimizer(const std::string& text) {
  if (text == "spsa") return OptimizerKind::SPSA;
  if (text == "cobyla") return OptimizerKind::COBYLA;
  if (text == "nelder-mead" || text == "nm") return OptimizerKind::NelderMead;
  throw InvalidArgument("unknown optimizer '" + text + "'");
}

void VQEProblem::validate() const {
  if (ansatz.n_qubits() < 1) throw InvalidArgument("ansatz has no qubits");
  if (reference.n_qubits() != ansatz.n_qubits()) {
    throw DimensionMismatch("reference circuit acts on " + std::to_string(reference.n_qubits()) +
                            " qubits, ansatz on " + std::to_string(ansatz.n_qubits()));
  }
  if (reference.n_parameters() != 0) throw InvalidArgument("reference circuit must be fixed");
  if (hamiltonian.n_qubits() != ansatz.n_qubits()) {
    throw DimensionMismatch("Hamiltonian acts on " + std::to_string(hamiltonian.n_qubits()) +
                            " qubits, ansatz on " + std::to_string(ansatz.n_qubits()));
  }
  if (!hamiltonian.is_hermitian()) throw InvalidArgument("Hamiltonian is not Hermitian");
  if (!initial_parameters.empty()) check_start(*this, initial_parameters);
  if (measurement.sampled && measurement.shots < 1) {
    throw InvalidArgument("sampled measurement needs at least one shot");
  }
  if (noise) noise->validate();
  if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
  if (restart_spread < 0.0) throw InvalidArgument("restart spread must be non-negative");
}

sim::Statevector prepare_state(const VQEProblem& problem, const std::vector<double>& params) {
  check_start(problem, params);
  const auto init = sim::apply_circuit(sim::Statevector(problem.n_qubits()), problem.reference, {});
  return sim::apply_circuit(init, problem.ansatz, params);
}

VQEResult run_vqe(const VQEProblem& problem) {
  problem.validate();
  Evaluator ev(problem, 0);
  auto f = [&](const std::vector<double>& x) { return ev.energy(ev.state(x)); };
  auto r = minimize(problem, f, start_point(problem));
  VQEResult out;
  out.energy = r.value;
  out.parameters = r.x;
  out.state = ev.noiseless(r.x);
  out.noiseless_energy = sim::expectation_exact(out.state, problem.hamiltonian);
  out.optimization = std::move(r);
  return out;
}

DeflationConfig DeflationConfig::uniform(int k, double beta) {
  DeflationConfig c;
  c.k = k;
  c.betas.assign(static_cast<std::size_t>(std::max(k - 1, 0)), beta);
  return c;
}

void DeflationConfig::validate() const {
  if (k < 1) throw InvalidArgument("deflation needs k >= 1");
  if (static_cast<int>(betas.size()) != k - 1) {
    throw InvalidArgument("deflation needs k - 1 = " + std::to_string(k - 1) + " betas, got " +
                          std::to_string(betas.size()));
  }
  for (double b : betas)
    if (!(b > 0.0)) throw InvalidArgument("deflation weights must be positive");
}

void ConstraintConfig::validate() const {
  if (k < 1) throw InvalidArgument("constrained search needs k >= 1");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw InvalidArgument("overlap threshold must lie in (0, 1)");
  }
  if (perturbation < 0.0) throw InvalidArgument("perturbation must be non-negative");
  if (max_retries < 0) throw InvalidArgument("max_retries must be non-negative");
}

std::vector<double> SpectrumResult::energies() const {
  std::vector<double> e;
  for (const auto& s : states) e.push_back(s.energy);
  return e;
}

bool SpectrumResult::all_feasible() const {
  return std::all_of(states.begin(), states.end(), [](const auto& s) { return s.feasible; });
}

SpectrumResult run_vqd(const VQEProblem& problem, const DeflationConfig& config,
                       const std::vector<std::vector<double>>& starts) {
  problem.validate();
  config.validate();
  SpectrumResult out;
  out.method = "vqd";
  out.metadata["optimizer"] = to_string(problem.optimizer);
  out.metadata["k"] = std::to_string(config.k);
  {
    std::ostringstream b;
    for (std::size_t i = 0; i < config.betas.size(); ++i) b << (i ? "," : "") << config.betas[i];
    out.metadata["betas"] = b.str();
  }
  for (int k = 0; k < config.k; ++k) {
    Evaluator ev(problem, static_cast<std::uint64_t>(k));
    const auto& lower = out.states;
    auto cost = [&](const std::vector<double>& x) {
      const auto& s = ev.state(x);
      double v = ev.energy(s);
      for (std::size_t i = 0; i < lower.size(); ++i) {
        v += config.betas[i] * sim::overlap(s, lower[i].state);
      }
      return v;
    };
    auto x0 = k < static_cast<int>(starts.size()) && !starts[static_cast<std::size_t>(k)].empty()
                  ? starts[static_cast<std::size_t>(k)]
                  : start_point(problem);
    check_start(problem, x0);
    auto r = minimize(problem, cost, x0, static_cast<std::uint64_t>(k));
    out.states.push_back(finish_state(problem, ev, std::move(r), lower));
  }
  return out;
}

SpectrumResult run_vqe_ac(const VQEProblem& problem, const ConstraintConfig& config,
                          const std::vector<std::vector<double>>& starts) {
  problem.validate();
  config.validate();
  SpectrumResult out;
  out.method = "vqe-ac";
  out.metadata["optimizer"] = to_string(problem.optimizer);
  out.metadata["excited_optimizer"] = "cobyla";
  out.metadata["k"] = std::to_string(config.k);
  {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", config.threshold);
    out.metadata["threshold"] = buf;
  }
  out.metadata["seed"] = std::to_string(config.seed);

  auto given = [&](int k) -> const std::vector<double>* {
    if (k < static_cast<int>(starts.size()) && !starts[static_cast<std::size_t>(k)].empty()) {
      return &starts[static_cast<std::size_t>(k)];
    }
    return nullptr;
  };

  {
    Evaluator ev(problem, 0);
    auto f = [&](const std::vector<double>& x) { return ev.energy(ev.state(x)); };
    auto x0 = given(0) ? *given(0) : start_point(problem);
    check_start(problem, x0);
    out.states.push_back(finish_state(problem, ev, minimize(problem, f, x0), {}));
  }

  for (int k = 1; k < config.k; ++k) {
    const auto& lower = out.states;
    const std::vector<double> base = given(k) ? *given(k) : lower.back().parameters;
    check_start(problem, base);
    StateRecord best;
    bool have = false;
    for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
      Evaluator ev(problem, mix(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(attempt)));
      std::mt19937_64 rng(mix(mix(config.seed, static_cast<std::uint64_t>(k)),
                              static_cast<std::uint64_t>(attempt)));
      std::uniform_real_distribution<double> noise(-config.perturbation, config.perturbation);
      auto x0 = base;
      for (auto& v : x0) v += noise(rng);

      auto f = [&](const std::vector<double>& x) { return ev.energy(ev.state(x)); };
      std::vector<opt::ConstraintFn> cons;
      for (std::size_t i = 0; i < lower.size(); ++i) {
        cons.push_back([&, i](const std::vector<double>& x) {
          return config.threshold - sim::overlap(ev.state(x), lower[i].state);
        });
      }
      // The overlap bound is reported as a hard guarantee: no slack.
      auto strict = problem.cobyla;
      strict.feasibility_tol = 0.0;
      auto r = opt::cobyla_minimize(f, cons, x0, strict);
      auto rec = finish_state(problem, ev, std::move(r), lower);
      rec.attempts = attempt + 1;
      rec.feasible = rec.optimization.feasible &&
                     std::all_of(rec.overlaps.begin(), rec.overlaps.end(),
                                 [&](double o) { return o <= config.threshold; });
      const bool better = !have || (rec.feasible && !best.feasible) ||
                          (rec.feasible == best.feasible && rec.energy < best.energy);
      if (better) {
        best = std::move(rec);
        have = true;
      }
      if (best.feasible) break;
    }
    out.states.push_back(std::move(best));
  }
  return out;
}

void write_spectrum(const SpectrumResult& result, std::ostream& out) {
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "method " << result.method << "\n";
  for (const auto& [k, v] : result.metadata) out << "meta " << k << " " << v << "\n";
  for (std::size_t i = 0; i < result.states.size(); ++i) {
    const auto& s = result.states[i];
    out << "state " << i << "\n";
    out << "  energy " << num(s.energy) << "\n";
    out << "  noiseless_energy " << num(s.noiseless_energy) << "\n";
    out << "  feasible " << (s.feasible ? 1 : 0) << "\n";
    out << "  attempts " << s.attempts << "\n";
    out << "  overlaps";
    for (double o : s.overlaps) out << " " << num(o);
    out << "\n  parameters";
    for (double p : s.parameters) out << " " << num(p);
    out << "\n  evaluations " << s.optimization.evaluations << "\n";
    out << "  termination " << opt::to_string(s.optimization.reason) << "\n";
    out << "end\n";
  }
}

void write_spectrum(const SpectrumResult& result, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  write_spectrum(result, f);
  if (!f) throw Error("write to '" + path + "' failed");
}

}  // namespace conint::vqa
