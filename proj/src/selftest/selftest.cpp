#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "conint/ansatz/ansatz.hpp"
#include "conint/fq/fermion.hpp"
#include "conint/fq/mapping.hpp"
#include "conint/opt/optimizer.hpp"
#include "conint/scan/scan.hpp"
#include "conint/selftest.hpp"
#include "conint/sim/eigensolver.hpp"
#include "conint/sim/simulator.hpp"
#include "conint/vqa/vqa.hpp"

namespace conint {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Random Hermitian Pauli sum with real coefficients in [-1, 1].
fq::PauliOperator random_pauli_sum(int n, int terms, std::mt19937_64& rng) {
  static const char kP[] = "IXYZ";
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  fq::PauliOperator op(n);
  for (int t = 0; t < terms; ++t) {
    std::string s(static_cast<std::size_t>(n), 'I');
    for (auto& ch : s) ch = kP[pick(rng)];
    op += fq::PauliOperator::from_string(s, coeff(rng));
  }
  return op.simplify();
}

Outcome norm_preservation() {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed);
    const int n = 6;
    sim::Circuit c(n);
    std::uniform_int_distribution<int> kind(0, 5), qubit(0, n - 1);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    std::vector<double> params;
    for (int g = 0; g < 1000; ++g) {
      const int q = qubit(rng);
      int r = qubit(rng);
      if (r == q) r = (q + 1) % n;
      switch (kind(rng)) {
        case 0: c.x(q); break;
        case 1: c.cx(q, r); break;
        case 2: c.cz(q, r); break;
        default: {
          const int p = c.add_parameter("t" + std::to_string(g));
          params.push_back(angle(rng));
          const sim::GateKind rk[] = {sim::GateKind::RX, sim::GateKind::RY, sim::GateKind::RZ};
          c.rotation(rk[p % 3], q, p);
        }
      }
    }
    const auto s = sim::apply_circuit(sim::Statevector(n), c, params);
    worst = std::max(worst, std::abs(1.0 - s.norm_squared()));
  }
  return {worst < 1e-9, fmt("max |1 - norm^2| = %.2e over 20 random 1000-gate circuits", worst)};
}

Outcome variational_bound() {
  double worst = INFINITY;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    std::mt19937_64 rng(100 + seed);
    const int n = 4;
    vqa::VQEProblem p;
    p.hamiltonian = random_pauli_sum(n, 12, rng);
    p.reference = sim::Circuit(n);
    p.ansatz = ansatz::build_efficient_su2(n, 2);
    ansatz::AnsatzSpec as;
    as.n_orbitals = 3;
    as.n_alpha = as.n_beta = 1;
    p.initial_parameters = ansatz::initial_parameters(as, p.ansatz.n_parameters(), seed);
    p.optimizer = vqa::OptimizerKind::COBYLA;
    p.cobyla.max_evaluations = 600;
    const double e0 = sim::lowest_eigenvalues(p.hamiltonian, 1).front();
    const double vqe = vqa::run_vqe(p).noiseless_energy;
    const double vqd = vqa::run_vqd(p, vqa::DeflationConfig::uniform(2, 2.0)).states[0].noiseless_energy;
    vqa::ConstraintConfig cc;
    const double ac = vqa::run_vqe_ac(p, cc).states[0].noiseless_energy;
    worst = std::min({worst, vqe - e0, vqd - e0, ac - e0});
  }
  return {worst >= -1e-9,
          fmt("min (E_state0 - E_exact) = %.3e over VQE/VQD/VQE-AC on 5 random operators", worst)};
}

Outcome anticommutation() {
  const int n = 4;
  double worst = 0.0;
  for (auto kind : {fq::MappingKind::JordanWigner, fq::MappingKind::Parity}) {
    std::vector<Eigen::MatrixXcd> a, ad;
    for (int j = 0; j < n; ++j) {
      fq::FermionOperator f(n), g(n);
      f.add_term(1.0, {{j, false}});
      g.add_term(1.0, {{j, true}});
      a.push_back(fq::map_operator(f, {kind}).to_dense());
      ad.push_back(fq::map_operator(g, {kind}).to_dense());
    }
    const auto id = Eigen::MatrixXcd::Identity(1 << n, 1 << n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Eigen::MatrixXcd mixed = a[i] * ad[j] + ad[j] * a[i] - (i == j ? 1.0 : 0.0) * id;
        const Eigen::MatrixXcd pure = a[i] * a[j] + a[j] * a[i];
        worst = std::max({worst, mixed.cwiseAbs().maxCoeff(), pure.cwiseAbs().maxCoeff()});
      }
    }
  }
  return {worst < 1e-12, fmt("max anticommutator deviation = %.2e (JW and parity, 4 modes)", worst)};
}

Outcome uccsd_number_conservation() {
  double worst = 0.0;
  struct Case { int no, na, nb; fq::MappingKind kind; };
  const Case cases[] = {{3, 2, 2, fq::MappingKind::ParityReduced},
                        {3, 2, 2, fq::MappingKind::JordanWigner},
                        {4, 1, 2, fq::MappingKind::Parity}};
  for (const auto& c : cases) {
    const int modes = 2 * c.no;
    std::vector<int> alpha(static_cast<std::size_t>(c.no)), beta(alpha.size());
    std::iota(alpha.begin(), alpha.end(), 0);
    std::iota(beta.begin(), beta.end(), c.no);
    const fq::MappingScheme scheme{c.kind, c.na, c.nb};
    const auto na = fq::map_operator(fq::number_operator(modes, alpha), scheme);
    const auto nb = fq::map_operator(fq::number_operator(modes, beta), scheme);
    const auto ref = ansatz::hf_reference_state(c.kind, c.na, c.nb, c.no);
    const auto circ = ansatz::build_uccsd(c.no, c.na, c.nb, c.kind);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(-M_PI, M_PI);
      std::vector<double> th(static_cast<std::size_t>(circ.n_parameters()));
      for (auto& t : th) t = u(rng);
      const auto s = sim::apply_circuit(ref, circ, th);
      const double ea = sim::expectation_exact(s, na), eb = sim::expectation_exact(s, nb);
      worst = std::max({worst, std::abs(ea + eb - c.na - c.nb),
                        std::abs(0.5 * (ea - eb) - 0.5 * (c.na - c.nb))});
    }
  }
  return {worst < 1e-10, fmt("max |<N> - N_HF|, |<Sz> - Sz_HF| = %.2e over 150 random amplitudes", worst)};
}

bool best_not_above_history(const opt::OptResult& r) {
  return std::all_of(r.history.begin(), r.history.end(),
                     [&](const auto& h) { return r.value <= h.value; });
}

bool same_history(const opt::OptResult& a, const opt::OptResult& b) {
  if (a.history.size() != b.history.size() || a.x != b.x) return false;
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    if (a.history[i].value != b.history[i].value) return false;
  }
  return true;
}

Outcome spsa_analytic() {
  const std::vector<double> target{0.5, -0.25, 1.0, 0.0};
  auto f = [&](const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i + 1.0) * (x[i] - target[i]) * (x[i] - target[i]);
    return s;
  };
  opt::SPSAConfig cfg;
  cfg.max_iterations = 2000;
  cfg.target_first_step = 0.5;
  const auto r = opt::spsa_minimize(f, std::vector<double>(4, 0.0), cfg);
  const auto r2 = opt::spsa_minimize(f, std::vector<double>(4, 0.0), cfg);
  double err = 0.0;
  for (std::size_t i = 0; i < 4; ++i) err = std::max(err, std::abs(r.x[i] - target[i]));
  bool gains = spsa_c_k(cfg, cfg.max_iterations) > 0.0;
  for (int k = 1; k <= cfg.max_iterations; ++k) {
    gains = gains && spsa_a_k(cfg, 1.0, k) < spsa_a_k(cfg, 1.0, k - 1) &&
            spsa_c_k(cfg, k) < spsa_c_k(cfg, k - 1);
  }
  const bool det = same_history(r, r2);
  const bool mono = best_not_above_history(r);
  std::ostringstream d;
  d << fmt("max |x - x*| = %.2e", err) << ", gains decreasing " << (gains ? "yes" : "no")
    << ", deterministic " << (det ? "yes" : "no") << ", best <= history " << (mono ? "yes" : "no");
  return {err < 0.05 && gains && det && mono, d.str()};
}

Outcome cobyla_analytic() {
  std::ostringstream d;
  bool ok = true;
  // Rosenbrock, unconstrained.
  auto rosen = [](const std::vector<double>& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  opt::COBYLAConfig tight;
  tight.rhoend = 1e-8;
  tight.max_evaluations = 50000;
  const auto r1 = opt::cobyla_minimize(rosen, {}, {-1.2, 1.0}, tight);
  const double e1 = std::hypot(r1.x[0] - 1.0, r1.x[1] - 1.0);
  ok = ok && e1 < 1e-4 && best_not_above_history(r1);
  d << fmt("rosenbrock |x - x*| = %.1e", e1);
  // Linear objective on the unit disc: minimum at -(1, 1)/sqrt(2).
  auto lin = [](const std::vector<double>& x) { return x[0] + x[1]; };
  const std::vector<opt::ConstraintFn> disc{
      [](const std::vector<double>& x) { return 1.0 - x[0] * x[0] - x[1] * x[1]; }};
  opt::COBYLAConfig c2;
  c2.rhoend = 1e-7;
  const auto r2 = opt::cobyla_minimize(lin, disc, {0.0, 0.0}, c2);
  const double e2 = std::hypot(r2.x[0] + M_SQRT1_2, r2.x[1] + M_SQRT1_2);
  const double v2 = std::max(0.0, -disc[0](r2.x));
  const auto r2b = opt::cobyla_minimize(lin, disc, {0.0, 0.0}, c2);
  ok = ok && e2 < 1e-4 && v2 < 1e-6 && r2.feasible && same_history(r2, r2b);
  d << fmt(", disc |x - x*| = %.1e violation %.1e", e2, v2);
  // LP with two active constraints: min -x - y, x + 2y <= 4, 3x + y <= 5, x, y >= 0.
  const std::vector<opt::ConstraintFn> lp{
      [](const std::vector<double>& x) { return 4.0 - x[0] - 2.0 * x[1]; },
      [](const std::vector<double>& x) { return 5.0 - 3.0 * x[0] - x[1]; },
      [](const std::vector<double>& x) { return x[0]; },
      [](const std::vector<double>& x) { return x[1]; }};
  const auto r3 = opt::cobyla_minimize([](const auto& x) { return -x[0] - x[1]; }, lp, {0.0, 0.0}, c2);
  double v3 = 0.0;
  for (const auto& g : lp) v3 = std::max(v3, -g(r3.x));
  const double e3 = std::hypot(r3.x[0] - 1.2, r3.x[1] - 1.4);
  ok = ok && e3 < 1e-6 && v3 < 1e-6 && r3.feasible;
  d << fmt(", lp |x - x*| = %.1e violation %.1e", e3, v3);
  return {ok, d.str()};
}

Outcome shot_scaling() {
  std::mt19937_64 rng(2024);
  const int n = 3;
  const auto op = random_pauli_sum(n, 8, rng);
  const auto circ = ansatz::build_efficient_su2(n, 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> th(static_cast<std::size_t>(circ.n_parameters()));
  for (auto& t : th) t = u(rng);
  const auto s = sim::apply_circuit(sim::Statevector(n), circ, th);
  const double exact = sim::expectation_exact(s, op);

  const int samples = 400;
  std::vector<double> lx, ly;
  bool unbiased = true;
  double worst_z = 0.0;
  for (int shots : {100, 400, 1600, 6400}) {
    std::vector<double> est;
    for (int i = 0; i < samples; ++i) {
      est.push_back(sim::expectation_sampled(s, op, shots, static_cast<std::uint64_t>(shots * 7919 + i)));
    }
    const double mean = std::accumulate(est.begin(), est.end(), 0.0) / samples;
    double var = 0.0;
    for (double e : est) var += (e - mean) * (e - mean);
    const double sd = std::sqrt(var / (samples - 1));
    const double z = std::abs(mean - exact) / (sd / std::sqrt(samples));
    worst_z = std::max(worst_z, z);
    unbiased = unbiased && z < 3.0;
    lx.push_back(std::log(shots));
    ly.push_back(std::log(sd));
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = sxy / sxx;
  return {std::abs(slope + 0.5) < 0.1 && unbiased,
          fmt("log-log slope of std vs shots = %.3f (expect -0.5), worst bias z = %.2f", slope, worst_z)};
}

Outcome scan_determinism() {
  scan::ScanSpec spec;
  spec.molecule = scan::Molecule::CH2NH;
  spec.range = {60.0, 300.0, 20.0};
  spec.method = scan::Method::Exact;
  auto csv = [](const scan::ScanSpec& sp) {
    std::ostringstream o;
    const auto r = scan::run_scan(sp);
    scan::write_csv(r.records, sp.k, scan::to_string(sp.method), sp.seed, o);
    return std::make_pair(o.str(), r);
  };
  spec.workers = 1;
  const auto [a, ra] = csv(spec);
  spec.workers = 3;
  const auto [b, rb] = csv(spec);

  double asym = 0.0;
  for (const auto& r : ra.records) {
    for (const auto& m : ra.records) {
      if (std::abs(r.coordinate + m.coordinate - 360.0) < 1e-9) {
        asym = std::max(asym, std::abs((r.energies[1] - r.energies[0]) - (m.energies[1] - m.energies[0])));
      }
    }
  }

  scan::ScanSpec v;
  v.molecule = scan::Molecule::H2OScaled;
  v.range = {0.9, 1.1, 0.1};
  v.method = scan::Method::VQD;
  v.optimizer = vqa::OptimizerKind::SPSA;
  v.spsa.max_iterations = 150;
  v.seed = 5;
  const auto [c, rc] = csv(v);
  const auto [e, re] = csv(v);
  const bool ok = a == b && c == e && ra.failed.empty() && rc.failed.empty() && asym < 1e-8;
  std::ostringstream d;
  d << "exact csv identical across worker counts " << (a == b ? "yes" : "no")
    << ", vqd csv identical on rerun " << (c == e ? "yes" : "no") << fmt(", max |gap(a) - gap(360-a)| = %.1e", asym);
  return {ok, d.str()};
}

}  // namespace

std::vector<CheckResult> run_selftest() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
      {"norm-preservation", norm_preservation},
      {"variational-bound", variational_bound},
      {"anticommutation", anticommutation},
      {"uccsd-particle-number", uccsd_number_conservation},
      {"spsa-analytic", spsa_analytic},
      {"cobyla-analytic", cobyla_analytic},
      {"shot-noise-scaling", shot_scaling},
      {"scan-determinism", scan_determinism},
  };
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : checks) {
    CheckResult r;
    r.name = name;
    const auto t0 = Clock::now();
    try {
      const auto o = fn();
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

bool print_selftest(std::ostream& out) {
  bool all = true;
  for (const auto& r : run_selftest()) {
    char t[32];
    std::snprintf(t, sizeof t, "%.2f", r.seconds);
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " (" << t << " s): " << r.detail << '\n';
    all = all && r.passed;
  }
  return all;
}

}  // namespace conint
