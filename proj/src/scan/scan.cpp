#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "conint/chem/basis.hpp"
#include "conint/chem/integrals.hpp"
#include "conint/error.hpp"
#include "conint/scan/scan.hpp"

namespace conint::scan {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// RNG stream of a point: depends on the master seed and the coordinate
// only, so coarse/fine merging and worker scheduling cannot change it.
std::uint64_t point_seed(std::uint64_t master, double coordinate) {
  const auto key = static_cast<std::uint64_t>(std::llround(coordinate * 1e6));
  return splitmix(master ^ splitmix(key));
}

bool variational(Method m) {
  return m == Method::VQE || m == Method::VQD || m == Method::VQEAC;
}

std::vector<ScanRecord> run_parallel(const ScanSpec& spec, const std::vector<double>& xs) {
  std::vector<ScanRecord> out(xs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < xs.size(); i = next++) out[i] = run_point(spec, xs[i]);
  };
  const int n = std::min<int>(worker_count(spec), static_cast<int>(xs.size()));
  if (n <= 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < n; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

// Sequential sweep where each point starts from the last successful one.
std::vector<ScanRecord> run_chain(const ScanSpec& spec, const std::vector<double>& xs,
                                  std::vector<std::vector<double>> warm) {
  std::vector<ScanRecord> out;
  for (double x : xs) {
    out.push_back(run_point(spec, x, warm));
    if (out.back().ok) warm = out.back().parameters;
  }
  return out;
}

std::vector<ScanRecord> run_points(const ScanSpec& spec, const std::vector<double>& xs,
                                   const std::vector<std::vector<double>>& warm = {}) {
  if (variational(spec.method) && spec.warm_start) return run_chain(spec, xs, warm);
  return run_parallel(spec, xs);
}

bool contains(const std::vector<double>& xs, double x, double tol) {
  return std::any_of(xs.begin(), xs.end(), [&](double y) { return std::abs(x - y) <= tol; });
}

}  // namespace

std::string to_string(Molecule m) {
  switch (m) {
    case Molecule::H2OScaled: return "h2o-scaled";
    case Molecule::H2OJacobi: return "h2o-jacobi";
    case Molecule::CH2NH: return "ch2nh";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Exact: return "exact";
    case Method::VQE: return "vqe";
    case Method::VQD: return "vqd";
    case Method::VQEAC: return "vqe-ac";
    case Method::SACASCI: return "sa-casci";
  }
  return "?";
}

Molecule parse_molecule(const std::string& t) {
  if (t == "h2o-scaled") return Molecule::H2OScaled;
  if (t == "h2o-jacobi") return Molecule::H2OJacobi;
  if (t == "ch2nh") return Molecule::CH2NH;
  throw InvalidArgument("unknown molecule '" + t + "' (h2o-scaled, h2o-jacobi, ch2nh)");
}

Method parse_method(const std::string& t) {
  if (t == "exact") return Method::Exact;
  if (t == "vqe") return Method::VQE;
  if (t == "vqd") return Method::VQD;
  if (t == "vqe-ac") return Method::VQEAC;
  if (t == "sa-casci") return Method::SACASCI;
  throw InvalidArgument("unknown method '" + t + "' (exact, vqe, vqd, vqe-ac, sa-casci)");
}

chem::Geometry build_geometry(Molecule m, double x, const GeometryParams& g) {
  switch (m) {
    case Molecule::H2OScaled: return chem::build_h2o_scaled(x, g.water);
    case Molecule::H2OJacobi: return chem::build_h2o_jacobi(x, g.jacobi);
    case Molecule::CH2NH: return chem::build_ch2nh(x, g.methanimine);
  }
  throw InvalidArgument("unknown molecule");
}

void Range::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
    throw InvalidArgument("scan range must be finite");
  }
  if (!(step > 0.0)) throw InvalidArgument("scan step must be positive");
  if (stop < start) throw InvalidArgument("scan stop lies below start");
}

std::vector<double> Range::points() const {
  validate();
  std::vector<double> xs;
  const double eps = step * 1e-9;
  for (long i = 0;; ++i) {
    const double x = start + static_cast<double>(i) * step;
    if (x > stop + eps) break;
    xs.push_back(x);
  }
  return xs;
}

void ScanSpec::validate() const {
  range.validate();
  if (fine) {
    if (fine->automatic) {
      if (!(fine->step > 0.0) || !(fine->half_width > 0.0)) {
        throw InvalidArgument("fine window needs positive step and half width");
      }
      if (k < 2) throw InvalidArgument("an automatic fine window needs k >= 2 (gap curve)");
    } else {
      fine->range.validate();
      if (fine->range.start < range.start - 1e-9 || fine->range.stop > range.stop + 1e-9) {
        throw InvalidArgument("fine window lies outside the scan range");
      }
    }
  }
  if (basis != "sto-3g" && basis != "6-31g") throw InvalidArgument("basis must be sto-3g or 6-31g");
  if (n_active_electrons < 1 || n_active_orbitals < 1) {
    throw InvalidArgument("active space needs electrons and orbitals");
  }
  if (k < 1) throw InvalidArgument("k must be >= 1");
  if (method == Method::VQE && k != 1) throw InvalidArgument("method vqe computes one state (k = 1)");
  if (method == Method::VQD && !betas.empty() && static_cast<int>(betas.size()) != k - 1) {
    throw InvalidArgument("vqd needs k - 1 betas");
  }
  if (method == Method::VQEAC && !(overlap_threshold > 0.0 && overlap_threshold < 1.0)) {
    throw InvalidArgument("overlap threshold must lie in (0, 1)");
  }
  if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
  if (sampled && shots < 1) throw InvalidArgument("shots must be positive");
  if (workers < 0) throw InvalidArgument("workers must be >= 0");
}

int worker_count(const ScanSpec& spec) {
  if (spec.workers > 0) return spec.workers;
  if (const char* env = std::getenv("CONINT_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

chem::ActiveSpaceHamiltonian point_hamiltonian(const chem::Geometry& geom,
                                              const std::string& basis, int ne, int no,
                                              const chem::SCFOptions& scf) {
  const chem::BasisSet bs(geom, chem::BasisLibrary::builtin(basis));
  const auto ints = chem::compute_integrals(geom, bs);
  const auto rhf = chem::run_rhf(ints, geom.n_electrons(), scf);
  return chem::select_active_space(rhf, ints, ne, no);
}

chem::ActiveSpaceHamiltonian point_hamiltonian(const ScanSpec& spec, double x) {
  return point_hamiltonian(build_geometry(spec.molecule, x, spec.geometry), spec.basis,
                           spec.n_active_electrons, spec.n_active_orbitals);
}

ScanRecord run_point(const ScanSpec& spec, double x, const std::vector<std::vector<double>>& warm) {
  ScanRecord rec;
  rec.coordinate = x;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto h = point_hamiltonian(spec, x);
    const std::uint64_t seed = point_seed(spec.seed, x);
    switch (spec.method) {
      case Method::Exact:
        rec.energies = vqa::exact_spectrum(h, spec.k, spec.mapping);
        rec.states.resize(rec.energies.size());
        break;
      case Method::SACASCI: {
        const std::vector<double> w(static_cast<std::size_t>(spec.k), 1.0 / spec.k);
        rec.energies = vqa::sa_casci(h, w, spec.k).energies;
        rec.states.resize(rec.energies.size());
        break;
      }
      case Method::VQE:
      case Method::VQD:
      case Method::VQEAC: {
        ansatz::AnsatzSpec as;
        as.kind = spec.ansatz;
        as.reps = spec.reps;
        as.entanglement = spec.entanglement;
        as.mapping = spec.mapping;
        as.n_orbitals = h.n_orbitals;
        as.n_alpha = h.n_alpha();
        as.n_beta = h.n_beta();
        as.validate();

        vqa::VQEProblem p;
        p.hamiltonian = vqa::qubit_hamiltonian(h, spec.mapping);
        p.reference = ansatz::hf_reference_circuit(spec.mapping, h.n_alpha(), h.n_beta(), h.n_orbitals);
        p.ansatz = ansatz::build_ansatz(as);
        p.initial_parameters = ansatz::initial_parameters(as, p.ansatz.n_parameters(), seed);
        p.optimizer = spec.optimizer;
        p.spsa = spec.spsa;
        p.spsa.seed = splitmix(spec.spsa.seed ^ seed);
        p.cobyla = spec.cobyla;
        p.restarts = spec.restarts;
        p.restart_seed = seed ^ 0x5bd1e995ULL;
        p.measurement.sampled = spec.sampled;
        p.measurement.shots = spec.shots;
        p.measurement.seed = seed;

        std::vector<std::vector<double>> starts;
        if (spec.warm_start) starts = warm;

        vqa::SpectrumResult res;
        if (spec.method == Method::VQE) {
          if (!starts.empty() && !starts[0].empty()) p.initial_parameters = starts[0];
          const auto r = vqa::run_vqe(p);
          vqa::StateRecord s;
          s.energy = r.noiseless_energy;
          s.noiseless_energy = r.noiseless_energy;
          s.parameters = r.parameters;
          s.optimization = r.optimization;
          res.states.push_back(std::move(s));
        } else if (spec.method == Method::VQD) {
          auto cfg = spec.betas.empty() ? vqa::DeflationConfig::uniform(spec.k, 0.5)
                                        : vqa::DeflationConfig{spec.k, spec.betas};
          res = vqa::run_vqd(p, cfg, starts);
        } else {
          vqa::ConstraintConfig cfg;
          cfg.k = spec.k;
          cfg.threshold = spec.overlap_threshold;
          cfg.seed = seed;
          res = vqa::run_vqe_ac(p, cfg, starts);
        }
        // Energies are the exact expectation at the final parameters.
        for (const auto& s : res.states) {
          rec.energies.push_back(s.noiseless_energy);
          rec.states.push_back({s.overlaps, s.optimization.evaluations, s.feasible});
          rec.parameters.push_back(s.parameters);
        }
        break;
      }
    }
    for (double e : rec.energies)
      if (!std::isfinite(e)) throw Error("non-finite energy");
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.error = e.what();
    rec.energies.clear();
    rec.states.clear();
    rec.parameters.clear();
  }
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

ScanResult run_scan(const ScanSpec& spec) {
  spec.validate();
  const auto coarse_x = spec.range.points();
  auto records = run_points(spec, coarse_x);

  if (spec.fine) {
    std::vector<Range> windows;
    if (spec.fine->automatic) {
      std::vector<ScanRecord> ok;
      for (const auto& r : records)
        if (r.ok) ok.push_back(r);
      if (ok.size() >= 3) {
        for (const auto& c : local_gap_minima(ok)) {
          const double centre = ok[c.index].coordinate;
          windows.push_back({std::max(spec.range.start, centre - spec.fine->half_width),
                             std::min(spec.range.stop, centre + spec.fine->half_width),
                             spec.fine->step});
        }
      }
    } else {
      windows.push_back(spec.fine->range);
    }
    std::vector<double> have = coarse_x;
    for (const auto& w : windows) {
      std::vector<double> xs;
      for (double x : w.points())
        if (!contains(have, x, 1e-9)) xs.push_back(x);
      if (xs.empty()) continue;
      have.insert(have.end(), xs.begin(), xs.end());
      // Warm start from the coarse record nearest to the window's first point.
      std::vector<std::vector<double>> warm;
      double best = INFINITY;
      for (const auto& r : records) {
        if (r.ok && std::abs(r.coordinate - xs.front()) < best) {
          best = std::abs(r.coordinate - xs.front());
          warm = r.parameters;
        }
      }
      auto fine = run_points(spec, xs, warm);
      records.insert(records.end(), std::make_move_iterator(fine.begin()),
                     std::make_move_iterator(fine.end()));
    }
  }

  std::stable_sort(records.begin(), records.end(),
                   [](const auto& a, const auto& b) { return a.coordinate < b.coordinate; });
  ScanResult out;
  for (const auto& r : records)
    if (!r.ok) out.failed.push_back(r.coordinate);
  out.records = std::move(records);
  return out;
}

namespace {

struct GapCurve {
  std::vector<double> x, g;
  std::vector<std::size_t> source;  // record index
};

GapCurve gap_curve(const std::vector<ScanRecord>& records, int a, int b) {
  if (a < 0 || b < 0 || a == b) throw InvalidArgument("gap needs two distinct states");
  GapCurve c;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const auto need = static_cast<std::size_t>(std::max(a, b));
    if (!r.ok || r.energies.size() <= need) continue;
    c.x.push_back(r.coordinate);
    c.g.push_back(r.energies[static_cast<std::size_t>(b)] - r.energies[static_cast<std::size_t>(a)]);
    c.source.push_back(i);
  }
  if (c.x.size() < 3) throw InvalidArgument("gap detection needs at least 3 successful records");
  return c;
}

CrossingReport refine(const GapCurve& c, std::size_t i, int a, int b) {
  CrossingReport rep;
  rep.state_a = a;
  rep.state_b = b;
  rep.index = c.source[i];
  rep.coordinate = c.x[i];
  rep.gap = c.g[i];
  const std::size_t n = c.x.size();
  if (i == 0 || i + 1 == n) {
    rep.boundary = true;
    rep.left = c.x[i == 0 ? 0 : i - 1];
    rep.right = c.x[i == 0 ? 1 : i];
    rep.grid_step = rep.right - rep.left;
    return rep;
  }
  const double x0 = c.x[i - 1], x1 = c.x[i], x2 = c.x[i + 1];
  const double g0 = c.g[i - 1], g1 = c.g[i], g2 = c.g[i + 1];
  rep.left = x0;
  rep.right = x2;
  rep.grid_step = 0.5 * (x2 - x0);
  const double num = (x1 - x0) * (x1 - x0) * (g1 - g2) - (x1 - x2) * (x1 - x2) * (g1 - g0);
  const double den = (x1 - x0) * (g1 - g2) - (x1 - x2) * (g1 - g0);
  if (den != 0.0) {
    const double xv = x1 - 0.5 * num / den;
    // Lagrange form of the parabola, evaluated at the vertex.
    const double l0 = (xv - x1) * (xv - x2) / ((x0 - x1) * (x0 - x2));
    const double l1 = (xv - x0) * (xv - x2) / ((x1 - x0) * (x1 - x2));
    const double l2 = (xv - x0) * (xv - x1) / ((x2 - x0) * (x2 - x1));
    const double gv = g0 * l0 + g1 * l1 + g2 * l2;
    if (xv >= x0 && xv <= x2 && gv <= g1) {
      rep.coordinate = xv;
      rep.gap = std::max(gv, 0.0);
    }
  }
  return rep;
}

}  // namespace

CrossingReport detect_min_gap(const std::vector<ScanRecord>& records, int a, int b) {
  const auto c = gap_curve(records, a, b);
  const auto it = std::min_element(c.g.begin(), c.g.end());
  return refine(c, static_cast<std::size_t>(it - c.g.begin()), a, b);
}

std::vector<CrossingReport> local_gap_minima(const std::vector<ScanRecord>& records, int a, int b) {
  const auto c = gap_curve(records, a, b);
  std::vector<CrossingReport> out;
  for (std::size_t i = 1; i + 1 < c.x.size(); ++i) {
    if (c.g[i] < c.g[i - 1] && c.g[i] <= c.g[i + 1]) out.push_back(refine(c, i, a, b));
  }
  return out;
}

}  // namespace conint::scan
