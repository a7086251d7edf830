#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conint/ansatz/ansatz.hpp"
#include "conint/chem/active_space.hpp"
#include "conint/chem/geometry.hpp"
#include "conint/chem/scf.hpp"
#include "conint/vqa/vqa.hpp"

namespace conint::scan {

enum class Molecule { H2OScaled, H2OJacobi, CH2NH };
enum class Method { Exact, VQE, VQD, VQEAC, SACASCI };

std::string to_string(Molecule m);
std::string to_string(Method m);
Molecule parse_molecule(const std::string& text);
Method parse_method(const std::string& text);

/// Fixed geometric parameters of the three scan families.
struct GeometryParams {
  chem::WaterReference water;
  chem::WaterJacobi jacobi;
  chem::MethanimineParams methanimine;
};

/// Geometry at one value of the molecule's scan coordinate: scale factor
/// (h2o-scaled), G in Angstrom (h2o-jacobi) or alpha in degrees (ch2nh).
chem::Geometry build_geometry(Molecule m, double coordinate, const GeometryParams& params = {});

/// Inclusive grid start, start + step, ... up to stop (within step * 1e-9).
struct Range {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> points() const;
  void validate() const;
};

/// Finer grid added after the coarse pass. With `automatic`, a window of
/// +- half_width is placed around every interior local minimum of the
/// coarse gap curve; otherwise `range` is used as given.
struct FineWindow {
  bool automatic = true;
  Range range;
  double half_width = 10.0;
  double step = 2.0;
};

struct ScanSpec {
  Molecule molecule = Molecule::CH2NH;
  Range range;
  std::optional<FineWindow> fine;
  GeometryParams geometry;
  std::string basis = "sto-3g";
  int n_active_electrons = 4;
  int n_active_orbitals = 3;
  Method method = Method::Exact;
  int k = 2;
  fq::MappingKind mapping = fq::MappingKind::ParityReduced;

  // variational settings
  ansatz::AnsatzKind ansatz = ansatz::AnsatzKind::EfficientSU2;
  int reps = 2;
  ansatz::Entanglement entanglement = ansatz::Entanglement::Linear;
  vqa::OptimizerKind optimizer = vqa::OptimizerKind::COBYLA;
  opt::SPSAConfig spsa;
  opt::COBYLAConfig cobyla;
  int restarts = 1;
  std::vector<double> betas;  // VQD; empty -> 0.5 for every lower state
  double overlap_threshold = 1e-4;
  bool sampled = false;
  int shots = 2000;
  bool warm_start = true;

  std::uint64_t seed = 1;
  std::string output;  // CSV path; the report goes next to it
  int workers = 0;     // 0: CONINT_WORKERS or hardware concurrency

  void validate() const;
};

struct StateDiagnostics {
  std::vector<double> overlaps;
  int evaluations = 0;
  bool feasible = true;
};

struct ScanRecord {
  double coordinate = 0.0;
  std::vector<double> energies;
  std::vector<StateDiagnostics> states;
  std::vector<std::vector<double>> parameters;  // per state (variational methods)
  double wall_time = 0.0;
  bool ok = true;
  std::string error;
};

struct ScanResult {
  std::vector<ScanRecord> records;  // sorted by coordinate
  std::vector<double> failed;       // coordinates of failed points
};

/// The chemistry stack for one point: RHF then the active-space Hamiltonian.
chem::ActiveSpaceHamiltonian point_hamiltonian(const chem::Geometry& geometry,
                                              const std::string& basis, int n_active_electrons,
                                              int n_active_orbitals,
                                              const chem::SCFOptions& scf = {});
chem::ActiveSpaceHamiltonian point_hamiltonian(const ScanSpec& spec, double coordinate);

/// One scan point. `warm` supplies per-state starting parameters.
ScanRecord run_point(const ScanSpec& spec, double coordinate,
                     const std::vector<std::vector<double>>& warm = {});

/// Coarse grid, then the fine window if configured, merged by coordinate.
/// Failures are recorded per point and never abort the scan.
ScanResult run_scan(const ScanSpec& spec);

/// Worker count: spec.workers, CONINT_WORKERS, else hardware concurrency.
int worker_count(const ScanSpec& spec);

struct CrossingReport {
  double coordinate = 0.0;  // refined location of the minimum gap
  double gap = 0.0;         // Hartree, interpolated at `coordinate`
  double grid_step = 0.0;   // local spacing around the minimum
  double left = 0.0;        // bracketing grid coordinates
  double right = 0.0;
  std::size_t index = 0;    // record index of the grid minimum
  bool boundary = false;    // minimum at an end of the scan: no interior crossing
  int state_a = 0;
  int state_b = 1;
};

/// Minimum of E_b - E_a over the successful records, refined by the parabola
/// through the minimum and its two neighbours.
CrossingReport detect_min_gap(const std::vector<ScanRecord>& records, int state_a = 0,
                              int state_b = 1);

/// Every interior local minimum of the gap curve, each refined as above.
std::vector<CrossingReport> local_gap_minima(const std::vector<ScanRecord>& records,
                                             int state_a = 0, int state_b = 1);

/// CSV: coordinate,E0,...,E{k-1},gap01,method,seed with %.17g values.
void write_csv(const std::vector<ScanRecord>& records, int k, const std::string& method,
               std::uint64_t seed, std::ostream& out);
void write_csv(const std::vector<ScanRecord>& records, int k, const std::string& method,
               std::uint64_t seed, const std::string& path);

/// Reads a CSV written by write_csv back into records (energies only).
std::vector<ScanRecord> read_csv(std::istream& in);
std::vector<ScanRecord> read_csv(const std::string& path);

/// Full structured export (JSON): spec summary, records with diagnostics,
/// failures and crossing reports.
void write_report(const ScanSpec& spec, const ScanResult& result,
                  const std::vector<CrossingReport>& crossings, std::ostream& out);
void write_report(const ScanSpec& spec, const ScanResult& result,
                  const std::vector<CrossingReport>& crossings, const std::string& path);

/// Flat `key = value` text with optional `[section]` headers; keys inside a
/// section are stored as "section.key". '#' starts a comment.
std::map<std::string, std::string> parse_config(std::istream& in);
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// ScanSpec from parsed configuration; unknown keys are rejected.
ScanSpec spec_from_config(const std::map<std::string, std::string>& config);

}  // namespace conint::scan
