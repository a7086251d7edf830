#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "conint/chem/fcidump.hpp"
#include "conint/cli.hpp"
#include "conint/error.hpp"
#include "conint/scan/scan.hpp"
#include "conint/selftest.hpp"

namespace conint {

namespace {

// Thrown for problems the user can fix by changing the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

std::pair<int, int> parse_active(const std::string& text) {
  int ne = 0, no = 0;
  char comma = 0;
  std::istringstream ss(text);
  if (!(ss >> ne >> comma >> no) || comma != ',' || !ss.eof() || ne < 1 || no < 1) {
    throw UsageError("--active expects N_ELECTRONS,N_ORBITALS (e.g. 4,3), got '" + text + "'");
  }
  return {ne, no};
}

std::vector<double> parse_triple(const std::string& text, const std::string& flag) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + " expects START,STOP,STEP, got '" + text + "'");
    }
  }
  if (v.size() != 3) throw UsageError(flag + " expects START,STOP,STEP, got '" + text + "'");
  return v;
}

// Options shared by the single-point subcommands.
struct PointOptions {
  std::string molecule = "h2o-scaled";
  double coord = 1.0;
  std::string active = "4,3";
  std::string basis = "sto-3g";
  std::string mapping = "parity-reduced";

  void add(CLI::App* app) {
    app->add_option("--molecule", molecule, "h2o-scaled, h2o-jacobi or ch2nh")->capture_default_str();
    app->add_option("--coord", coord, "scan coordinate (scale factor, G in Angstrom, alpha in degrees)")
        ->capture_default_str();
    app->add_option("--active", active, "active space as N_ELECTRONS,N_ORBITALS")->capture_default_str();
    app->add_option("--basis", basis, "sto-3g or 6-31g")->capture_default_str();
    app->add_option("--mapping", mapping, "jordan-wigner, parity or parity-reduced")->capture_default_str();
  }

  scan::ScanSpec spec() const {
    scan::ScanSpec s;
    try {
      s.molecule = scan::parse_molecule(molecule);
      s.mapping = fq::parse_mapping(mapping);
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    std::tie(s.n_active_electrons, s.n_active_orbitals) = parse_active(active);
    s.basis = basis;
    s.range = {coord, coord, 1.0};
    return s;
  }
};

int run_scan_command(const std::string& config_path, const std::vector<std::string>& flag_overrides,
                     std::ostream& out) {
  std::map<std::string, std::string> cfg;
  if (!config_path.empty()) {
    try {
      cfg = scan::parse_config_file(config_path);
    } catch (const ParseError& e) {
      throw UsageError(config_path + ": " + e.what());
    }
  }
  for (const auto& kv : flag_overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects KEY=VALUE, got '" + kv + "'");
    cfg[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  scan::ScanSpec spec;
  try {
    spec = scan::spec_from_config(cfg);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (spec.output.empty()) spec.output = "scan.csv";

  const auto result = scan::run_scan(spec);
  std::vector<scan::CrossingReport> crossings;
  std::string crossing_note;
  if (spec.k >= 2) {
    try {
      crossings = scan::local_gap_minima(result.records);
      if (crossings.empty()) crossings.push_back(scan::detect_min_gap(result.records));
    } catch (const InvalidArgument& e) {
      crossing_note = e.what();
    }
  }
  scan::write_csv(result.records, spec.k, scan::to_string(spec.method), spec.seed, spec.output);
  const auto report = std::filesystem::path(spec.output).replace_extension(".json").string();
  scan::write_report(spec, result, crossings, report);

  out << "points " << result.records.size() << ", failed " << result.failed.size() << '\n';
  for (double x : result.failed) {
    const auto it = std::find_if(result.records.begin(), result.records.end(),
                                 [&](const auto& r) { return r.coordinate == x; });
    out << "  failed at " << x << ": " << it->error << '\n';
  }
  for (const auto& c : crossings) {
    out << "gap minimum " << num(c.gap) << " Ha at " << c.coordinate << " (bracket " << c.left << " .. "
        << c.right << (c.boundary ? ", boundary: no interior crossing" : "") << ")\n";
  }
  if (!crossing_note.empty()) out << "no crossing report: " << crossing_note << '\n';
  out << "wrote " << spec.output << " and " << report << '\n';
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variational excited-state and avoided-crossing toolkit", "conint"};
  app.require_subcommand(1);

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "run a potential-energy scan");
  std::string config_path, molecule, method, range, basis, active, fine, output;
  std::vector<std::string> sets;
  int k = 0;
  long long seed = -1;
  scan_cmd->add_option("--config", config_path, "experiment file (key = value, [sections])")
      ->check(CLI::ExistingFile);
  scan_cmd->add_option("--molecule", molecule, "h2o-scaled, h2o-jacobi or ch2nh");
  scan_cmd->add_option("--method", method, "exact, vqe, vqd, vqe-ac or sa-casci");
  scan_cmd->add_option("--range", range, "START,STOP,STEP");
  scan_cmd->add_option("--basis", basis, "sto-3g or 6-31g");
  scan_cmd->add_option("--active", active, "N_ELECTRONS,N_ORBITALS");
  scan_cmd->add_option("--k", k, "number of states");
  scan_cmd->add_option("--fine", fine, "off, auto or START,STOP,STEP");
  scan_cmd->add_option("--seed", seed, "master seed");
  scan_cmd->add_option("--output", output, "CSV path; the JSON report goes next to it");
  scan_cmd->add_option("--set", sets, "override a config key: KEY=VALUE (repeatable)");

  // vqe
  auto* vqe_cmd = app.add_subcommand("vqe", "ground state by VQE at one geometry");
  PointOptions vqe_pt;
  vqe_pt.add(vqe_cmd);
  std::string ansatz_name = "efficient-su2", optimizer = "spsa";
  int reps = 2, maxiter = 2000, restarts = 1, shots = 0;
  std::uint64_t vqe_seed = 1;
  vqe_cmd->add_option("--ansatz", ansatz_name, "efficient-su2 or uccsd")->capture_default_str();
  vqe_cmd->add_option("--reps", reps, "efficient-SU2 repetitions")->capture_default_str();
  vqe_cmd->add_option("--optimizer", optimizer, "spsa, cobyla or nelder-mead")->capture_default_str();
  vqe_cmd->add_option("--maxiter", maxiter, "SPSA iterations / evaluation budget")->capture_default_str();
  vqe_cmd->add_option("--restarts", restarts, "independent optimizer runs")->capture_default_str();
  vqe_cmd->add_option("--shots", shots, "sampled expectations with this many shots (0: exact)")
      ->capture_default_str();
  vqe_cmd->add_option("--seed", vqe_seed, "seed")->capture_default_str();

  // spectrum
  auto* spec_cmd = app.add_subcommand("spectrum", "k lowest energies at one geometry");
  PointOptions spec_pt;
  spec_pt.add(spec_cmd);
  int spec_k = 3;
  std::string spec_method = "exact";
  spec_cmd->add_option("--k", spec_k, "number of states")->capture_default_str();
  spec_cmd->add_option("--method", spec_method, "exact or sa-casci")->capture_default_str();

  // fcidump
  auto* fd_cmd = app.add_subcommand("fcidump", "FCIDUMP import and export");
  fd_cmd->require_subcommand(1);
  auto* fd_export = fd_cmd->add_subcommand("export", "write the active-space Hamiltonian");
  PointOptions fd_pt;
  fd_pt.add(fd_export);
  std::string fd_out;
  fd_export->add_option("--output", fd_out, "FCIDUMP path")->required();
  auto* fd_import = fd_cmd->add_subcommand("import", "read an FCIDUMP and print its spectrum");
  std::string fd_in;
  int fd_k = 1;
  fd_import->add_option("file", fd_in, "FCIDUMP path")->required()->check(CLI::ExistingFile);
  fd_import->add_option("--k", fd_k, "number of states")->capture_default_str();

  auto* self_cmd = app.add_subcommand("selftest", "run the analytic invariant suite");

  std::vector<std::string> argv(args.rbegin(), args.rend());  // CLI11 consumes from the back
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "conint: " << e.what() << '\n';
    err << "usage: conint {scan|vqe|spectrum|fcidump|selftest} [options]; see conint --help\n";
    return 2;
  }

  try {
    if (scan_cmd->parsed()) {
      std::vector<std::string> ov = sets;
      if (!molecule.empty()) ov.push_back("molecule=" + molecule);
      if (!method.empty()) ov.push_back("method=" + method);
      if (!basis.empty()) ov.push_back("basis=" + basis);
      if (!output.empty()) ov.push_back("output=" + output);
      if (k > 0) ov.push_back("k=" + std::to_string(k));
      if (seed >= 0) ov.push_back("seed=" + std::to_string(seed));
      if (!range.empty()) {
        const auto r = parse_triple(range, "--range");
        ov.push_back("range.start=" + std::to_string(r[0]));
        ov.push_back("range.stop=" + std::to_string(r[1]));
        ov.push_back("range.step=" + std::to_string(r[2]));
      }
      if (!active.empty()) {
        const auto [ne, no] = parse_active(active);
        ov.push_back("active.electrons=" + std::to_string(ne));
        ov.push_back("active.orbitals=" + std::to_string(no));
      }
      if (fine == "off" || fine == "auto") {
        ov.push_back("fine.mode=" + fine);
      } else if (!fine.empty()) {
        const auto r = parse_triple(fine, "--fine");
        ov.push_back("fine.mode=range");
        ov.push_back("fine.start=" + std::to_string(r[0]));
        ov.push_back("fine.stop=" + std::to_string(r[1]));
        ov.push_back("fine.step=" + std::to_string(r[2]));
      }
      if (config_path.empty() && molecule.empty()) {
        throw UsageError("scan needs --config FILE or at least --molecule and --range");
      }
      return run_scan_command(config_path, ov, out);
    }

    if (vqe_cmd->parsed()) {
      auto s = vqe_pt.spec();
      s.method = scan::Method::VQE;
      s.k = 1;
      try {
        s.ansatz = ansatz::parse_ansatz(ansatz_name);
        s.optimizer = vqa::parse_optimizer(optimizer);
      } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
      }
      s.reps = reps;
      s.restarts = restarts;
      s.spsa.max_iterations = maxiter;
      s.cobyla.max_evaluations = maxiter;
      s.sampled = shots > 0;
      if (shots > 0) s.shots = shots;
      s.seed = vqe_seed;
      s.warm_start = false;
      try {
        s.validate();
      } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
      }
      const auto rec = scan::run_point(s, vqe_pt.coord);
      if (!rec.ok) throw Error(rec.error);
      const auto h = scan::point_hamiltonian(s, vqe_pt.coord);
      const double exact = vqa::exact_spectrum(h, 1, s.mapping).front();
      out << "vqe energy   " << num(rec.energies[0]) << " Ha\n";
      out << "exact energy " << num(exact) << " Ha\n";
      out << "error        " << num((rec.energies[0] - exact) * 1e3) << " mHa\n";
      out << "evaluations  " << rec.states[0].evaluations << '\n';
      return 0;
    }

    if (spec_cmd->parsed()) {
      auto s = spec_pt.spec();
      if (spec_k < 1) throw UsageError("--k must be >= 1");
      const auto h = scan::point_hamiltonian(s, spec_pt.coord);
      std::vector<double> e;
      if (spec_method == "exact") {
        e = vqa::exact_spectrum(h, spec_k, s.mapping);
      } else if (spec_method == "sa-casci") {
        e = vqa::sa_casci(h, std::vector<double>(static_cast<std::size_t>(spec_k), 1.0 / spec_k), spec_k)
                .energies;
      } else {
        throw UsageError("--method must be exact or sa-casci");
      }
      for (std::size_t i = 0; i < e.size(); ++i) out << "E" << i << " " << num(e[i]) << '\n';
      return 0;
    }

    if (fd_export->parsed()) {
      const auto s = fd_pt.spec();
      chem::write_fcidump(scan::point_hamiltonian(s, fd_pt.coord), fd_out);
      out << "wrote " << fd_out << '\n';
      return 0;
    }

    if (fd_import->parsed()) {
      const auto h = chem::read_fcidump(fd_in);
      const auto e = vqa::sa_casci(h, std::vector<double>(static_cast<std::size_t>(fd_k), 1.0 / fd_k), fd_k);
      out << "orbitals " << h.n_orbitals << ", electrons " << h.n_electrons << ", determinants "
          << e.n_determinants << '\n';
      for (std::size_t i = 0; i < e.energies.size(); ++i) out << "E" << i << " " << num(e.energies[i]) << '\n';
      return 0;
    }

    if (self_cmd->parsed()) return print_selftest(out) ? 0 : 1;
  } catch (const UsageError& e) {
    err << "conint: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "conint: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "conint: error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace conint
