#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "conint/error.hpp"
#include "conint/scan/scan.hpp"

namespace conint::scan {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw InvalidArgument("config key '" + key + "': expected a number, got '" + v + "'");
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long i = std::stoll(v, &used);
    if (used == v.size()) return i;
  } catch (const std::exception&) {
  }
  throw InvalidArgument("config key '" + key + "': expected an integer, got '" + v + "'");
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw InvalidArgument("config key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::istringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  return out;
}

using Setter = std::function<void(ScanSpec&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto num = [&t](const std::string& k, auto member) {
      t[k] = [member](ScanSpec& s, const std::string& key, const std::string& v) {
        member(s) = to_double(key, v);
      };
    };
    auto integer = [&t](const std::string& k, auto member) {
      t[k] = [member](ScanSpec& s, const std::string& key, const std::string& v) {
        member(s) = static_cast<std::remove_reference_t<decltype(member(s))>>(to_int(key, v));
      };
    };
    auto fine = [](ScanSpec& s) -> FineWindow& {
      if (!s.fine) s.fine = FineWindow{};
      return *s.fine;
    };

    t["molecule"] = [](ScanSpec& s, auto&, const std::string& v) { s.molecule = parse_molecule(v); };
    t["basis"] = [](ScanSpec& s, auto&, const std::string& v) { s.basis = v; };
    t["method"] = [](ScanSpec& s, auto&, const std::string& v) { s.method = parse_method(v); };
    t["mapping"] = [](ScanSpec& s, auto&, const std::string& v) { s.mapping = fq::parse_mapping(v); };
    t["output"] = [](ScanSpec& s, auto&, const std::string& v) { s.output = v; };
    integer("k", [](ScanSpec& s) -> int& { return s.k; });
    integer("seed", [](ScanSpec& s) -> std::uint64_t& { return s.seed; });
    integer("workers", [](ScanSpec& s) -> int& { return s.workers; });

    num("range.start", [](ScanSpec& s) -> double& { return s.range.start; });
    num("range.stop", [](ScanSpec& s) -> double& { return s.range.stop; });
    num("range.step", [](ScanSpec& s) -> double& { return s.range.step; });

    t["fine.mode"] = [fine](ScanSpec& s, const std::string& key, const std::string& v) {
      if (v == "off") {
        s.fine.reset();
      } else if (v == "auto") {
        fine(s).automatic = true;
      } else if (v == "range") {
        fine(s).automatic = false;
      } else {
        throw InvalidArgument("config key '" + key + "': expected off, auto or range");
      }
    };
    num("fine.start", [fine](ScanSpec& s) -> double& { return fine(s).range.start; });
    num("fine.stop", [fine](ScanSpec& s) -> double& { return fine(s).range.stop; });
    t["fine.step"] = [fine](ScanSpec& s, const std::string& key, const std::string& v) {
      fine(s).step = fine(s).range.step = to_double(key, v);
    };
    num("fine.half_width", [fine](ScanSpec& s) -> double& { return fine(s).half_width; });

    integer("active.electrons", [](ScanSpec& s) -> int& { return s.n_active_electrons; });
    integer("active.orbitals", [](ScanSpec& s) -> int& { return s.n_active_orbitals; });

    num("geometry.bond_length", [](ScanSpec& s) -> double& { return s.geometry.water.bond_length; });
    num("geometry.angle", [](ScanSpec& s) -> double& { return s.geometry.water.angle; });
    num("geometry.hh_distance", [](ScanSpec& s) -> double& { return s.geometry.jacobi.hh_distance; });
    num("geometry.gamma", [](ScanSpec& s) -> double& { return s.geometry.jacobi.gamma; });
    num("geometry.cn", [](ScanSpec& s) -> double& { return s.geometry.methanimine.cn; });
    num("geometry.ch", [](ScanSpec& s) -> double& { return s.geometry.methanimine.ch; });
    num("geometry.nh", [](ScanSpec& s) -> double& { return s.geometry.methanimine.nh; });
    num("geometry.hch", [](ScanSpec& s) -> double& { return s.geometry.methanimine.hch; });

    t["variational.ansatz"] = [](ScanSpec& s, auto&, const std::string& v) { s.ansatz = ansatz::parse_ansatz(v); };
    t["variational.entanglement"] = [](ScanSpec& s, auto&, const std::string& v) {
      s.entanglement = ansatz::parse_entanglement(v);
    };
    t["variational.optimizer"] = [](ScanSpec& s, auto&, const std::string& v) {
      s.optimizer = vqa::parse_optimizer(v);
    };
    integer("variational.reps", [](ScanSpec& s) -> int& { return s.reps; });
    integer("variational.restarts", [](ScanSpec& s) -> int& { return s.restarts; });
    integer("variational.shots", [](ScanSpec& s) -> int& { return s.shots; });
    t["variational.sampled"] = [](ScanSpec& s, const std::string& key, const std::string& v) {
      s.sampled = to_bool(key, v);
    };
    t["variational.warm_start"] = [](ScanSpec& s, const std::string& key, const std::string& v) {
      s.warm_start = to_bool(key, v);
    };

    integer("spsa.max_iterations", [](ScanSpec& s) -> int& { return s.spsa.max_iterations; });
    num("spsa.a", [](ScanSpec& s) -> double& { return s.spsa.a; });
    num("spsa.c", [](ScanSpec& s) -> double& { return s.spsa.c; });
    num("spsa.A", [](ScanSpec& s) -> double& { return s.spsa.A; });
    num("spsa.alpha", [](ScanSpec& s) -> double& { return s.spsa.alpha; });
    num("spsa.gamma", [](ScanSpec& s) -> double& { return s.spsa.gamma; });
    num("spsa.target_first_step", [](ScanSpec& s) -> double& { return s.spsa.target_first_step; });
    integer("spsa.calibration_samples", [](ScanSpec& s) -> int& { return s.spsa.calibration_samples; });
    integer("spsa.seed", [](ScanSpec& s) -> std::uint64_t& { return s.spsa.seed; });

    num("cobyla.rhobeg", [](ScanSpec& s) -> double& { return s.cobyla.rhobeg; });
    num("cobyla.rhoend", [](ScanSpec& s) -> double& { return s.cobyla.rhoend; });
    integer("cobyla.max_evaluations", [](ScanSpec& s) -> int& { return s.cobyla.max_evaluations; });

    t["vqd.betas"] = [](ScanSpec& s, const std::string& key, const std::string& v) {
      s.betas = to_list(key, v);
    };
    num("vqe-ac.overlap_threshold", [](ScanSpec& s) -> double& { return s.overlap_threshold; });
    return t;
  }();
  return table;
}

}  // namespace

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string section, raw;
  for (std::size_t n = 1; std::getline(in, raw); ++n) {
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) throw ParseError("malformed section header", n);
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", n);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", n);
    const std::string full = section.empty() ? key : section + "." + key;
    if (!out.emplace(full, value).second) throw ParseError("duplicate key '" + full + "'", n);
  }
  return out;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot read config " + path);
  return parse_config(f);
}

ScanSpec spec_from_config(const std::map<std::string, std::string>& config) {
  ScanSpec spec;
  // `fine.mode` goes last so an explicit "off" is not undone by other fine keys.
  std::vector<std::pair<std::string, std::string>> ordered(config.begin(), config.end());
  std::stable_partition(ordered.begin(), ordered.end(),
                        [](const auto& kv) { return kv.first != "fine.mode"; });
  for (const auto& [key, value] : ordered) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw InvalidArgument("unknown config key '" + key + "'");
    it->second(spec, key, value);
  }
  // An explicit window without a mode means the window itself.
  if (spec.fine && !config.count("fine.mode") &&
      (config.count("fine.start") || config.count("fine.stop"))) {
    spec.fine->automatic = false;
  }
  spec.validate();
  return spec;
}

}  // namespace conint::scan
