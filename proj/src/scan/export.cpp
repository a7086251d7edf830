#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "conint/error.hpp"
#include "conint/scan/scan.hpp"

namespace conint::scan {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& s, std::size_t line) {
  if (s == "nan" || s == "NaN") return NAN;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad number '" + s + "'", line);
  }
}

nlohmann::json null_if_nan(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

void write_csv(const std::vector<ScanRecord>& records, int k, const std::string& method,
               std::uint64_t seed, std::ostream& out) {
  if (k < 1) throw InvalidArgument("csv needs k >= 1");
  out << "coordinate";
  for (int i = 0; i < k; ++i) out << ",E" << i;
  out << ",gap01,method,seed\n";
  for (const auto& r : records) {
    out << num(r.coordinate);
    for (int i = 0; i < k; ++i) {
      const bool have = r.ok && static_cast<int>(r.energies.size()) > i;
      out << ',' << num(have ? r.energies[static_cast<std::size_t>(i)] : NAN);
    }
    const bool gap = r.ok && r.energies.size() >= 2;
    out << ',' << num(gap ? r.energies[1] - r.energies[0] : NAN) << ',' << method << ',' << seed
        << '\n';
  }
}

void write_csv(const std::vector<ScanRecord>& records, int k, const std::string& method,
               std::uint64_t seed, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  write_csv(records, k, method, seed, f);
}

std::vector<ScanRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty csv", 1);
  const auto header = split(line, ',');
  if (header.size() < 4 || header[0] != "coordinate") throw ParseError("bad csv header", 1);
  const std::size_t k = header.size() - 4;
  for (std::size_t i = 0; i < k; ++i) {
    if (header[i + 1] != "E" + std::to_string(i)) throw ParseError("bad csv header", 1);
  }
  std::vector<ScanRecord> out;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) throw ParseError("wrong number of columns", n);
    ScanRecord r;
    r.coordinate = parse_number(cells[0], n);
    for (std::size_t i = 0; i < k; ++i) r.energies.push_back(parse_number(cells[i + 1], n));
    for (double e : r.energies) {
      if (std::isnan(e)) r.ok = false;
    }
    if (!r.ok) r.energies.clear();
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ScanRecord> read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot read " + path);
  return read_csv(f);
}

void write_report(const ScanSpec& spec, const ScanResult& result,
                  const std::vector<CrossingReport>& crossings, std::ostream& out) {
  using nlohmann::json;
  json j;
  j["spec"] = {
      {"molecule", to_string(spec.molecule)},
      {"range", {spec.range.start, spec.range.stop, spec.range.step}},
      {"basis", spec.basis},
      {"active_electrons", spec.n_active_electrons},
      {"active_orbitals", spec.n_active_orbitals},
      {"method", to_string(spec.method)},
      {"k", spec.k},
      {"mapping", fq::to_string(spec.mapping)},
      {"seed", spec.seed},
  };
  if (spec.method == Method::VQE || spec.method == Method::VQD || spec.method == Method::VQEAC) {
    j["spec"]["ansatz"] = ansatz::to_string(spec.ansatz);
    j["spec"]["reps"] = spec.reps;
    j["spec"]["optimizer"] = vqa::to_string(spec.optimizer);
    j["spec"]["restarts"] = spec.restarts;
    j["spec"]["sampled"] = spec.sampled;
    if (spec.sampled) j["spec"]["shots"] = spec.shots;
    if (spec.method == Method::VQD) {
      j["spec"]["betas"] =
          spec.betas.empty() ? std::vector<double>(static_cast<std::size_t>(spec.k - 1), 0.5) : spec.betas;
    }
    if (spec.method == Method::VQEAC) j["spec"]["overlap_threshold"] = spec.overlap_threshold;
  }
  json recs = json::array();
  for (const auto& r : result.records) {
    json jr{{"coordinate", r.coordinate}, {"ok", r.ok}, {"wall_time", r.wall_time}};
    if (!r.ok) {
      jr["error"] = r.error;
    } else {
      json e = json::array();
      for (double v : r.energies) e.push_back(null_if_nan(v));
      jr["energies"] = e;
      json st = json::array();
      for (const auto& s : r.states) {
        st.push_back({{"overlaps", s.overlaps}, {"evaluations", s.evaluations}, {"feasible", s.feasible}});
      }
      jr["states"] = st;
    }
    recs.push_back(jr);
  }
  j["records"] = recs;
  j["failed"] = result.failed;
  json cr = json::array();
  for (const auto& c : crossings) {
    cr.push_back({{"states", {c.state_a, c.state_b}},
                  {"coordinate", c.coordinate},
                  {"gap", c.gap},
                  {"grid_step", c.grid_step},
                  {"bracket", {c.left, c.right}},
                  {"boundary", c.boundary}});
  }
  j["crossings"] = cr;
  out << j.dump(2) << '\n';
}

void write_report(const ScanSpec& spec, const ScanResult& result,
                  const std::vector<CrossingReport>& crossings, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  write_report(spec, result, crossings, f);
}

}  // namespace conint::scan
