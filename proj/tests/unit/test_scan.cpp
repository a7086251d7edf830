#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "conint/error.hpp"
#include "conint/scan/scan.hpp"

using namespace conint;
using namespace conint::scan;

namespace {

std::vector<ScanRecord> synthetic(double start, double stop, double step, double (*gap)(double)) {
  std::vector<ScanRecord> out;
  for (double x : Range{start, stop, step}.points()) {
    ScanRecord r;
    r.coordinate = x;
    r.energies = {-1.0, -1.0 + gap(x)};
    out.push_back(r);
  }
  return out;
}

ScanSpec ch2nh_exact(double step) {
  ScanSpec s;
  s.molecule = Molecule::CH2NH;
  s.method = Method::Exact;
  s.range = {60.0, 300.0, step};
  return s;
}

std::string csv_text(const ScanSpec& s, const ScanResult& r) {
  std::ostringstream o;
  write_csv(r.records, s.k, to_string(s.method), s.seed, o);
  return o.str();
}

const ScanResult& ch2nh_reference_scan() {
  static const ScanResult r = [] {
    auto s = ch2nh_exact(5.0);
    s.fine = FineWindow{};
    s.fine->step = 2.0;
    return run_scan(s);
  }();
  return r;
}

}  // namespace

TEST_CASE("grids") {
  CHECK(Range{0.0, 1.0, 0.25}.points().size() == 5);
  CHECK(Range{1.0, 1.0, 0.5}.points() == std::vector<double>{1.0});
  CHECK(Range{60.0, 300.0, 5.0}.points().size() == 49);
  CHECK(Range{0.34, 2.0, 0.02}.points().back() == doctest::Approx(2.0));
  CHECK_THROWS_AS(Range({0.0, 1.0, 0.0}).validate(), InvalidArgument);
  CHECK_THROWS_AS(Range({1.0, 0.0, 0.1}).validate(), InvalidArgument);
}

TEST_CASE("spec validation") {
  ScanSpec s = ch2nh_exact(5.0);
  CHECK_NOTHROW(s.validate());
  s.fine = FineWindow{false, {50.0, 70.0, 1.0}};
  CHECK_THROWS_AS(s.validate(), InvalidArgument);  // window outside the range
  s.fine.reset();
  s.method = Method::VQE;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);  // vqe with k = 2
  s.method = Method::VQD;
  s.betas = {0.3, 0.3};
  CHECK_THROWS_AS(s.validate(), InvalidArgument);  // k - 1 betas expected
  s.betas = {0.3};
  CHECK_NOTHROW(s.validate());
  s.basis = "cc-pvdz";
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
}

TEST_CASE("single-point scan gives one record") {
  ScanSpec s;
  s.molecule = Molecule::H2OScaled;
  s.range = {1.0, 1.0, 0.1};
  s.k = 3;
  const auto r = run_scan(s);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].energies.size() == 3);
  CHECK(r.records[0].energies[0] == doctest::Approx(-74.96753241).epsilon(1e-9));
}

TEST_CASE("gap minimum of a synthetic V") {
  const auto recs = synthetic(0.0, 4.0, 0.5, [](double x) { return std::abs(x - 2.0) + 0.1; });
  const auto c = detect_min_gap(recs);
  CHECK_FALSE(c.boundary);
  CHECK(std::abs(c.coordinate - 2.0) <= 0.25);
  CHECK(c.gap >= 0.0);
  CHECK(c.grid_step == doctest::Approx(0.5));
  CHECK(c.left == doctest::Approx(1.5));
  CHECK(c.right == doctest::Approx(2.5));

  // Parabolic refinement recovers an off-grid parabola minimum exactly.
  const auto p = synthetic(0.0, 4.0, 0.5, [](double x) { return (x - 1.7) * (x - 1.7) + 0.05; });
  const auto cp = detect_min_gap(p);
  CHECK(cp.coordinate == doctest::Approx(1.7).epsilon(1e-12));
  CHECK(cp.gap == doctest::Approx(0.05).epsilon(1e-12));

  // A refined parabola dipping below zero is clamped.
  const auto z = synthetic(0.0, 4.0, 1.0, [](double x) { return std::abs(x - 2.4) * 0.5; });
  CHECK(detect_min_gap(z).gap >= 0.0);
}

TEST_CASE("monotone gaps are flagged as boundary minima") {
  const auto recs = synthetic(0.0, 4.0, 0.5, [](double x) { return 0.1 + x; });
  const auto c = detect_min_gap(recs);
  CHECK(c.boundary);
  CHECK(c.coordinate == 0.0);
  CHECK(local_gap_minima(recs).empty());
  CHECK_THROWS_AS(detect_min_gap(synthetic(0.0, 0.5, 0.5, [](double x) { return x; })), InvalidArgument);
}

TEST_CASE("CH2NH exact scan: two mirror-symmetric avoided crossings") {
  const auto& r = ch2nh_reference_scan();
  CHECK(r.failed.empty());
  const auto minima = local_gap_minima(r.records);
  REQUIRE(minima.size() == 2);
  CHECK(std::abs(minima[0].coordinate + minima[1].coordinate - 360.0) < 1e-6);
  CHECK(std::abs(minima[0].gap - minima[1].gap) < 1e-8);
  // gap(a) = gap(360 - a)
  for (const auto& a : r.records)
    for (const auto& b : r.records)
      if (std::abs(a.coordinate + b.coordinate - 360.0) < 1e-9) {
        CHECK(std::abs((a.energies[1] - a.energies[0]) - (b.energies[1] - b.energies[0])) < 1e-8);
      }
  // fine window at 2 degrees around each coarse minimum, merged in order
  CHECK(r.records.size() == 49 + 16);
  for (std::size_t i = 1; i < r.records.size(); ++i) CHECK(r.records[i].coordinate > r.records[i - 1].coordinate);
}

TEST_CASE("CH2NH exact scan matches the golden file") {
  const auto golden = read_csv(std::string(CONINT_TEST_DATA) + "/golden_ch2nh_exact_4_3.csv");
  const auto& r = ch2nh_reference_scan();
  REQUIRE(golden.size() == r.records.size());
  for (std::size_t i = 0; i < golden.size(); ++i) {
    CHECK(golden[i].coordinate == r.records[i].coordinate);
    for (int s = 0; s < 2; ++s) CHECK(std::abs(golden[i].energies[s] - r.records[i].energies[s]) < 1e-9);
  }
}

TEST_CASE("crossing detection is grid-stable") {
  const auto coarse = run_scan(ch2nh_exact(10.0));
  const auto fine = run_scan(ch2nh_exact(5.0));
  const auto a = local_gap_minima(coarse.records), b = local_gap_minima(fine.records);
  REQUIRE(a.size() == 2);
  REQUIRE(b.size() == 2);
  for (int i = 0; i < 2; ++i) CHECK(std::abs(a[i].coordinate - b[i].coordinate) <= 10.0);
}

TEST_CASE("H2O bond scan has its ground minimum near equilibrium") {
  ScanSpec s;
  s.molecule = Molecule::H2OScaled;
  s.range = {0.34, 2.0, 0.06};
  s.k = 3;
  const auto r = run_scan(s);
  CHECK(r.failed.empty());
  std::size_t best = 0;
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    CHECK(r.records[i].energies.size() == 3);
    CHECK(r.records[i].energies[0] <= r.records[i].energies[1]);
    CHECK(r.records[i].energies[1] <= r.records[i].energies[2]);
    if (r.records[i].energies[0] < r.records[best].energies[0]) best = i;
  }
  CHECK(std::abs(r.records[best].coordinate - 1.0) < 0.1);
}

TEST_CASE("failed points are recorded and the scan continues") {
  ScanSpec s;
  s.molecule = Molecule::H2OJacobi;
  s.basis = "6-31g";
  s.range = {0.5, 0.7, 0.1};
  const auto r = run_scan(s);
  REQUIRE(r.records.size() == 3);
  CHECK(r.records[0].ok);
  CHECK(r.failed.size() == 2);
  CHECK_FALSE(r.records[1].ok);
  CHECK(r.records[1].error.find("RHF") != std::string::npos);
  const auto text = csv_text(s, r);
  CHECK(text.find("nan") != std::string::npos);
  std::istringstream in(text);
  const auto back = read_csv(in);
  CHECK_FALSE(back[1].ok);
}

TEST_CASE("CSV round trip is bit-exact; empty input gives a header") {
  const auto& r = ch2nh_reference_scan();
  std::ostringstream o;
  write_csv(r.records, 2, "exact", 1, o);
  std::istringstream in(o.str());
  const auto back = read_csv(in);
  REQUIRE(back.size() == r.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i].energies == r.records[i].energies);

  std::ostringstream e;
  write_csv({}, 3, "vqd", 9, e);
  CHECK(e.str() == "coordinate,E0,E1,E2,gap01,method,seed\n");
  std::istringstream bad("coordinate,E0,gap01,method,seed\n1.0,abc,0,exact,1\n");
  CHECK_THROWS_AS(read_csv(bad), ParseError);
  CHECK_THROWS(write_csv(r.records, 2, "exact", 1, "/nonexistent-dir/x.csv"));
}

TEST_CASE("identical specs give identical CSV bytes") {
  ScanSpec s;
  s.molecule = Molecule::H2OScaled;
  s.range = {0.8, 1.2, 0.2};
  s.method = Method::VQD;
  s.optimizer = vqa::OptimizerKind::SPSA;
  s.spsa.max_iterations = 200;
  s.seed = 3;
  const auto a = csv_text(s, run_scan(s));
  CHECK(a == csv_text(s, run_scan(s)));
  s.warm_start = false;
  s.workers = 2;
  const auto b = csv_text(s, run_scan(s));
  s.workers = 1;
  CHECK(b == csv_text(s, run_scan(s)));
  s.seed = 4;
  CHECK(b != csv_text(s, run_scan(s)));
}

TEST_CASE("exact-mode VQE never undercuts the exact ground state") {
  ScanSpec s;
  s.molecule = Molecule::H2OScaled;
  s.range = {0.7, 1.9, 0.6};
  s.method = Method::VQE;
  s.k = 1;
  s.cobyla.max_evaluations = 400;
  const auto v = run_scan(s);
  s.method = Method::Exact;
  const auto e = run_scan(s);
  for (std::size_t i = 0; i < v.records.size(); ++i) {
    CHECK(v.records[i].energies[0] >= e.records[i].energies[0] - 1e-9);
  }
}

TEST_CASE("warm starts do not end above cold starts on the CH2NH sweep") {
  ScanSpec s;
  s.molecule = Molecule::CH2NH;
  s.range = {80.0, 110.0, 5.0};
  s.method = Method::VQE;
  s.k = 1;
  s.optimizer = vqa::OptimizerKind::COBYLA;
  s.cobyla.max_evaluations = 3000;
  const auto warm = run_scan(s);
  s.warm_start = false;
  const auto cold = run_scan(s);
  REQUIRE(warm.records.size() == cold.records.size());
  for (std::size_t i = 0; i < warm.records.size(); ++i) {
    CHECK(warm.records[i].energies[0] <= cold.records[i].energies[0] + 1e-3);
  }
}

TEST_CASE("structured report") {
  auto s = ch2nh_exact(20.0);
  const auto r = run_scan(s);
  const auto minima = local_gap_minima(r.records);
  std::ostringstream o;
  write_report(s, r, minima, o);
  const auto j = nlohmann::json::parse(o.str());
  CHECK(j["spec"]["molecule"] == "ch2nh");
  CHECK(j["records"].size() == r.records.size());
  CHECK(j["crossings"].size() == minima.size());
  CHECK(j["records"][0]["energies"].size() == 2);
}

TEST_CASE("configuration files") {
  std::istringstream in(
      "# comment\nmolecule = ch2nh\nmethod = vqd\nk = 2\n\n[range]\nstart = 60\nstop = 120 # inline\nstep = 5\n"
      "[fine]\nstart = 80\nstop = 100\nstep = 2\n[vqd]\nbetas = 0.3\n[variational]\noptimizer = cobyla\n"
      "restarts = 4\n[geometry]\ncn = 1.3\n");
  const auto cfg = parse_config(in);
  CHECK(cfg.at("range.stop") == "120");
  const auto s = spec_from_config(cfg);
  CHECK(s.method == Method::VQD);
  CHECK(s.betas == std::vector<double>{0.3});
  CHECK(s.restarts == 4);
  REQUIRE(s.fine);
  CHECK_FALSE(s.fine->automatic);
  CHECK(s.fine->range.start == 80.0);
  CHECK(s.geometry.methanimine.cn == 1.3);

  std::istringstream unknown("molecule = ch2nh\ncolour = blue\n");
  CHECK_THROWS_AS(spec_from_config(parse_config(unknown)), InvalidArgument);
  std::istringstream noeq("molecule ch2nh\n");
  try {
    parse_config(noeq);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  std::istringstream dup("k = 2\nk = 3\n");
  CHECK_THROWS_AS(parse_config(dup), ParseError);
  std::istringstream badnum("k = two\n");
  CHECK_THROWS_AS(spec_from_config(parse_config(badnum)), InvalidArgument);
  std::istringstream off("[fine]\nmode = off\nstep = 2\n[range]\nstart = 60\nstop = 70\nstep = 5\n");
  CHECK_FALSE(spec_from_config(parse_config(off)).fine);
}

TEST_CASE("shipped experiment files parse") {
  for (const char* name : {"experiment1_exact", "experiment1_vqe_noisy", "experiment1_vqd", "experiment1_vqeac",
                           "experiment2", "experiment2_exact_12_9", "experiment3", "experiment4_h2o",
                           "experiment4_ch2nh"}) {
    CAPTURE(name);
    CHECK_NOTHROW(spec_from_config(parse_config_file(std::string(CONINT_CONFIG_DIR) + "/" + name + ".cfg")));
  }
}

TEST_CASE("worker count") {
  ScanSpec s;
  s.workers = 3;
  CHECK(worker_count(s) == 3);
  s.workers = 0;
  setenv("CONINT_WORKERS", "5", 1);
  CHECK(worker_count(s) == 5);
  setenv("CONINT_WORKERS", "junk", 1);
  CHECK(worker_count(s) >= 1);
  unsetenv("CONINT_WORKERS");
}
