#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "conint/cli.hpp"
#include "conint/scan/scan.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = conint::cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "conint_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("spectrum prints the lowest energies") {
  const auto r = run({"spectrum", "--molecule", "h2o-scaled", "--coord", "1.0", "--active", "4,3", "--k", "3"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string label;
  double e0 = 0, e1 = 0, e2 = 0;
  in >> label >> e0 >> label >> e1 >> label >> e2;
  CHECK(e0 == doctest::Approx(-74.96753241).epsilon(1e-9));
  CHECK(e1 == doctest::Approx(-74.5633892).epsilon(1e-8));
  CHECK(e2 < -74.48);
}

TEST_CASE("usage errors exit with status 2") {
  auto r = run({"spectrum", "--bogus"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"scan", "--method", "hartree"}).code == 2);

  const auto cfg = scratch("broken.cfg");
  std::ofstream(cfg) << "molecule = ch2nh\nthis line has no separator\n";
  r = run({"scan", "--config", cfg.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("2") != std::string::npos);  // line number in the message
  CHECK(run({"scan", "--config", scratch("missing.cfg").string()}).code != 0);
}

TEST_CASE("help exits cleanly") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("scan") != std::string::npos);
}

TEST_CASE("scan from a config writes CSV and JSON") {
  const auto csv = scratch("ch2nh.csv");
  fs::remove(csv);
  const auto r = run({"scan", "--config", std::string(CONINT_CONFIG_DIR) + "/experiment4_ch2nh.cfg", "--range",
                      "80,110,10", "--fine", "off", "--output", csv.string()});
  REQUIRE(r.code == 0);
  const auto records = conint::scan::read_csv(csv.string());
  CHECK(records.size() == 4);
  auto json_path = csv;
  json_path.replace_extension(".json");
  REQUIRE(fs::exists(json_path));
  std::ifstream in(json_path);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["spec"]["method"] == "sa-casci");
  CHECK(j["records"].size() == 4);
}

TEST_CASE("fcidump export and import agree") {
  const auto path = scratch("h2o.fcidump");
  auto r = run({"fcidump", "export", "--molecule", "h2o-scaled", "--coord", "1.0", "--active", "4,3", "--output",
                path.string()});
  REQUIRE(r.code == 0);
  r = run({"fcidump", "import", path.string(), "--k", "1"});
  REQUIRE(r.code == 0);
  const auto at = r.out.find("E0 ");
  REQUIRE(at != std::string::npos);
  CHECK(std::stod(r.out.substr(at + 3)) == doctest::Approx(-74.96753240).epsilon(1e-9));
}
