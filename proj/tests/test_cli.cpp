#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

fs::path work(const std::string& name) {
  fs::path p = fs::path(WORK_DIR) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int cli(const std::string& args) {
  const std::string cmd = std::string("\"") + HYPTUBE_BIN + "\" " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string head(const fs::path& p, int n = 2) {
  std::ifstream is(p);
  std::string line, out;
  for (int k = 0; k < n && std::getline(is, line); ++k) out += line + "\n";
  return out;
}

std::vector<std::vector<std::string>> rows(const fs::path& p) {
  std::ifstream is(p);
  std::string line;
  std::vector<std::vector<std::string>> out;
  std::getline(is, line);
  std::getline(is, line);
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    out.push_back(cells);
  }
  return out;
}

void write(const fs::path& p, const json& j) { std::ofstream(p) << j.dump(2); }

std::string config(const char* name) { return std::string(" --config \"") + CONFIG_DIR + "/" + name + "\""; }

std::string golden(const char* name) { return slurp(fs::path(GOLDEN_DIR) / name); }

}  // namespace

TEST_CASE("verify: exit 0, schema, determinism") {
  const fs::path a = work("verify_a"), b = work("verify_b");
  REQUIRE(cli("verify --out " + a.string()) == 0);
  REQUIRE(cli("verify --out " + b.string()) == 0);
  CHECK(head(a / "verify.csv") == golden("verify.csv.head"));
  CHECK(slurp(a / "verify.csv") == slurp(b / "verify.csv"));
  const json s = json::parse(slurp(a / "verify_summary.json"));
  CHECK(s["pass"] == true);
  CHECK(s["failed"] == 0);
  for (const auto& r : rows(a / "verify.csv")) {
    REQUIRE(r.size() == 5);
    CHECK(r[4] == "true");
  }
}

TEST_CASE("verify: failing tolerance gives exit 1") {
  const fs::path d = work("verify_tight");
  write(d / "cfg.json", {{"command", "verify"}, {"params", {{"tolerance_override", 1e-18}}}});
  CHECK(cli("--config " + (d / "cfg.json").string() + " --out " + d.string()) == 1);
  CHECK(json::parse(slurp(d / "verify_summary.json"))["pass"] == false);
}

TEST_CASE("seed flag is recorded") {
  const fs::path d = work("verify_seed");
  REQUIRE(cli("verify --seed 5 --out " + d.string()) == 0);
  CHECK(head(d / "verify.csv", 1) == "# seed=5\n");
}

TEST_CASE("config errors give exit 2") {
  const fs::path d = work("bad");
  std::ofstream(d / "broken.json") << "{\"command\": ";
  CHECK(cli("--config " + (d / "broken.json").string() + " --out " + d.string()) == 2);
  CHECK(cli("--config " + (d / "missing.json").string()) == 2);
  CHECK(cli("frobnicate --out " + d.string()) == 2);
  CHECK(cli("verify --tol-scale -1 --out " + d.string()) == 2);
  write(d / "empty_tau.json", {{"command", "s-transform"}, {"params", {{"eta", {0.5}}, {"tau", json::array()}}}});
  CHECK(cli("--config " + (d / "empty_tau.json").string() + " --out " + d.string()) == 2);
  write(d / "conflict.json", {{"command", "growth"}});
  CHECK(cli("verify --config " + (d / "conflict.json").string() + " --out " + d.string()) == 2);
  // the line leaves the tube
  write(d / "outside.json",
        {{"command", "growth"},
         {"params",
          {{"tau", 5},
           {"slice",
            {{"kind", "line"}, {"P0", {{"X", {0, 0.2}}, {"Y", 1}}}, {"V", {{"X", {0, 1}}, {"Y", 0}}}, {"re", {-1, 1}},
             {"im", {-1, 1}}}}}}});
  CHECK(cli("--config " + (d / "outside.json").string() + " --out " + d.string()) == 2);
}

TEST_CASE("s-transform sweep") {
  const fs::path d = work("s");
  REQUIRE(cli(config("s_transform.json") + " --out " + d.string()) == 0);
  CHECK(head(d / "s_transform.csv") == golden("s_transform.csv.head"));
  const auto rs = rows(d / "s_transform.csv");
  CHECK(rs.size() == 3 * 4 * 4);
  long unavailable = 0;
  for (const auto& r : rs) {
    REQUIRE(r.size() == 9);
    if (r[3] == "formula1d:unavailable") {
      ++unavailable;
      CHECK(std::stod(r[1]) > 30);
    }
    CHECK(r[3] != "auto");
  }
  CHECK(unavailable == 3 * 2);
  const json s = json::parse(slurp(d / "s_transform_summary.json"));
  CHECK(s["rows"] == 48);
  CHECK(s["unavailable"] == 6);

  const fs::path e = work("s2");
  REQUIRE(cli(config("s_transform.json") + " --out " + e.string()) == 0);
  CHECK(slurp(d / "s_transform.csv") == slurp(e / "s_transform.csv"));
}

TEST_CASE("continue matches the closed form") {
  const fs::path d = work("cont");
  REQUIRE(cli(config("continue.json") + " --out " + d.string()) == 0);
  CHECK(head(d / "continue.csv") == golden("continue.csv.head"));
  const auto rs = rows(d / "continue.csv");
  CHECK(rs.size() == 60);
  for (const auto& r : rs) CHECK(std::stod(r[11]) <= 1e-5);
  CHECK(json::parse(slurp(d / "continue_summary.json"))["max_rel_deviation"].get<double>() <= 1e-5);
}

TEST_CASE("growth table") {
  const fs::path d = work("growth");
  REQUIRE(cli(config("growth.json") + " --out " + d.string()) == 0);
  CHECK(head(d / "growth.csv") == golden("growth.csv.head"));
  const auto rs = rows(d / "growth.csv");
  CHECK(rs.size() == 24 * 48);
  for (const auto& r : rs) {
    REQUIRE(r.size() == 10);
    CHECK(std::stod(r[7]) <= 1e-12);  // B0 <= 0
  }

  const fs::path e = work("growth_pi");
  write(e / "cfg.json", {{"command", "growth"},
                         {"params",
                          {{"tau", 10},
                           {"slice", {{"t", {0.1, 0.5, 5}}, {"theta", {M_PI, M_PI, 1}}}}}}});
  REQUIRE(cli("--config " + (e / "cfg.json").string() + " --out " + e.string()) == 0);
  for (const auto& r : rows(e / "growth.csv")) CHECK(std::abs(std::stod(r[7])) < 1e-14);
}

TEST_CASE("nodal report") {
  const fs::path d = work("nodal");
  REQUIRE(cli(config("nodal.json") + " --out " + d.string()) == 0);
  CHECK(head(d / "nodal.csv") == golden("nodal.csv.head"));
  const json s = json::parse(slurp(d / "nodal_summary.json"));
  CHECK(s["count_mismatches"] == 0);
  CHECK(s["tau"] == 20);
  CHECK(s.contains("total_count"));
  CHECK(s["b0_density_integral"].is_number());
  long cubic = 0, dbl = 0;
  for (const auto& r : rows(d / "nodal.csv")) {
    if (r[0] == "cubic") {
      ++cubic;
      CHECK(r[3] == "1");
    }
    if (r[0] == "double" && r[3] == "2") ++dbl;
  }
  CHECK(cubic == 3);
  CHECK(dbl == 1);

  const fs::path e = work("nodal2");
  REQUIRE(cli(config("nodal.json") + " --out " + e.string()) == 0);
  CHECK(slurp(d / "nodal.csv") == slurp(e / "nodal.csv"));
}
