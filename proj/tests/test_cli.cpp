#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <doctest.h>
#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) {
    dir = fs::temp_directory_path() / ("rspa_cli_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string(RSPA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

nlohmann::json read_json(const fs::path& path) { return nlohmann::json::parse(slurp(path)); }

}  // namespace

TEST_CASE("equilibrium command writes the solution") {
  Scratch scratch("eq");
  CHECK(run_cli("equilibrium --means 0.5,0.5 --out " + scratch.dir.string()) == 0);
  const auto j = read_json(scratch.dir / "equilibrium.json");
  CHECK(j["k"] == 2);
  CHECK(std::abs(j["alpha"].get<double>() - 0.31784443289937268) < 1e-9);
  CHECK(j["revenue"] == j["alpha"]);
  CHECK(j.contains("config_hash"));
  CHECK(slurp(scratch.dir / "equilibrium.txt").find("alpha=") != std::string::npos);
}

TEST_CASE("equilibrium command resolves the asymmetric cutoff") {
  Scratch scratch("eq3");
  CHECK(run_cli("equilibrium --means 0.6,0.5,0.1 --out " + scratch.dir.string()) == 0);
  const auto j = read_json(scratch.dir / "equilibrium.json");
  CHECK(j["k"] == 2);
  CHECK(j["inactive_means"].size() == 1);
}

TEST_CASE("bad means exit with a usage error") {
  CHECK(run_cli("equilibrium --means 1.2") == 2);
  CHECK(run_cli("equilibrium") == 2);
  CHECK(run_cli("verify") == 2);
  CHECK(run_cli("definitely-not-a-command") == 2);
}

TEST_CASE("symmetric shorthand matches the explicit list") {
  Scratch a("short_a");
  Scratch b("short_b");
  CHECK(run_cli("equilibrium --m 0.5 --n 2 --out " + a.dir.string()) == 0);
  CHECK(run_cli("equilibrium --means 0.5,0.5 --out " + b.dir.string()) == 0);
  CHECK(read_json(a.dir / "equilibrium.json")["alpha"] ==
        read_json(b.dir / "equilibrium.json")["alpha"]);
}

TEST_CASE("verify passes on the flagship and fails when perturbed") {
  Scratch scratch("verify");
  const std::string base =
      "verify --means 0.5,0.5 --samples 20000 --verify-grid 2000 --out " + scratch.dir.string();
  CHECK(run_cli(base) == 0);
  const auto report = read_json(scratch.dir / "report.json");
  CHECK(report["passed"] == true);
  CHECK(report["k"] == 2);

  CHECK(run_cli(base + " --perturb-alpha 0.01") == 1);
  const auto failed = read_json(scratch.dir / "report.json");
  CHECK(failed["passed"] == false);
}

TEST_CASE("oracle command emits the LP solution") {
  Scratch scratch("oracle");
  CHECK(run_cli("oracle --means 0.5,0.5 --grid 21 --reserve-grid 21 --out " +
                scratch.dir.string()) == 0);
  const auto j = read_json(scratch.dir / "oracle.json");
  CHECK(j.contains("game_value"));
  CHECK(j.contains("seller_mixture"));
  CHECK(j.contains("dual_gamma"));
  CHECK(j.contains("dual_eta"));
  CHECK(j["game_value_gap"].get<double>() < 0.06);
  CHECK(run_cli("oracle --means 0.5,0.5,0.5,0.5 --grid 5") == 2);
}

TEST_CASE("simulate command is idempotent and writes the fixed CSV header") {
  Scratch scratch("sim");
  const std::string cmd = "simulate --means 0.5,0.5 --trials 20000 --seed 5 --out " +
                          scratch.dir.string();
  CHECK(run_cli(cmd) == 0);
  const std::string first_csv = slurp(scratch.dir / "simulate.csv");
  const std::string first_json = slurp(scratch.dir / "simulate.json");
  CHECK(first_csv.rfind("n,alpha,mass_above_zero,revenue,stderr\n", 0) == 0);
  CHECK(first_csv.find("# config_hash=") != std::string::npos);
  CHECK(run_cli(cmd) == 0);
  CHECK(slurp(scratch.dir / "simulate.csv") == first_csv);
  CHECK(slurp(scratch.dir / "simulate.json") == first_json);

  const auto j = read_json(scratch.dir / "simulate.json");
  CHECK(j["estimates"].size() == 6);  // f_star plus the five candidates
  CHECK(j["estimates"][0]["name"] == "f_star");
}

TEST_CASE("sweep command writes monotone tables and plot files") {
  Scratch scratch("sweep");
  CHECK(run_cli("sweep --m 0.5 --n-from 2 --n-to 10 --out " + scratch.dir.string()) == 0);
  const std::string csv = slurp(scratch.dir / "sweep.csv");
  CHECK(csv.rfind("n,alpha,mass_above_zero,revenue,stderr\n", 0) == 0);

  const auto j = read_json(scratch.dir / "sweep.json");
  REQUIRE(j["rows"].size() == 9);
  double prev_alpha = 0.0, prev_mass = 2.0;
  for (const auto& row : j["rows"]) {
    CHECK(row["alpha"].get<double>() > prev_alpha);
    CHECK(row["mass_above_zero"].get<double>() < prev_mass);
    prev_alpha = row["alpha"].get<double>();
    prev_mass = row["mass_above_zero"].get<double>();
  }

  for (const char* name : {"alpha_vs_n.svg", "reserve_mass_vs_n.svg", "cdf_overlay_n2.svg",
                           "cdf_overlay_n10.svg"}) {
    const std::string svg = slurp(scratch.dir / name);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("config_hash=") != std::string::npos);
  }

  // the n=2 marginal-CDF polyline shows the two atoms: flat at the bottom up
  // to alpha, a jump of mass (n-1)/n there, and a final jump up to one
  {
    const std::string svg = slurp(scratch.dir / "cdf_overlay_n2.svg");
    const auto start = svg.find("points=\"", svg.find("<polyline"));
    REQUIRE(start != std::string::npos);
    const auto end = svg.find('"', start + 8);
    std::istringstream points(svg.substr(start + 8, end - start - 8));
    std::vector<double> ys;
    std::string pair;
    while (points >> pair) {
      ys.push_back(std::stod(pair.substr(pair.find(',') + 1)));
    }
    REQUIRE(ys.size() > 100);
    int jumps = 0;
    for (std::size_t i = 1; i < ys.size(); ++i) {
      if (ys[i - 1] - ys[i] > 50.0) ++jumps;  // svg y decreases as the CDF rises
    }
    CHECK(jumps == 2);
    CHECK(ys.front() == ys[ys.size() / 4]);  // flat below alpha (~0.32 of the axis)
    CHECK(ys.back() < ys.front());
  }

  const auto sweep_rows = read_json(scratch.dir / "sweep.json")["rows"];
  CHECK(std::abs(sweep_rows[0]["alpha"].get<double>() - 0.31784443289937268) < 1e-9);

  CHECK(run_cli("sweep --m 0.5 --n-from 5 --n-to 2") == 2);
  CHECK(run_cli("sweep --n-from 2 --n-to 5") == 2);
}

TEST_CASE("config file feeds options and flags override it") {
  Scratch scratch("config");
  const fs::path config_path = scratch.dir / "run.cfg";
  {
    std::ofstream out(config_path);
    out << "[equilibrium]\n";
    out << "means=0.5,0.5\n";
  }
  const fs::path out_a = scratch.dir / "a";
  CHECK(run_cli("equilibrium --config " + config_path.string() + " --out " + out_a.string()) ==
        0);
  CHECK(read_json(out_a / "equilibrium.json")["k"] == 2);

  const fs::path out_b = scratch.dir / "b";
  CHECK(run_cli("equilibrium --config " + config_path.string() + " --means 0.6,0.5,0.1 --out " +
                out_b.string()) == 0);
  CHECK(read_json(out_b / "equilibrium.json")["k"] == 2);
  CHECK(read_json(out_b / "equilibrium.json")["sorted_means"].size() == 3);
}
