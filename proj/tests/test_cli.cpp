#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

const char* cli_path() { return std::getenv("MVCP_CLI"); }

int run_cli(const std::string& args, const std::string& out_file) {
  std::string cmd = std::string(cli_path()) + " " + args + " >" + out_file +
                    " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty() && line[0] != '#') out.push_back(nlohmann::json::parse(line));
  return out;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("simulate produces a config, events and a summary") {
    if (!cli_path()) {
      MESSAGE("MVCP_CLI not set; run through ctest");
      return;
    }
    int rc = run_cli(
        "simulate --tree finite:3:19 --init root:1 --lambda 1.0 "
        "--phi 0.1,0.5,1.0 --seed 42",
        "/tmp/mvcp_sim.jsonl");
    CHECK(rc == 0);
    auto lines = json_lines(slurp("/tmp/mvcp_sim.jsonl"));
    REQUIRE(lines.size() >= 2);
    CHECK(lines.front().at("type") == "config");
    CHECK(lines.front().at("version").is_string());
    CHECK(lines.back().at("type") == "summary");
    CHECK(lines.back().at("kind") == "extinction");
    for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
      CHECK(lines[i].contains("t"));
      CHECK(lines[i].contains("kind"));
    }
  }

  TEST_CASE("same config and seed give byte-identical output") {
    if (!cli_path()) return;
    std::string args =
        "simulate --tree ball:3:3 --init root:1 --lambda 2.0 "
        "--phi 0.1,0.5,1.0 --stop-boundary --max-events 100000 --seed 7";
    CHECK(run_cli(args, "/tmp/mvcp_rep1.jsonl") == 0);
    CHECK(run_cli(args, "/tmp/mvcp_rep2.jsonl") == 0);
    std::string a = slurp("/tmp/mvcp_rep1.jsonl");
    CHECK(!a.empty());
    CHECK(a == slurp("/tmp/mvcp_rep2.jsonl"));
  }

  TEST_CASE("invalid configurations exit with code 2") {
    if (!cli_path()) return;
    CHECK(run_cli("simulate --tree finite:3:19 --lambda 0 --phi 0.1,0.5,1.0",
                  "/dev/null") == 2);
    CHECK(run_cli("simulate --tree finite:3:19 --lambda 1 --phi 0.1,0.5,0.9",
                  "/dev/null") == 2);
    CHECK(run_cli("simulate --lambda 1 --phi 1.0", "/dev/null") == 2);
    CHECK(run_cli("simulate --tree finite:3:19 --lambda 1 --phi 0.5,0.2,1.0",
                  "/dev/null") == 2);
    CHECK(run_cli("simulate --tree finite:3:19 --lambda 1 --phi 0.1,0.5,1.0 "
                  "--init 99:1",
                  "/dev/null") == 2);
    // Initial count above M-1 is rejected up front.
    CHECK(run_cli("simulate --tree finite:3:19 --lambda 1 --phi 0.1,0.5,1.0 "
                  "--init root:3",
                  "/dev/null") == 2);
    CHECK(run_cli("simulate --tree nosuch:3:19 --lambda 1 --phi 1.0",
                  "/dev/null") == 2);
  }

  TEST_CASE("bounds subcommand emits the spot value") {
    if (!cli_path()) return;
    CHECK(run_cli("bounds --d 4 --phi 0.1,0.2,1.0", "/tmp/mvcp_bounds.json") == 0);
    auto j = nlohmann::json::parse(slurp("/tmp/mvcp_bounds.json"));
    CHECK(j.at("lambda_star_lower").at("defined") == true);
    CHECK(std::abs(j.at("lambda_star_lower").at("value").get<double>() -
                   1.0 / 2.4) < 1e-12);
    CHECK(j.at("dead_branch_exceeds_lower") == true);
    CHECK(run_cli("bounds --d 2 --phi 0.1,1.0", "/dev/null") == 2);
  }

  TEST_CASE("oracle subcommand reports walk quantities") {
    if (!cli_path()) return;
    CHECK(run_cli("oracle --lambda 1 --phi 0,0,1 --replicas 1000",
                  "/tmp/mvcp_oracle.json") == 0);
    auto j = nlohmann::json::parse(slurp("/tmp/mvcp_oracle.json"));
    CHECK(j.at("p_w").get<double>() == doctest::Approx(0.5));
    CHECK(j.at("absorption_probability").get<double>() == 1.0);
    CHECK(j.at("simulated").at("replicas") == 1000);
  }

  TEST_CASE("sweep emits one row per lambda and depth") {
    if (!cli_path()) return;
    CHECK(run_cli("sweep --d 3 --depths 1,2 --phi 0,0.1,1 --lambdas 0.4,0.8 "
                  "--replicas 50 --seed 3",
                  "/tmp/mvcp_sweep.csv") == 0);
    std::string text = slurp("/tmp/mvcp_sweep.csv");
    CHECK(text.rfind("# mvcp", 0) == 0);
    int rows = 0;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
      if (!line.empty() && line[0] != '#' && line.rfind("lambda", 0) != 0) ++rows;
    CHECK(rows == 4);
    CHECK(run_cli("sweep --d 3 --depths 2 --phi 0,0.1,1 --lambdas 0.8,0.4 "
                  "--replicas 10",
                  "/dev/null") == 2);
  }

  TEST_CASE("config file fills defaults, flags override it") {
    if (!cli_path()) return;
    {
      std::ofstream ini("/tmp/mvcp_cfg.ini");
      ini << "[simulate]\ntree=\"finite:3:19\"\nlambda=2.0\n"
             "phi=\"0.1,0.5,1.0\"\nseed=11\nthin=true\n";
    }
    CHECK(run_cli("--config /tmp/mvcp_cfg.ini simulate", "/tmp/mvcp_cfg1.jsonl") ==
          0);
    auto from_cfg = json_lines(slurp("/tmp/mvcp_cfg1.jsonl"));
    CHECK(from_cfg.front().at("lambda").get<double>() == 2.0);

    CHECK(run_cli("--config /tmp/mvcp_cfg.ini simulate --lambda 7.5",
                  "/tmp/mvcp_cfg2.jsonl") == 0);
    auto overridden = json_lines(slurp("/tmp/mvcp_cfg2.jsonl"));
    CHECK(overridden.front().at("lambda").get<double>() == 7.5);
  }

  TEST_CASE("graph file input round-trips through simulate") {
    if (!cli_path()) return;
    {
      std::ofstream g("/tmp/mvcp_graph.txt");
      g << "vertices 3\n0 1\n1 2\n";
    }
    CHECK(run_cli("simulate --graph /tmp/mvcp_graph.txt --init 1:1 --lambda 1 "
                  "--phi 0.5,1.0 --seed 5",
                  "/tmp/mvcp_sim_graph.jsonl") == 0);
    auto lines = json_lines(slurp("/tmp/mvcp_sim_graph.jsonl"));
    CHECK(lines.back().at("kind") == "extinction");
  }
}
