#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("isac_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path file(const std::string& name) const { return dir_ / name; }

  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(file(name), std::ios::binary) << text;
    return file(name);
  }

  Result run(const std::string& args) const {
    const auto out = file("stdout.txt");
    const auto err = file("stderr.txt");
    const std::string cmd = std::string("'") + ISAC_BOUNDS_EXE + "' " + args + " >'" +
                            out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  fs::path dir_;
};

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  ADD_FAILURE() << "missing column " << name;
  return 0;
}

// Small grids and trial counts keep each invocation fast.
constexpr const char* kQuickConfig =
    "alpha_points = 201\nmu_points = 101\nnoma_points = 11\nrange_points = 8\n"
    "alpha_search_step = 1e-4\nmc_trials = 3000\nestimator_trials = 200\n";

TEST_F(Cli, EverySubcommandIsByteDeterministic) {
  const auto cfg = write("quick.cfg", kQuickConfig);
  for (const char* cmd : {"bounds", "sweep", "hull --combined", "alpha-opt", "montecarlo",
                          "validate-crlb", "alpha-vs-range"}) {
    for (const char* format : {"csv", "json"}) {
      const std::string args = std::string(cmd) + " --config '" + cfg.string() +
                               "' --format " + format + " --out '";
      ASSERT_EQ(run(args + file("a").string() + "'").code, 0) << cmd;
      ASSERT_EQ(run(args + file("b").string() + "' --threads 3").code, 0) << cmd;
      const std::string a = slurp(file("a"));
      EXPECT_FALSE(a.empty()) << cmd;
      EXPECT_EQ(a, slurp(file("b"))) << cmd << " " << format;
    }
  }
}

TEST_F(Cli, SeedChangesMonteCarloOutput) {
  const auto cfg = write("quick.cfg", kQuickConfig);
  const auto a = run("montecarlo --scheme oma --config '" + cfg.string() + "' --seed 5");
  const auto b = run("montecarlo --scheme oma --config '" + cfg.string() + "' --seed 6");
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_NE(a.out, b.out);
  const auto rows = parse_csv(a.out);
  const auto seed = column(rows[0], "seed");
  const auto n = column(rows[0], "n_trials");
  EXPECT_EQ(rows[1][seed], "5");
  EXPECT_EQ(rows[1][n], "3000");
}

TEST_F(Cli, NomaSweepHasOneEstimationRate) {
  const auto r = run("sweep --scheme noma --grid-points 11");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows[0], (std::vector<std::string>{"scheme", "knob", "r_est_bps", "r_c_bps"}));
  std::set<std::string> r_est;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][0], "noma");
    r_est.insert(rows[i][2]);
  }
  EXPECT_EQ(rows.size(), 202u);  // noma_points default; --grid-points covers alpha and mu
  EXPECT_EQ(r_est.size(), 1u);
}

TEST_F(Cli, GridPointsSetsTheRsAndOmaSweeps) {
  const auto r = run("sweep --grid-points 5");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  int rs = 0;
  int oma = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    rs += rows[i][0] == "rs";
    oma += rows[i][0] == "oma";
  }
  EXPECT_EQ(rs, 5);
  EXPECT_EQ(oma, 5);
}

TEST_F(Cli, AlphaOptCarriesTheGridCrossCheck) {
  const auto r = run("alpha-opt --format json");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 1u);
  const double step = j[0]["grid_step"].get<double>();
  EXPECT_LE(std::abs(j[0]["grid_argmax_alpha"].get<double>() -
                     j[0]["alpha_clamped"].get<double>()),
            step);
  EXPECT_LE(j[0]["quadratic_residual"].get<double>(), 1e-6);
  EXPECT_NEAR(j[0]["r_sum_bps"].get<double>(),
              j[0]["r_c1_bps"].get<double>() + j[0]["r_c2_bps"].get<double>(), 1e-6);
}

TEST_F(Cli, CsvAndJsonCarryTheSameNumbers) {
  const auto csv = run("bounds");
  const auto json = run("bounds --format json");
  ASSERT_EQ(csv.code, 0);
  ASSERT_EQ(json.code, 0);
  const auto rows = parse_csv(csv.out);
  const auto j = nlohmann::json::parse(json.out);
  ASSERT_EQ(j.size() + 1, rows.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    EXPECT_EQ(j[i]["name"].get<std::string>(), rows[i + 1][0]);
    EXPECT_EQ(j[i]["value"].get<double>(), std::stod(rows[i + 1][1]));
  }
}

TEST_F(Cli, ConfigFileSelectsOutput) {
  const auto out = file("from_config.json");
  const auto cfg =
      write("c.cfg", "output_format = json\noutput_path = " + out.string() + "\n");
  const auto r = run("alpha-vs-range --config '" + cfg.string() + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(nlohmann::json::parse(slurp(out)).size(), 50u);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("bounds --format xml").code, 1);
  EXPECT_EQ(run("bounds --no-such-flag").code, 1);
  EXPECT_EQ(run("bounds --config '" + file("missing.cfg").string() + "'").code, 2);

  const auto bad = write("bad.cfg", "bandwidth_hz = 5e6\nduty_factor = 1.5\n");
  const auto r = run("bounds --config '" + bad.string() + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("duty_factor"), std::string::npos) << r.err;

  const auto no_link = write("nolink.cfg", "comm_rx_sidelobe_gain = 0\n");
  EXPECT_EQ(run("alpha-opt --config '" + no_link.string() + "'").code, 3);

  EXPECT_EQ(run("bounds --out '" + (dir_ / "no/such/dir.csv").string() + "'").code, 1);
}

TEST_F(Cli, UnknownKeysWarnUnlessStrict) {
  const auto cfg = write("u.cfg", "mystery = 1\n");
  const auto lenient = run("bounds --config '" + cfg.string() + "'");
  EXPECT_EQ(lenient.code, 0);
  EXPECT_NE(lenient.err.find("mystery"), std::string::npos);
  const auto strict = run("bounds --strict --config '" + cfg.string() + "'");
  EXPECT_EQ(strict.code, 2);
  EXPECT_NE(strict.err.find("line 1"), std::string::npos);
}

TEST_F(Cli, HelpListsConfigurationKeys) {
  const auto r = run("--help");
  EXPECT_EQ(r.code, 0);
  for (const char* needle : {"alpha-opt", "validate-crlb", "duty_factor", "radar_gain_db",
                             "mc_seed", "--grid-points"}) {
    EXPECT_NE(r.out.find(needle), std::string::npos) << needle;
  }
}

}  // namespace
