// End-to-end checks of the command-line tool: golden outputs, determinism,
// config precedence, and the exit-code contract.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "upslab/io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = UPSLAB_CLI_PATH;
const fs::path kGolden = UPSLAB_GOLDEN_DIR;
const fs::path kScratch = fs::path(UPSLAB_SCRATCH_DIR) / "cli_scratch";

int run(const std::string& args) {
  const int status = std::system((kCli + " " + args + " > /dev/null 2>&1").c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) { return upslab::io::read_text_file(p); }

void write(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

struct Scratch {
  Scratch() {
    fs::remove_all(kScratch);
    fs::create_directories(kScratch);
  }
  fs::path operator/(const std::string& name) const { return kScratch / name; }
};

std::string in(const std::string& name) { return (kGolden / name).string(); }

}  // namespace

TEST_CASE("golden outputs and rerun determinism per command") {
  Scratch dir;

  struct Cmd {
    std::string args;
    std::vector<std::pair<std::string, std::string>> outputs;  // produced -> golden
  };
  const std::vector<Cmd> commands = {
      {"dft --in " + in("signal_in.json") + " --direction forward --out " +
           (dir / "dft.json").string(),
       {{"dft.json", "dft_out.json"}}},
      {"profile-set --in " + in("set_in.json") + " --out " + (dir / "prof.json").string(),
       {{"prof.json", "profile_out.json"}}},
      {"recover --in " + in("masked_in.json") + " --method dra --out " +
           (dir / "rec.json").string() + " --report " + (dir / "rep.json").string(),
       {{"rec.json", "recover_out.json"}, {"rep.json", "recover_report.json"}}},
      {"sample-salem --config " + in("salem_config.json") + " --out " +
           (dir / "salem.csv").string(),
       {{"salem.csv", "salem_out.csv"}}},
      {"energy-stats --n 7 --d 2 --sigma-size 10 --subset-size 5 --trials 5 --seed 7 --out " +
           (dir / "energy.csv").string(),
       {{"energy.csv", "energy_out.csv"}}},
      {"sweep-dra --n 16 --d 1 --e-min 1 --e-max 2 --s-min 1 --s-max 3 --trials 5 --seed 11 "
       "--out " +
           (dir / "sweep.csv").string() + " --pgm " + (dir / "sweep.pgm").string(),
       {{"sweep.csv", "sweep_out.csv"}, {"sweep.pgm", "sweep_out.pgm"}}},
      {"demo-figure --in " + in("set2d_in.json") + " --out " + (dir / "figure").string(),
       {{"figure_set.pgm", "figure_set.pgm"}, {"figure_spectrum.pgm", "figure_spectrum.pgm"}}},
  };

  for (const Cmd& cmd : commands) {
    CAPTURE(cmd.args);
    CHECK(run(cmd.args) == 0);
    std::vector<std::string> first_pass;
    for (const auto& [produced, golden] : cmd.outputs) {
      const std::string got = slurp(dir / produced);
      CHECK(got == slurp(kGolden / golden));
      first_pass.push_back(got);
    }
    // Re-run with the same inputs: byte-identical outputs.
    CHECK(run(cmd.args) == 0);
    for (std::size_t i = 0; i < cmd.outputs.size(); ++i)
      CHECK(slurp(dir / cmd.outputs[i].first) == first_pass[i]);
  }
}

TEST_CASE("config keys are overridden by flags") {
  Scratch dir;
  const std::string base = "sample-salem --config " + in("salem_config.json") + " --out " +
                           (dir / "a.csv").string();
  CHECK(run(base) == 0);
  CHECK(run("sample-salem --config " + in("salem_config.json") + " --trials 3 --out " +
            (dir / "b.csv").string()) == 0);
  const std::string a = slurp(dir / "a.csv");
  const std::string b = slurp(dir / "b.csv");
  // 6 trials from the config, 3 from the flag (plus a header line each).
  CHECK(std::count(a.begin(), a.end(), '\n') == 7);
  CHECK(std::count(b.begin(), b.end(), '\n') == 4);
  // The shared trials are seeded identically.
  CHECK(a.substr(0, b.size()) == b);
}

TEST_CASE("exit codes") {
  Scratch dir;
  const std::string out = (dir / "out.json").string();
  const std::string rep = (dir / "rep.json").string();

  SUBCASE("bad input is 2") {
    write(dir / "broken.json", "{\"version\":1,");
    CHECK(run("dft --in " + (dir / "broken.json").string() + " --direction forward --out " + out) == 2);
    // Domain tag mismatch.
    CHECK(run("dft --in " + in("signal_in.json") + " --direction inverse --out " + out) == 2);
    // Unsorted set file.
    write(dir / "unsorted.json", R"({"version":1,"n":7,"d":1,"indices":[3,1]})");
    CHECK(run("profile-set --in " + (dir / "unsorted.json").string() + " --out " + out) == 2);
    // Missing mandatory seed.
    CHECK(run("sample-salem --n 16 --d 1 --size 5 --epsilon 1 --trials 2 --out " + out) == 2);
    // Hypothesis violation: |A| > n^d / 2.
    CHECK(run("sample-salem --n 4 --d 1 --size 3 --epsilon 1 --trials 2 --seed 1 --out " + out) == 2);
    // demo-figure needs d = 2.
    CHECK(run("demo-figure --in " + in("set_in.json") + " --out " + (dir / "fig").string()) == 2);
  }

  SUBCASE("unguaranteed recovery is 1") {
    // Subgroup data with the complementary frequencies missing: recovery
    // happens but |E_rec| * |S| = n^d satisfies nothing.
    write(dir / "sub.json",
          R"({"version":1,"n":4,"d":1,"missing":[1,3],)"
          R"("re":[0.5,0,0.5,0],"im":[0,0,0,0]})");
    CHECK(run("recover --in " + (dir / "sub.json").string() + " --method dra --out " + out +
              " --report " + rep) == 1);
  }

  SUBCASE("grid cap exceeded is 3") {
    const int status = std::system(("UPSLAB_GRID_CAP=2 " + kCli + " dft --in " +
                                    in("signal_in.json") + " --direction forward --out " + out +
                                    " > /dev/null 2>&1")
                                       .c_str());
    CHECK(WEXITSTATUS(status) == 3);
  }

  SUBCASE("enumeration budget exceeded is 5") {
    std::string re = "[", im = "[";
    for (int i = 0; i < 32; ++i) {
      re += i ? ",0" : "0";
      im += i ? ",0" : "0";
    }
    write(dir / "wide.json",
          R"({"version":1,"n":32,"d":1,"missing":[],"re":)" + re + "]," + R"("im":)" + im + "]}");
    CHECK(run("recover --in " + (dir / "wide.json").string() +
              " --method enum --sparsity 16 --out " + out + " --report " + rep) == 5);
  }

  SUBCASE("no partial files on failure") {
    write(dir / "unsorted.json", R"({"version":1,"n":7,"d":1,"indices":[3,1]})");
    CHECK(run("profile-set --in " + (dir / "unsorted.json").string() + " --out " +
              (dir / "never.json").string()) == 2);
    CHECK_FALSE(fs::exists(dir / "never.json"));
    CHECK_FALSE(fs::exists(dir / "never.json.tmp"));
  }
}

TEST_CASE("forward then inverse via two invocations returns the input") {
  Scratch dir;
  CHECK(run("dft --in " + in("signal_in.json") + " --direction forward --out " +
            (dir / "f.json").string()) == 0);
  CHECK(run("dft --in " + (dir / "f.json").string() + " --direction inverse --out " +
            (dir / "back.json").string()) == 0);
  const auto original = upslab::io::signal_from_json(
      upslab::io::json::parse(slurp(kGolden / "signal_in.json")));
  const auto back =
      upslab::io::signal_from_json(upslab::io::json::parse(slurp(dir / "back.json")));
  CHECK((original.values - back.values).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("demo-figure lights the annihilator line for a subgroup") {
  Scratch dir;
  // The line {(t, 0)} in Z_7^2: flat indices 0, 7, 14, ..., 42.
  write(dir / "line.json", R"({"version":1,"n":7,"d":2,"indices":[0,7,14,21,28,35,42]})");
  CHECK(run("demo-figure --in " + (dir / "line.json").string() + " --out " +
            (dir / "line").string()) == 0);
  std::istringstream pgm(slurp(dir / "line_spectrum.pgm"));
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  pgm >> magic >> w >> h >> maxval;
  CHECK(magic == "P2");
  CHECK(w == 7);
  CHECK(h == 7);
  for (int row = 0; row < 7; ++row) {
    for (int col = 0; col < 7; ++col) {
      int v = -1;
      pgm >> v;
      // Annihilator of the axis line is {(0, s)}: the first image row.
      CHECK(v == (row == 0 ? 255 : 0));
    }
  }
}

TEST_CASE("sweep heatmap saturates inside the guarantee region") {
  Scratch dir;
  CHECK(run("sweep-dra --n 16 --d 1 --e-min 1 --e-max 2 --s-min 1 --s-max 3 --trials 5 "
            "--seed 11 --out " +
            (dir / "sweep.csv").string() + " --pgm " + (dir / "sweep.pgm").string()) == 0);
  std::istringstream csv(slurp(dir / "sweep.csv"));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "e_size,s_size,successes,trials,condition_i_holds");
  std::string line;
  while (std::getline(csv, line)) {
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 5);
    if (cells[4] == "1") CHECK(cells[2] == cells[3]);  // all trials succeed
  }
}

TEST_CASE("energy-stats ratios are bracketed by 1 and the set size") {
  Scratch dir;
  CHECK(run("energy-stats --n 7 --d 2 --sigma-size 10 --subset-size 5 --trials 5 --seed 7 "
            "--out " +
            (dir / "e.csv").string()) == 0);
  std::istringstream csv(slurp(dir / "e.csv"));
  std::string line;
  std::getline(csv, line);  // header
  while (std::getline(csv, line)) {
    const auto last = line.rfind(',');
    const double ratio = std::stod(line.substr(last + 1));
    CHECK(ratio >= 1.0);
    CHECK(ratio <= 10.0);
  }

  // Singleton subsets have energy 1, so their ratio is exactly 1.
  CHECK(run("energy-stats --n 7 --d 2 --sigma-size 10 --subset-size 1 --trials 4 --seed 3 "
            "--out " +
            (dir / "e1.csv").string()) == 0);
  std::istringstream csv1(slurp(dir / "e1.csv"));
  std::getline(csv1, line);
  while (std::getline(csv1, line)) {
    if (line.find(",subset,") == std::string::npos) continue;
    CHECK(line.substr(line.size() - 4) == ",1,1");
  }
}

TEST_CASE("alphabet and enum methods through the CLI") {
  Scratch dir;
  const std::string out = (dir / "out.json").string();
  const std::string rep = (dir / "rep.json").string();
  CHECK(run("recover --in " + in("masked_in.json") + " --method enum --sparsity 1 --out " + out +
            " --report " + rep) == 0);
  const auto report = upslab::io::json::parse(slurp(dir / "rep.json"));
  CHECK(report.at("method") == "enumeration");
  CHECK(report.at("guaranteed") == true);
  CHECK(report.at("recovered_support") == upslab::io::json::array({0}));

  CHECK(run("recover --in " + in("masked_in.json") + " --method alphabet --alphabet 0 1 --out " +
            out + " --report " + rep) == 0);
  const auto rep2 = upslab::io::json::parse(slurp(dir / "rep.json"));
  CHECK(rep2.at("method") == "alphabet");
}
