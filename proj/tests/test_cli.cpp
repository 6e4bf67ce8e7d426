#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bbmis/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = bbmis::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("bbmis_cli_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("gen then solve the empty graph") {
    TempDir dir;
    const auto g = dir.file("g.col");
    CHECK(run({"gen", "--n", "10", "--p", "0", "--seed", "1", "--out", g}).code == 0);
    for (auto algo : {"exhaustive", "bnb", "census", "bruteforce"}) {
      const auto r = run({"solve", "--algo", algo, "--graph", g});
      CHECK(r.code == 0);
      CHECK(r.out.rfind("alpha=10 nodes=", 0) == 0);
    }
    CHECK(run({"solve", "--algo", "exhaustive", "--graph", g}).out == "alpha=10 nodes=2047\n");
  }

  TEST_CASE("count-is on a path") {
    TempDir dir;
    const auto p3 = dir.file("p3.col");
    write(p3, "p edge 3 2\ne 1 2\ne 2 3\n");
    const auto r = run({"count-is", "--graph", p3});
    CHECK(r.code == 0);
    CHECK(r.out == "5\n");
  }

  TEST_CASE("bounds subcommands") {
    auto r = run({"bounds", "gamma", "--k", "0.47"});
    CHECK(r.code == 0);
    REQUIRE(r.out.rfind("gamma=", 0) == 0);
    const double gamma = std::stod(r.out.substr(6));
    CHECK(gamma >= 1.85);
    CHECK(gamma <= 1.88);

    r = run({"bounds", "gamma", "--k-min", "0.1", "--k-max", "10", "--steps", "5", "--log"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("k,gamma,x_star\n", 0) == 0);
    r = run({"bounds", "lambda", "--k-min", "1", "--k-max", "2", "--steps", "2", "--data"});
    CHECK(r.out.rfind("1 4.08", 0) == 0);
    CHECK(run({"bounds", "g", "--k", "1.25"}).out.find("base=1.995") != std::string::npos);
    CHECK(run({"bounds", "lower", "--k", "1"}).code == 0);
    CHECK(run({"bounds", "expected-is", "--n", "10", "--p", "1"}).out == "11\n");
    CHECK(run({"bounds", "wnu", "--n", "10", "--p", "0", "--u", "10"}).out == "w=11 tail=exact\n");
  }

  TEST_CASE("experiment, fit and compare") {
    TempDir dir;
    const auto recs = dir.file("r.csv");
    const std::vector<std::string> args{"experiment", "--n-list", "12,14,16,18", "--k-list", "1", "--seeds", "30",
                                        "--solvers", "exhaustive,bnb_census", "--seed", "5", "--out", recs};
    CHECK(run(args).code == 0);
    std::ifstream in(recs);
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,p,k,seed,solver,nodes,alpha,elapsed_ms,truncated");

    auto f = run({"fit", "--in", recs, "--group-by", "k"});
    CHECK(f.code == 0);
    CHECK(f.out.find("k,1,exhaustive,") != std::string::npos);
    CHECK(f.out.find("k,1,bnb_census,") != std::string::npos);

    const auto rep = dir.file("rep.csv");
    auto c = run({"compare", "--records", recs, "--tol", "0.05", "--csv", rep});
    CHECK(c.code == 0);
    CHECK(c.out.find("regime") == 0);
    CHECK(fs::exists(rep));

    // Too little data for a fit is reported, not silently accepted.
    CHECK(run({"fit", "--in", recs, "--min-n", "16"}).code == 1);
  }

  TEST_CASE("determinism of experiment output") {
    const std::vector<std::string> args{"experiment", "--n-list", "10,12", "--p-list", "0.3", "--seeds", "3",
                                        "--solvers", "exhaustive,bnb_best_first"};
    auto strip = [](const std::string& csv) {
      std::istringstream in(csv);
      std::string line, out;
      while (std::getline(in, line)) {
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) f.push_back(cell);
        f.erase(f.begin() + 7);
        for (const auto& x : f) out += x + ',';
        out += '\n';
      }
      return out;
    };
    CHECK(strip(run(args).out) == strip(run(args).out));
  }

  TEST_CASE("exit codes and help") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"solve", "--bogus"}).code == 1);
    CHECK(run({"gen", "--n", "5", "--p", "1.5"}).code == 1);
    CHECK(run({"gen", "--n", "5"}).code == 1);
    CHECK(run({"bounds", "gamma", "--k", "-1"}).code == 1);
    CHECK(run({"bounds", "gamma", "--k", "1", "--k-min", "2"}).code == 1);
    CHECK(run({"bounds", "wnu", "--n", "5", "--p", "0.5", "--u", "6"}).code == 1);
    CHECK(run({"experiment", "--n-list", "5", "--seeds", "1"}).code == 1);
    CHECK(run({"solve", "--graph", "/nonexistent/g.col"}).code == 1);

    TempDir dir;
    const auto bad = dir.file("bad.col");
    write(bad, "p edge 3 1\ne 1 1\n");
    const auto r = run({"solve", "--graph", bad});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 2") != std::string::npos);

    const auto big = dir.file("big.col");
    CHECK(run({"gen", "--n", "30", "--p", "0", "--out", big}).code == 0);
    CHECK(run({"solve", "--algo", "exhaustive", "--graph", big, "--cap", "100"}).code == 2);
    CHECK(run({"solve", "--algo", "bruteforce", "--graph", big}).code == 2);

    for (std::vector<std::string> cmd : std::vector<std::vector<std::string>>{
             {"gen"}, {"solve"}, {"count-is"}, {"bounds"}, {"bounds", "gamma"}, {"bounds", "lambda"},
             {"bounds", "g"}, {"bounds", "lower"}, {"bounds", "expected-is"}, {"bounds", "wnu"},
             {"experiment"}, {"fit"}, {"compare"}}) {
      cmd.push_back("--help");
      const auto h = run(cmd);
      CHECK(h.code == 0);
      CHECK(h.out.find("Options:") != std::string::npos);
    }
    const auto eh = run({"experiment", "--help"});
    for (const char* flag : {"--n-list", "--k-list", "--p-list", "--seeds", "--solvers", "--out", "--threads",
                             "--seed"})
      CHECK(eh.out.find(flag) != std::string::npos);
    CHECK(eh.out.find("[100]") != std::string::npos);  // defaults are listed
  }
}
