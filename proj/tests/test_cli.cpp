#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "zipfit/cli.hpp"
#include "zipfit/io.hpp"

using namespace zipfit;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "zipfit");
  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  const int code =
      run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("zipfit_cli_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string file(const std::string& name, const std::string& contents) {
    std::ofstream(path_ / name, std::ios::binary) << contents;
    return (path_ / name).string();
  }
  std::string path(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("simulate writes byte-identical tables for a fixed seed") {
  TempDir dir;
  const std::vector<std::string> common{
      "simulate", "--n", "10,50", "--gamma", "1.5,2", "--k", "inf",
      "--replicates", "500", "--reps", "2", "--seed", "7"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = common;
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  };
  const Run first = with({"--out", dir.path("a.csv"), "--workers", "1"});
  REQUIRE(first.code == 0);
  CHECK(first.err.empty());
  CHECK(contains(first.out, "K=inf gamma=1.5 n=10"));
  CHECK(contains(first.out, "wrote 4 rows"));
  const Run second = with({"--out", dir.path("b.csv"), "--workers", "3"});
  REQUIRE(second.code == 0);
  CHECK(slurp(dir.path("a.csv")) == slurp(dir.path("b.csv")));

  const CutoffTable table = load_table(dir.path("a.csv"));
  CHECK(table.rows.size() == 4);
  CHECK(table.seed == 7);
  CHECK(table.replicates == 500);
  CHECK(table.repetitions == 2);
}

TEST_CASE("simulate with custom quantiles") {
  TempDir dir;
  const Run r = run({"simulate", "--n", "20", "--gamma", "2", "--k", "30",
                     "--quantiles", "0.5,0.8", "--replicates", "200", "--reps",
                     "1", "--seed", "3", "--out", dir.path("t.csv")});
  REQUIRE(r.code == 0);
  CHECK(contains(slurp(dir.path("t.csv")), "k_support,gamma,n,q50,q80\n"));
}

TEST_CASE("missing seed warns and still runs") {
  TempDir dir;
  const Run r = run({"simulate", "--n", "10", "--gamma", "2", "--k", "10",
                     "--replicates", "100", "--reps", "1", "--out",
                     dir.path("t.csv")});
  CHECK(r.code == 0);
  CHECK(contains(r.err, "warning: no --seed given"));
}

TEST_CASE("usage errors exit with status 2") {
  TempDir dir;
  const std::string out = dir.path("t.csv");
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"simulate", "--n", "10", "--gamma", "1.0", "--k", "inf", "--seed",
             "1", "--out", out})
            .code == 2);
  CHECK(run({"simulate", "--n", "10", "--gamma", "1.04", "--k", "inf",
             "--seed", "1", "--out", out})
            .code == 2);
  CHECK(run({"simulate", "--n", "10", "--gamma", "2", "--k", "1", "--seed",
             "1", "--out", out})
            .code == 2);
  CHECK(run({"simulate", "--n", "0", "--gamma", "2", "--k", "10", "--seed",
             "1", "--out", out})
            .code == 2);
  CHECK(run({"simulate", "--n", "10", "--gamma", "2", "--k", "10",
             "--replicates", "10", "--seed", "1", "--out", out})
            .code == 2);
  CHECK(run({"simulate", "--n", "10", "--gamma", "2", "--k", "10"}).code == 2);
  CHECK(run({"simulate", "--help"}).code == 0);
}

TEST_CASE("fit with a bespoke simulation") {
  TempDir dir;
  const std::string data = dir.file("d.txt", "1 1 2\n");
  const Run r = run({"fit", "--input", data, "--k", "2", "--bespoke",
                     "--replicates", "100", "--reps", "1", "--seed", "1",
                     "--machine"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "gamma_hat:     1.0000\n"));
  CHECK(contains(r.out, "ks statistic:  0.0000"));
  CHECK(contains(r.out, "cutoffs from:  bespoke\n"));
  CHECK(contains(r.out, "\nsource=bespoke\n"));
  CHECK(contains(r.out, "\nrejected_q90=0\n"));
  CHECK(contains(r.out, "\nk_support=2\n"));
}

TEST_CASE("fit against a table") {
  TempDir dir;
  const std::string data = dir.file("d.txt", "1\n1\n2\n");
  const std::string table = dir.file(
      "t.csv",
      "k_support,gamma,n,q90,q95,q99,q999\n"
      "2,1.003,3,.30,.40,.50,.60\n"
      "2,1,4,.30,.40,.50,.60\n");
  const Run ok = run({"fit", "--input", data, "--k", "2", "--table", table});
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "cutoffs from:  table row gamma=1.0030\n"));
  CHECK(contains(ok.out, "0.9     0.3000   not rejected\n"));

  const std::string strict = dir.file(
      "s.csv",
      "k_support,gamma,n,q90,q95,q99,q999\n"
      "2,1.006,3,.30,.40,.50,.60\n");
  const Run miss = run({"fit", "--input", data, "--k", "2", "--table", strict});
  CHECK(miss.code == 2);
  CHECK(contains(miss.err, "no table row with n=3"));

  const Run wrong_k =
      run({"fit", "--input", data, "--k", "3", "--table", table});
  CHECK(wrong_k.code == 2);

  const std::string rejecting = dir.file(
      "r.csv",
      "k_support,gamma,n,q90,q95,q99,q999\n"
      "2,1,3,0,0,0,0\n");
  const std::string ones = dir.file("ones.txt", "1 1 1\n");
  const Run rejected =
      run({"fit", "--input", ones, "--k", "2", "--table", rejecting,
           "--machine"});
  CHECK(rejected.code == 1);
  CHECK(contains(rejected.out, "rejected_q90=1"));
}

TEST_CASE("fit argument errors") {
  TempDir dir;
  const std::string data = dir.file("d.txt", "1 1 2\n");
  const std::string table = dir.file("t.csv", "");
  CHECK(run({"fit", "--input", data, "--k", "2"}).code == 2);
  CHECK(run({"fit", "--input", data, "--k", "2", "--table", table,
             "--bespoke"})
            .code == 2);
  CHECK(run({"fit", "--input", data, "--k", "2", "--table", table}).code == 2);
  CHECK(run({"fit", "--input", dir.path("none.txt"), "--k", "2", "--bespoke",
             "--seed", "1"})
            .code == 2);

  const std::string bad = dir.file("bad.txt", "1 2\nx\n");
  const Run parse = run({"fit", "--input", bad, "--k", "5", "--bespoke",
                         "--seed", "1"});
  CHECK(parse.code == 2);
  CHECK(contains(parse.err, "bad.txt:2:1: token 3"));

  const Run outside = run({"fit", "--input", data, "--k", "1", "--bespoke"});
  CHECK(outside.code == 2);
  const std::string big = dir.file("big.txt", "1 7\n");
  const Run exceeds =
      run({"fit", "--input", big, "--k", "5", "--bespoke", "--seed", "1"});
  CHECK(exceeds.code == 2);
  CHECK(contains(exceeds.err, "exceeds the declared support"));
}

TEST_CASE("geometric data are rejected as a power law") {
  std::mt19937_64 rng(99);
  std::geometric_distribution<std::int64_t> geometric(0.5);
  std::ostringstream text;
  for (int i = 0; i < 50000; ++i) {
    text << std::min<std::int64_t>(geometric(rng) + 1, 100) << '\n';
  }
  TempDir dir;
  const std::string data = dir.file("geo.txt", text.str());
  const Run r = run({"fit", "--input", data, "--k", "100", "--bespoke",
                     "--replicates", "1000", "--reps", "1", "--seed", "5",
                     "--machine"});
  CHECK(r.code == 1);
  CHECK(contains(r.out, "rejected_q999=1"));
}
