#include "doctest.h"

#include "spinnet/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = spinnet::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("spinnet_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  auto p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string gen(const std::string& name, const std::vector<std::string>& args) {
  std::vector<std::string> a{"gen"};
  a.insert(a.end(), args.begin(), args.end());
  auto r = run(a);
  REQUIRE(r.code == 0);
  return write(name, r.out);
}

} // namespace

TEST_CASE("cli: worked examples") {
  auto theta = gen("theta222.json", {"theta", "2", "2", "2"});
  auto r = run({"eval", theta, "--method", "penrose", "--norm", "P"});
  CHECK(r.code == 0);
  CHECK(r.out == "-24\n-24\n");
  CHECK(run({"eval", theta, "--method", "cg", "--norm", "P"}).out ==
        "24\n24\nsign: undetermined (magnitude shown)\n");
  CHECK(run({"eval", theta, "--norm", "U"}).out == "-1*sqrt(1)\n-1\n");
  CHECK(run({"eval", theta, "--norm", "S", "--json"}).out ==
        "{\"method\":\"penrose\",\"norm\":\"S\",\"value\":\"-24\",\"decimal\":\"-24\",\"sign_known\":true}\n");

  auto s = run({"sixj", "2", "2", "2", "2", "2", "2"});
  CHECK(s.code == 0);
  CHECK(s.out == "1*sqrt(1/36)\n0.166666666666667\n");

  auto drum = gen("drum2.json", {"drum", "2", "2"});
  auto rho = run({"rho", drum, "--nmax", "20", "--stride", "2"});
  CHECK(rho.code == 0);
  CHECK(rho.out.find("\"upper_bound_exact\":\"6*log(3)\"") != std::string::npos);
  CHECK(rho.out.find("\"log_rho_ratio\":6.53") != std::string::npos);
}

TEST_CASE("cli: file commands") {
  auto tet = gen("tet.json", {"tetrahedron", "2"});
  CHECK(run({"check", tet}).out == "admissible\n");
  auto odd = gen("odd.json", {"theta", "1", "1", "1"});
  auto c = run({"check", odd, "--json"});
  CHECK(c.code == 1);
  CHECK(c.out.find("\"admissible\":false") != std::string::npos);

  auto oriented = run({"orient", tet});
  REQUIRE(oriented.code == 0);
  CHECK(oriented.out.find("\"gates\"") != std::string::npos);
  auto otet = write("tet_oriented.json", oriented.out);
  CHECK(run({"eval", otet, "--method", "cg", "--norm", "S"}).out ==
        run({"eval", tet, "--method", "cg", "--norm", "S"}).out);

  auto v = run({"verify", tet, "--max-gamma", "2"});
  CHECK(v.code == 0);
  CHECK(v.out.find(", 0 mismatches") != std::string::npos);

  auto series = run({"series", gen("theta_s.json", {"theta", "2", "2", "2"}), "--nmax", "3"});
  CHECK(series.out == "n,value,mode\n0,1,exact\n1,-24,exact\n2,630,exact\n3,16800,exact\n");

  // gen is a lossless round trip through the file format
  auto t1 = run({"gen", "drum", "3", "4"}).out;
  CHECK(run({"gen", "drum", "3", "0", "--gamma", "4"}).out == t1);
  CHECK(run({"gen", "random", "8", "--seed", "5"}).out == run({"gen", "random", "8", "--seed", "5"}).out);
  CHECK(run({"gen", "random", "8", "--seed", "5"}).out != run({"gen", "random", "8", "--seed", "6"}).out);
}

TEST_CASE("cli: exit codes and error json") {
  auto bad = write("bad.json", R"({"vertices": [], "edges": [], "decoration": {}, "extra": 1})");
  auto r = run({"check", bad, "--json"});
  CHECK(r.code == 2);
  CHECK(r.out.rfind("{\"error\":\"schema\"", 0) == 0);
  CHECK(run({"eval", write("broken.json", "{\n\"vertices\": [\n")}).code == 2);
  CHECK(run({"eval", (scratch() / "missing.json").string()}).code == 2);
  CHECK(run({"sixj", "1", "1", "1", "1", "1", "1"}).code == 1);
  CHECK(run({"eval", gen("odd2.json", {"theta", "1", "1", "1"})}).code == 1);
  auto big = run({"series", gen("d.json", {"drum", "2", "2"}), "--nmax", "40", "--json"});
  CHECK(big.code == 3);
  CHECK(big.out.rfind("{\"error\":\"resource\"", 0) == 0);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"eval", gen("t3.json", {"theta", "2", "2", "2"}), "--norm", "Q"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  // inadmissible through a nonzero bridge is a value, not an error
  auto db = run({"eval", gen("db.json", {"dumbbell", "2", "2", "2"}), "--norm", "U"});
  CHECK(db.code == 0);
  CHECK(db.out == "0*sqrt(0)\n0\n");
}

TEST_CASE("cli: output does not depend on threads or timings") {
  auto drum = gen("det_drum.json", {"drum", "2", "2"});
  auto tet = gen("det_tet.json", {"tetrahedron", "2"});
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"eval", tet, "--norm", "U"},
           {"series", drum, "--nmax", "6"},
           {"series", drum, "--nmax", "20", "--float"},
           {"verify", tet, "--max-gamma", "2"}}) {
    auto base = run(args);
    for (const char* t : {"1", "3", "8"}) {
      auto a = args;
      a.insert(a.end(), {"--threads", t, "--timings"});
      auto r = run(a);
      CHECK(r.out == base.out);
      CHECK(r.err.find("timing:") != std::string::npos);
    }
  }
}
