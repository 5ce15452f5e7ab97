#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "catch2/catch_amalgamated.hpp"
#include "oscr/serialize.hpp"

namespace fs = std::filesystem;

namespace {

int run_cmd(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  return (status >> 8) & 0xff;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string bin = CERTIFY_BIN;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::path("cli_scratch") / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
};

}  // namespace

TEST_CASE("list-claims prints the registry") {
  TempDir dir("list");
  fs::path out = dir.path / "out.txt";
  REQUIRE(run_cmd(bin + " list-claims > " + out.string()) == 0);
  std::string text = slurp(out);
  CHECK(text.find("main-theorem") != std::string::npos);
  CHECK(text.find("commutant-eq") != std::string::npos);
  CHECK(text.find("counterexample") != std::string::npos);
  CHECK(text.find("rank-contiguity") != std::string::npos);
  CHECK(text.find("2-design") != std::string::npos);
  CHECK(text.find("contiguous range of integers") != std::string::npos);
}

TEST_CASE("run writes certificates, a summary, and exits zero") {
  TempDir dir("run");
  std::string out = (dir.path / "certs").string();
  int code = run_cmd(bin + " --q 3 --n 1 --t 1 --seed 5 --out " + out +
                     " run --claims n-spectrum,parity-subspaces,counterexample > " +
                     (dir.path / "stdout.txt").string());
  CHECK(code == 0);
  oscr::Json cert = oscr::Json::parse(slurp(fs::path(out) / "claim-n-spectrum.json"));
  CHECK(cert["schema"] == 1);
  CHECK(cert["claim_id"] == "n-spectrum");
  CHECK(cert["verdict"] == "true");
  CHECK(cert["seed"] == 5);
  CHECK(cert["context"]["q"] == 3);
  CHECK(cert["witnesses"]["frozen_case"] == true);
  oscr::Json cx = oscr::Json::parse(slurp(fs::path(out) / "claim-counterexample.json"));
  CHECK(cx["verdict"] == "true");
  CHECK(cx["witnesses"]["support_size"] == 8);
  std::string csv = slurp(fs::path(out) / "summary.csv");
  CHECK(csv.rfind("claim,q,n,t,disc,verdict,dims,runtime_ms\n", 0) == 0);
  CHECK(csv.find("n-spectrum,3,1,1,square,true") != std::string::npos);
}

TEST_CASE("same seed reproduces certificates byte for byte") {
  TempDir dir("repro");
  std::string out1 = (dir.path / "a").string();
  std::string out2 = (dir.path / "b").string();
  std::string base = bin + " --q 3 --n 1 --t 2 --disc nonsquare --seed 42 ";
  std::string claims = " run --claims word-consistency,fourier-duality,fixed-space";
  REQUIRE(run_cmd(base + "--out " + out1 + claims + " > /dev/null") == 0);
  REQUIRE(run_cmd(base + "--out " + out2 + claims + " > /dev/null") == 0);
  for (const char* name :
       {"claim-word-consistency.json", "claim-fourier-duality.json",
        "claim-fixed-space.json"}) {
    CHECK(slurp(fs::path(out1) / name) == slurp(fs::path(out2) / name));
  }
}

TEST_CASE("size guard skips instead of failing") {
  TempDir dir("guard");
  std::string out = (dir.path / "certs").string();
  int code = run_cmd(bin + " --q 5 --n 2 --t 2 --guard-dim 10 --out " + out +
                     " run --claims main-theorem > /dev/null");
  CHECK(code == 0);
  oscr::Json cert = oscr::Json::parse(slurp(fs::path(out) / "claim-main-theorem.json"));
  CHECK(cert["verdict"] == "skipped: size guard");
}

TEST_CASE("unknown claim id is a usage error") {
  CHECK(run_cmd(bin + " run --claims no-such-claim > /dev/null 2>&1") == 2);
}

TEST_CASE("config file provides defaults, flags override") {
  TempDir dir("config");
  fs::path cfg = dir.path / "sweep.cfg";
  {
    std::ofstream f(cfg);
    f << "q=5\nn=1\nt=1\nseed=9\n";
  }
  std::string out = (dir.path / "certs").string();
  int code = run_cmd(bin + " --config " + cfg.string() + " --q 3 --out " + out +
                     " run --claims n-spectrum > /dev/null");
  CHECK(code == 0);
  oscr::Json cert = oscr::Json::parse(slurp(fs::path(out) / "claim-n-spectrum.json"));
  CHECK(cert["context"]["q"] == 3);  // flag wins
  CHECK(cert["seed"] == 9);          // config survives where no flag is given
}

TEST_CASE("isotropic listing prints semicolon-separated bases") {
  TempDir dir("iso");
  fs::path out = dir.path / "out.txt";
  REQUIRE(run_cmd(bin + " --q 3 --t 2 --disc nonsquare isotropic --k 1 > " +
                  out.string()) == 0);
  std::string text = slurp(out);
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  CHECK(lines == 2);  // hyperbolic plane has two isotropic lines
  CHECK(text.find(',') != std::string::npos);
}

TEST_CASE("codes subcommand emits machine-readable code descriptions") {
  TempDir dir("codes");
  fs::path out = dir.path / "out.json";
  REQUIRE(run_cmd(bin + " --q 3 --n 1 --t 3 codes --k 1 > " + out.string()) == 0);
  oscr::Json arr = oscr::Json::parse(slurp(out));
  REQUIRE(arr.is_array());
  CHECK(arr.size() == 4);  // q + 1 isotropic lines
  for (const auto& code : arr) {
    CHECK(code["dim"] == 3);
    CHECK(code["rank"] == 1);
    CHECK(code.contains("N_basis"));
    CHECK(code.contains("disc_quotient"));
    CHECK(code.contains("n_coset_states"));
  }
}

TEST_CASE("explore subcommand reports without failing") {
  TempDir dir("explore");
  fs::path out = dir.path / "out.txt";
  REQUIRE(run_cmd(bin + " --q 3 explore > " + out.string()) == 0);
  std::string text = slurp(out);
  CHECK(text.find("square") != std::string::npos);
  CHECK(text.find("nonsquare") != std::string::npos);
}
