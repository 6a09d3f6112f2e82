#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "lunmeb/cli.hpp"
#include "lunmeb/io.hpp"

using namespace lunmeb;
using nlohmann::json;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

struct TempFile {
  std::string path;
  explicit TempFile(const char* name)
      : path((std::filesystem::temp_directory_path() / name).string()) {}
  ~TempFile() { std::remove(path.c_str()); }
};

constexpr const char* kD4Seed =
    "0.5773502691896258,0.4082482904638631,0.5773502691896258,0.4082482904638631";
constexpr const char* kD2Seed = "0.894427190999916,0.447213595499958";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("repro d4 prints the five-state verdict and exits cleanly") {
    const CliResult r = run({"repro", "d4"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "5 mutually orthogonal states: PASS"));
  }

  TEST_CASE("repro d2 reports the two-member ceiling") {
    const CliResult r = run({"repro", "d2", "--schmidt", kD2Seed});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "maximal family size: 2"));
    const CliResult j = run({"repro", "d2", "--schmidt", kD2Seed, "--json"});
    CHECK(j.code == 0);
    const json parsed = json::parse(j.out);
    CHECK(parsed["max_size"] == 2);
    CHECK(std::abs(parsed["min_third_residual"].get<double>() - 0.36) < 1e-12);
  }

  TEST_CASE("weyl prints a matrix and validates indices") {
    const CliResult r = run({"weyl", "--d", "2", "--n", "0", "--m", "1"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "U(n=0, m=1)"));
    const CliResult j = run({"weyl", "--d", "2", "--n", "0", "--m", "1", "--json"});
    const Matrix u = matrix_from_json(json::parse(j.out)["matrix"]);
    CHECK(std::abs(u(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(u(1, 0) - 1.0) < 1e-15);
    const CliResult bad = run({"weyl", "--d", "2", "--n", "5", "--m", "0"});
    CHECK(bad.code == 2);
  }

  TEST_CASE("build then verify round-trips through a file") {
    const TempFile file("lunmeb_cli_build.json");
    const CliResult b = run({"basis", "build", "--schmidt", "1,2,3", "--out", file.path});
    CHECK(b.code == 0);
    const CliResult v = run({"basis", "verify", "--in", file.path});
    CHECK(v.code == 0);
    CHECK(contains(v.out, "verification: PASS"));
  }

  TEST_CASE("json build output is itself a loadable basis file") {
    const CliResult r = run({"basis", "build", "--schmidt", "2,1,1", "--json"});
    CHECK(r.code == 0);
    const BasisCandidate c = basis_from_json(json::parse(r.out));
    CHECK(c.d == 3);
    CHECK(c.size() == 3);
  }

  TEST_CASE("maximal seeds are a validation failure") {
    const CliResult r = run({"basis", "build", "--schmidt", "1,1"});
    CHECK(r.code == 2);
    CHECK(contains(r.err, "seed is maximally entangled"));
  }

  TEST_CASE("extend succeeds on the d=4 cyclic basis and saves the extension") {
    const TempFile in("lunmeb_cli_d4.json");
    const TempFile ext("lunmeb_cli_d4_ext.json");
    REQUIRE(run({"basis", "build", "--schmidt", kD4Seed, "--out", in.path}).code == 0);
    const CliResult r =
        run({"basis", "extend", "--in", in.path, "--out", ext.path});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "FOUND"));
    const CliResult v = run({"basis", "verify", "--in", ext.path});
    CHECK(v.code == 0);
    const BasisCandidate grown = load_basis(ext.path);
    CHECK(grown.size() == 5);
  }

  TEST_CASE("extend reports not-found with the heuristic disclaimer in d=2") {
    const TempFile in("lunmeb_cli_d2.json");
    REQUIRE(run({"basis", "build", "--schmidt", kD2Seed, "--out", in.path}).code == 0);
    const CliResult r = run({"basis", "extend", "--in", in.path});
    CHECK(r.code == 3);
    CHECK(contains(r.out, "heuristic evidence only — not a proof of unextendibility"));
    const CliResult j = run({"basis", "extend", "--in", in.path, "--json"});
    CHECK(j.code == 3);
    const json parsed = json::parse(j.out);
    CHECK_FALSE(parsed["found"].get<bool>());
    CHECK(std::abs(parsed["best_residual"].get<double>() - 0.36) < 1e-6);
  }

  TEST_CASE("extend output is byte-identical across reruns with one seed") {
    const TempFile in("lunmeb_cli_det.json");
    REQUIRE(run({"basis", "build", "--schmidt", kD4Seed, "--out", in.path}).code == 0);
    const std::vector<std::string> args = {"basis", "extend", "--in", in.path,
                                           "--seed", "7", "--json"};
    const CliResult r1 = run(args);
    const CliResult r2 = run(args);
    CHECK(r1.code == 0);
    CHECK(r1.code == r2.code);
    CHECK(r1.out == r2.out);
    // JSON extension reports embed a basis block that loads cleanly.
    const BasisCandidate embedded = basis_from_json(json::parse(r1.out)["basis"]);
    CHECK(embedded.size() == 5);
  }

  TEST_CASE("grow emits a loadable basis and respects the ceiling") {
    const CliResult r = run({"basis", "grow", "--schmidt", kD2Seed, "--json"});
    CHECK(r.code == 0);
    const BasisCandidate c = basis_from_json(json::parse(r.out));
    CHECK(c.size() == 2);
    const CliResult text =
        run({"basis", "grow", "--schmidt", kD2Seed, "--max-size", "4"});
    CHECK(text.code == 0);
    CHECK(contains(text.out, "final size 2"));
    CHECK(contains(text.out, "heuristic evidence only"));
  }

  TEST_CASE("descent method is selectable") {
    const TempFile in("lunmeb_cli_descent.json");
    REQUIRE(run({"basis", "build", "--schmidt", kD4Seed, "--out", in.path}).code == 0);
    const CliResult r = run({"basis", "extend", "--in", in.path, "--method", "descent"});
    CHECK(r.code == 0);
    const CliResult bad = run({"basis", "extend", "--in", in.path, "--method", "sideways"});
    CHECK(bad.code == 1);
  }

  TEST_CASE("exit codes separate malformed from invalid input") {
    CHECK(run({"basis", "verify", "--in", "/nonexistent.json"}).code == 1);
    CHECK(run({"basis", "build", "--schmidt", "1,abc"}).code == 1);
    CHECK(run({"basis", "build", "--schmidt", "1,,2"}).code == 1);
    CHECK(run({"basis", "build", "--schmidt", "1,-2"}).code == 2);
    CHECK(run({"basis", "build", "--schmidt", "0,0"}).code == 2);
    CHECK(run({"nonsense"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"basis", "extend"}).code == 1);  // missing required --in
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"basis", "extend", "--help"}).code == 0);
  }

  TEST_CASE("tolerance flags are validated together") {
    // verify_tol above search_tol is inconsistent.
    const CliResult r = run({"repro", "d4", "--tol-verify", "1e-3", "--tol-search", "1e-6"});
    CHECK(r.code == 2);
    // A consistent relaxed pair flows through.
    const CliResult ok = run({"repro", "d4", "--tol-verify", "1e-9", "--tol-search", "1e-7"});
    CHECK(ok.code == 0);
  }

  TEST_CASE("extend budget options are validated") {
    const TempFile in("lunmeb_cli_budget.json");
    REQUIRE(run({"basis", "build", "--schmidt", kD2Seed, "--out", in.path}).code == 0);
    CHECK(run({"basis", "extend", "--in", in.path, "--restarts", "0"}).code == 2);
    CHECK(run({"basis", "extend", "--in", in.path, "--iters=-3"}).code == 2);
    const CliResult tiny =
        run({"basis", "extend", "--in", in.path, "--restarts", "2", "--iters", "40"});
    CHECK(tiny.code == 3);
  }

  TEST_CASE("the installed binary behaves like the library driver") {
    // One end-to-end pass through the real executable: exit status plus the
    // pinned report line must survive process boundaries.
    const std::string cmd = std::string(LUNMEB_CLI_BINARY) + " repro d4 2>/dev/null";
    std::FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[512];
    while (std::fgets(buf, sizeof buf, pipe) != nullptr) output += buf;
    const int status = pclose(pipe);
    CHECK(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(contains(output, "5 mutually orthogonal states: PASS"));
  }
}
