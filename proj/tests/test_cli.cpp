#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "qhopf/cli.hpp"
#include "qhopf/derived.hpp"
#include "qhopf/examples.hpp"
#include "qhopf/io.hpp"
#include "qhopf/verify.hpp"
#include "support/mutation.hpp"

using namespace qhopf;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("qhopf_cli_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = workdir() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string example_file(const std::string& name, const QuasiHopfDatum& d) { return write(name, save(d)); }

const std::string& dz2_f5() {
  static const std::string path = example_file("dz2_f5.json", build_example("dpr", "Z2", 0, Field::prime(5)));
  return path;
}

const std::string& dwz2() {
  static const std::string path = example_file("dwz2.json", build_example("dpr", "Z2", 1, Field::prime(7)));
  return path;
}

nlohmann::json without_time(nlohmann::json j) {
  j.erase("elapsed_ms");
  return j;
}

}  // namespace

TEST_CASE("example writes a loadable datum") {
  const std::string path = (workdir() / "ex.json").string();
  const Result r = run({"example", "--kind", "dpr", "--group", "Z3", "--q", "1", "--field", "p:7", "--out", path});
  CHECK(r.code == 0);
  CHECK(load_file(path) == dpr_double(cocycle_zn(3, 1, Field::prime(7))));
  const Result stdout_form = run({"example", "--kind", "sweedler", "--field", "Q"});
  CHECK(stdout_form.code == 0);
  CHECK(load_text(stdout_form.out) == sweedler());
  CHECK(run({"example", "--kind", "nonsense"}).code == 2);
  CHECK(run({"example", "--kind", "dpr", "--field", "p:8"}).code == 2);
}

TEST_CASE("verify reports every check as JSON") {
  const Result r = run({"verify", dwz2(), "--level", "qt", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["datum"] == load_file(dwz2()).hash());
  CHECK(j["level"] == "qt");
  CHECK(j.contains("elapsed_ms"));
  REQUIRE(j["checks"].size() > 10);
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c["status"] == "pass");
  }
}

TEST_CASE("level defaults to the top layer of the input") {
  const auto j = nlohmann::json::parse(run({"verify", dz2_f5(), "--format", "json"}).out);
  CHECK(j["level"] == "ribbon");
  const std::string fz2 = example_file("fz2.json", function_algebra(cocycle_zn(2, 1, Field::prime(7))));
  CHECK(nlohmann::json::parse(run({"verify", fz2, "--format", "json"}).out)["level"] == "hopf");
}

TEST_CASE("reports are reproducible") {
  const Result a = run({"verify", dwz2(), "--format", "json"});
  const Result b = run({"verify", dwz2(), "--format", "json", "--jobs", "4"});
  CHECK(without_time(nlohmann::json::parse(a.out)).dump(2) == without_time(nlohmann::json::parse(b.out)).dump(2));
  const Result c = run({"check", "corpus", dwz2(), "--format", "json", "--seed", "9"});
  const Result d = run({"check", "corpus", dwz2(), "--format", "json", "--seed", "9", "--jobs", "3"});
  CHECK(without_time(nlohmann::json::parse(c.out)) == without_time(nlohmann::json::parse(d.out)));
}

TEST_CASE("a broken datum fails with a witness") {
  const std::string path = example_file("broken.json", mutation::mutate(load_file(dwz2()), mutation::Target::phi, 1));
  const Result r = run({"verify", path, "--format", "json"});
  CHECK(r.code == 1);
  bool witnessed = false;
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& c : j["checks"]) {
    if (c["status"] == "fail" && c.contains("witness")) witnessed = true;
  }
  CHECK(witnessed);
  const Result text = run({"verify", path});
  CHECK(text.code == 1);
  CHECK(text.out.find("FAIL") != std::string::npos);
}

TEST_CASE("input errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", (workdir() / "missing.json").string()}).code == 2);
  CHECK(run({"verify", write("bad.json", "{\"dim\": 2,\n  oops}")}).code == 2);
  CHECK(run({"verify", write("shape.json", "{\"field\": {\"kind\":\"prime\",\"p\":7}, \"dim\": 1}")}).code == 2);
  CHECK(run({"verify", dwz2(), "--level", "galactic"}).code == 2);
  CHECK(run({"verify", dwz2(), "--format", "xml"}).code == 2);
  CHECK(run({"derive", dwz2()}).code == 2);
  const Result r = run({"ribbon"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("derive prints tensor JSON") {
  const QuasiHopfDatum d = load_file(dwz2());
  const Result r = run({"derive", dwz2(), "--element", "gamma"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out) == tensor_to_json(gamma_element(d)));
  for (const char* name : {"delta", "F", "Finv", "u", "uhat", "ucheck", "utilde"}) {
    CAPTURE(name);
    CHECK(run({"derive", dwz2(), "--element", name}).code == 0);
  }
  CHECK(run({"derive", dwz2(), "--element", "v"}).code == 2);
}

TEST_CASE("twist checks the laws and emits the twisted datum") {
  const std::string emitted = (workdir() / "twisted.json").string();
  const Result r = run({"twist", dwz2(), "--seed", "3", "--emit", emitted, "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["seed"] == 3);
  const QuasiHopfDatum t = load_file(emitted);
  CHECK(j["twisted"] == t.hash());
  CHECK(verify_level(t, Level::qt).passed());
}

TEST_CASE("QHOPF_SEED sets the default seed") {
  ::setenv("QHOPF_SEED", "7", 1);
  const auto from_env = nlohmann::json::parse(run({"twist", dwz2(), "--format", "json"}).out);
  const auto from_flag = nlohmann::json::parse(run({"twist", dwz2(), "--format", "json", "--seed", "8"}).out);
  ::unsetenv("QHOPF_SEED");
  CHECK(from_env["seed"] == 7);
  CHECK(from_flag["seed"] == 8);
  ::setenv("QHOPF_SEED", "seven", 1);
  CHECK(run({"verify", dwz2()}).code == 2);
  ::unsetenv("QHOPF_SEED");
}

TEST_CASE("ribbon find and check") {
  const Result r = run({"ribbon", "find", dz2_f5(), "--budget", "1000000", "--strategy", "center", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["candidates"].size() >= 1);
  CHECK(j["examined"] == 625);
  CHECK(run({"ribbon", "find", dz2_f5(), "--budget", "10"}).code == 2);
  CHECK(run({"ribbon", "find", dz2_f5(), "--strategy", "guess"}).code == 2);
  CHECK(run({"ribbon", "find", dwz2(), "--strategy", "blocks"}).code == 0);
  CHECK(run({"ribbon", "check", dz2_f5()}).code == 0);
  CHECK(run({"ribbon", "check", dwz2()}).code == 2);
}

TEST_CASE("check subcommands") {
  CHECK(run({"check", "expr", dwz2(), "--expr", "u == ucheck"}).code == 0);
  CHECK(run({"check", "expr", dwz2(), "--expr", "map[S,S](R) == Fp * R * inv(F)"}).code == 0);
  CHECK(run({"check", "expr", dwz2(), "--expr", "u == 2 * ucheck"}).code == 1);
  CHECK(run({"check", "expr", dwz2(), "--expr", "u == (ucheck"}).code == 2);
  CHECK(run({"check", "expr", dwz2(), "--expr", "u == R"}).code == 2);
  const Result term = run({"check", "expr", dwz2(), "--expr", "one_2 * one_2", "--format", "json"});
  CHECK(term.code == 0);
  CHECK(nlohmann::json::parse(term.out) == tensor_to_json(load_file(dwz2()).one(2)));

  CHECK(run({"check", "corpus", dwz2()}).code == 0);
  CHECK(run({"check", "corpus", dwz2(), "--corpus", write("c.txt", "# two lines\nu == ucheck\nu == 1 * R\n")}).code == 2);
  CHECK(run({"check", "corpus", dwz2(), "--corpus", write("d.txt", "u == ucheck\nu == 2 * u\n")}).code == 1);

  CHECK(run({"check", "twist-props", dwz2(), "--seeds", "1..3"}).code == 0);
  CHECK(run({"check", "twist-props", dwz2(), "--seeds", "3..1"}).code == 2);
  CHECK(run({"check", "ribbon-theorem", dz2_f5()}).code == 0);
  CHECK(run({"check", "ribbon-theorem", dwz2(), "--strategy", "blocks"}).code == 0);
}
