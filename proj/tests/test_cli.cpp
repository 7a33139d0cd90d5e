#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "clone_forge/law_check.hpp"

using cf::json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(CLONE_FORGE_CLI) + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, n);
  const int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string fixture(const char* name) { return std::string(FIXTURES_DIR) + "/" + name; }

}  // namespace

TEST_CASE("cli: passing checks exit 0") {
  CHECK(run("check-f").code == 0);
  CHECK(run("finite-clone --algebra " + fixture("meet.json")).code == 0);
  CHECK(run("free-clone --signature " + fixture("sig_b_e.json") + " --depth 1 --max-arity 2").code == 0);
  CHECK(run("check-subst --input " + fixture("s_initial.json")).code == 0);
  CHECK(run("roundtrip --builtin initial").code == 0);
  CHECK(run("enum-hom --builtin initial --bound 2").code == 0);
}

TEST_CASE("cli: failing laws exit 1 and report a witness") {
  const Outcome o = run("check-subst --input " + fixture("broken.json") + " --format json");
  CHECK(o.code == 1);
  const json j = json::parse(o.out);
  CHECK(j["overall"] == "fail");
  bool witnessed = false;
  for (const auto& r : j["reports"])
    for (const auto& c : r["checks"]) witnessed = witnessed || c.contains("witness");
  CHECK(witnessed);
}

TEST_CASE("cli: invalid input exits 2") {
  CHECK(run("check-subst --input " + fixture("nonfunctorial.json")).code == 2);
  CHECK(run("check-subst --input " + fixture("bad_shape.json")).code == 2);
  const Outcome o = run("check-subst --input " + fixture("malformed.json") + " --format json");
  CHECK(o.code == 2);
  CHECK(json::parse(o.out)["error"]["message"].get<std::string>().find("byte") != std::string::npos);
  CHECK(run("check-subst --bound").code == 2);
  CHECK(run("to-subst --builtin nothing").code == 2);
}

TEST_CASE("cli: json output is deterministic and sorted") {
  const Outcome a = run("to-subst --builtin meet --bound 2 --format json");
  const Outcome b = run("to-subst --builtin meet --bound 2 --format json");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  CHECK(j.contains("config"));
  CHECK(j["data"]["algebra"].is_object());
}

TEST_CASE("cli: environment selects the format") {
  const std::string cmd = "CLONE_FORGE_FORMAT=json " + std::string(CLONE_FORGE_CLI) + " check-f 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  pclose(pipe);
  CHECK(json::parse(out)["overall"] == "pass");
}
