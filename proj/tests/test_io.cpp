#include <doctest.h>

#include <string>

#include "clone_forge/corpus.hpp"
#include "clone_forge/errors.hpp"
#include "clone_forge/io.hpp"

using namespace cf;

namespace {

std::string fixture(const char* name) { return std::string(FIXTURES_DIR) + "/" + name; }

Budget exhaustive() {
  Budget b;
  b.sample_threshold = UINT64_MAX;
  return b;
}

}  // namespace

TEST_CASE("signature and finite algebra fixtures load") {
  const Signature sig = signature_from_json(read_json_file(fixture("sig_b_e.json")));
  CHECK(sig.operators == binary_constant_signature().operators);
  CHECK(signature_from_json(to_json(sig)).operators == sig.operators);
  const FiniteAlgebra alg = finite_algebra_from_json(read_json_file(fixture("meet.json")));
  CHECK(alg.carrier == 2);
  CHECK(alg.operations.at("meet").table == std::vector<std::uint32_t>{0, 0, 0, 1});
  CHECK(to_json(finite_algebra_from_json(to_json(alg))) == to_json(alg));
}

TEST_CASE("unknown fields and bad values are rejected") {
  CHECK_THROWS_AS(signature_from_json(json{{"operators", {{"b", 2}}}, {"extra", 1}}), ValidationError);
  CHECK_THROWS_AS(signature_from_json(json{{"operators", {{"b", -1}}}}), ValidationError);
  CHECK_THROWS_AS(signature_from_json(json{{"operators", {{"x3", 1}}}}), ValidationError);
  CHECK_THROWS_AS(finite_algebra_from_json(json{{"carrier", 2}}), ValidationError);
}

TEST_CASE("malformed JSON names the byte offset") {
  try {
    read_json_file(fixture("malformed.json"));
    FAIL("no error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
  CHECK_THROWS_AS(read_json_file(fixture("missing.json")), ValidationError);
}

TEST_CASE("the materialized S(initial) fixture matches the computed one") {
  const TableAlgebra loaded = algebra_from_json(read_json_file(fixture("s_initial.json")));
  const TableAlgebra computed = materialize(*s_functor(builtin_clone("initial")), 3, exhaustive());
  CHECK(loaded.s_tables() == computed.s_tables());
  CHECK(loaded.v_indices() == computed.v_indices());
  CHECK(loaded.base().actions() == computed.base().actions());
  CHECK(loaded.s_tables()[2] == std::vector<std::uint32_t>{0, 0, 1, 1, 0, 1});
}

TEST_CASE("algebra serialization round-trips") {
  for (const auto& [name, alg] : standard_algebras(3)) {
    CAPTURE(name);
    // Depth-bounded term carriers are not closed under s.
    if (name == "S(free)") {
      CHECK_THROWS_AS(materialize(*alg, 2, exhaustive()), RangeError);
      continue;
    }
    const TableAlgebra t = materialize(*alg, 2, exhaustive());
    const json j = to_json(t);
    const TableAlgebra back = algebra_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(j.dump() == to_json(back).dump());
  }
}

TEST_CASE("non-functorial and ill-shaped algebras are rejected") {
  try {
    algebra_from_json(read_json_file(fixture("nonfunctorial.json")));
    FAIL("no error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("not functorial") != std::string::npos);
  }
  CHECK_THROWS_AS(algebra_from_json(read_json_file(fixture("bad_shape.json"))), ValidationError);
}

TEST_CASE("the broken fixture loads and fails its laws") {
  const TableAlgebra broken = algebra_from_json(read_json_file(fixture("broken.json")));
  const Report r = check_presentation(broken, 3, exhaustive());
  CHECK(r.failed_laws() ==
        std::vector<std::string>{"naturality", "left-unit", "contraction", "weakening"});
}
