#include <doctest.h>

#include <set>

#include "clone_forge/errors.hpp"
#include "clone_forge/law_check.hpp"

using namespace cf;

TEST_CASE("small blocks are enumerated in mixed-radix order") {
  Budget b;
  LawCheck check("order", b);
  std::vector<std::vector<std::size_t>> seen;
  check.over({2, 3}, [&](std::span<const std::size_t> idx) -> std::optional<json> {
    seen.emplace_back(idx.begin(), idx.end());
    return std::nullopt;
  });
  const LawResult r = std::move(check).finish();
  CHECK(r.passed);
  CHECK(r.checked == 6);
  CHECK(r.space == 6);
  CHECK(r.coverage() == "exhaustive");
  const std::vector<std::vector<std::size_t>> expected{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}};
  CHECK(seen == expected);
}

TEST_CASE("the first counterexample stops evaluation") {
  Budget b;
  LawCheck check("stop", b);
  check.over({10}, [&](std::span<const std::size_t> idx) -> std::optional<json> {
    if (idx[0] == 4) return json{{"i", idx[0]}};
    return std::nullopt;
  });
  check.over({10}, [&](std::span<const std::size_t>) -> std::optional<json> {
    FAIL("evaluated after a failure");
    return std::nullopt;
  });
  const LawResult r = std::move(check).finish();
  CHECK_FALSE(r.passed);
  CHECK(r.checked == 5);
  CHECK(r.space == 20);
  CHECK(r.witness["i"] == 4);
}

TEST_CASE("large blocks are sampled reproducibly from the seed") {
  Budget b;
  b.sample_threshold = 50;
  b.sample_seed = 42;
  auto draw = [&](const Budget& budget) {
    LawCheck check("sample", budget);
    std::vector<std::size_t> seen;
    check.over({100, 100}, [&](std::span<const std::size_t> idx) -> std::optional<json> {
      seen.push_back(idx[0] * 100 + idx[1]);
      return std::nullopt;
    });
    const LawResult r = std::move(check).finish();
    CHECK(r.sampled);
    CHECK(r.checked == 50);
    CHECK(r.space == 10000);
    return seen;
  };
  const auto a = draw(b);
  CHECK(a == draw(b));
  Budget other = b;
  other.sample_seed = 43;
  CHECK(a != draw(other));
  CHECK(std::set<std::size_t>(a.begin(), a.end()).size() > 40);
}

TEST_CASE("empty blocks contribute nothing and space saturates") {
  Budget b;
  LawCheck check("empty", b);
  check.over({3, 0}, [&](std::span<const std::size_t>) -> std::optional<json> {
    FAIL("empty block evaluated");
    return std::nullopt;
  });
  CHECK(std::move(check).finish().checked == 0);
  const std::vector<std::size_t> huge{1u << 31, 1u << 31, 1u << 31};
  CHECK(space_size(huge) == UINT64_MAX);
}

TEST_CASE("reports aggregate laws") {
  Report r;
  r.subject = "demo";
  r.laws.push_back({"a", true, 1, 1, false, nullptr});
  r.laws.push_back({"b", false, 1, 2, false, json{{"x", 1}}});
  CHECK_FALSE(r.passed());
  CHECK(r.failed_laws() == std::vector<std::string>{"b"});
  CHECK(r.has("a"));
  CHECK_THROWS_AS(r.law("c"), RangeError);
  const json j = r.to_json();
  CHECK(j["overall"] == "fail");
  CHECK(j["checks"][1]["witness"]["x"] == 1);
  CHECK_FALSE(j["checks"][0].contains("witness"));
  Report outer;
  outer.append(r, "inner:");
  CHECK(outer.laws[1].name == "inner:b");
}
