#include <doctest.h>

#include <random>

#include "clone_forge/errors.hpp"
#include "clone_forge/fin_map.hpp"

using namespace cf;

namespace {

// Plain vector-of-images model used as the oracle.
std::vector<std::uint32_t> naive_compose(const std::vector<std::uint32_t>& f,
                                         const std::vector<std::uint32_t>& g) {
  std::vector<std::uint32_t> out;
  for (auto x : f) out.push_back(g[x]);
  return out;
}

FinMap random_map(std::mt19937_64& rng, std::size_t dom, std::size_t cod) {
  std::vector<std::uint32_t> t(dom);
  for (auto& x : t) x = static_cast<std::uint32_t>(rng() % cod);
  return FinMap(cod, t);
}

std::vector<std::uint32_t> as_vector(const FinMap& f) {
  return {f.table().begin(), f.table().end()};
}

}  // namespace

TEST_CASE("finmap construction validates images") {
  CHECK_THROWS_AS(FinMap(2, {0, 2}), ShapeError);
  CHECK_NOTHROW(FinMap(0, {}));
  const FinMap f(3, {2, 0});
  CHECK(f.dom() == 2);
  CHECK(f.cod() == 3);
  CHECK(f.to_string() == "2->3:[2,0]");
  CHECK(f.table_key() == "2,0");
}

TEST_CASE("composition is diagrammatic and checks shapes") {
  const FinMap f(3, {2, 0});
  const FinMap g(2, {1, 1, 0});
  CHECK(compose(f, g) == FinMap(2, {0, 1}));
  CHECK(compose(g, f) == FinMap(3, {0, 0, 2}));
  CHECK_THROWS_AS(compose(f, f), ShapeError);
}

TEST_CASE("composition agrees with the vector model and is associative") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t a = rng() % 4, b = 1 + rng() % 4, c = 1 + rng() % 4, d = 1 + rng() % 4;
    const FinMap f = random_map(rng, a, b), g = random_map(rng, b, c), h = random_map(rng, c, d);
    CHECK(as_vector(compose(f, g)) == naive_compose(as_vector(f), as_vector(g)));
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
    CHECK(compose(FinMap::identity(a), f) == f);
    CHECK(compose(f, FinMap::identity(b)) == f);
  }
}

TEST_CASE("coproduct is a bifunctor") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t a = rng() % 3, b = 1 + rng() % 3, c = 1 + rng() % 3;
    const std::size_t x = rng() % 3, y = 1 + rng() % 3, z = 1 + rng() % 3;
    const FinMap f = random_map(rng, a, b), g = random_map(rng, b, c);
    const FinMap h = random_map(rng, x, y), k = random_map(rng, y, z);
    CHECK(compose(coproduct(f, h), coproduct(g, k)) == coproduct(compose(f, g), compose(h, k)));
  }
  CHECK(coproduct(FinMap(1, {0, 0}), FinMap::identity(1)) == FinMap(2, {0, 0, 1}));
  CHECK(coproduct(FinMap(1, {}), FinMap::identity(1)) == FinMap(2, {1}));
}

TEST_CASE("named maps") {
  CHECK(old_inclusion(2) == FinMap(3, {0, 1}));
  CHECK(fresh_point(2) == FinMap(3, {2}));
  CHECK(point(4, 3) == FinMap(4, {3}));
  CHECK(shift_map(2, 3) == FinMap(5, {3, 4}));
  CHECK(inclusion(2, 1) == FinMap(3, {0, 1}));
  const auto g = generators();
  CHECK(g.c == FinMap(1, {0, 0}));
  CHECK(g.w == FinMap(1, {}));
  CHECK(g.s == FinMap(2, {1, 0}));
}

TEST_CASE("enumeration lists cod^dom maps lexicographically with matching ranks") {
  for (std::size_t m = 0; m <= 4; ++m) {
    for (std::size_t n = 0; n <= 4; ++n) {
      const auto maps = enumerate_maps(m, n);
      std::size_t expected = 1;
      for (std::size_t i = 0; i < m; ++i) expected *= n;
      REQUIRE(maps.size() == expected);
      for (std::size_t r = 0; r < maps.size(); ++r) {
        CHECK(maps[r].rank() == r);
        if (r > 0) CHECK(as_vector(maps[r - 1]) < as_vector(maps[r]));
      }
    }
  }
  CHECK(enumerate_maps(2, 3).front() == FinMap(3, {0, 0}));
  CHECK(enumerate_maps(2, 3).back() == FinMap(3, {2, 2}));
}

TEST_CASE("the generators satisfy all eight monoid equations") {
  const auto g = generators();
  const Report r = check_symmetric_monoid(g.c, g.w, g.s);
  CHECK(r.passed());
  CHECK(r.laws.size() == 8);
  for (const auto& law : r.laws) CHECK(law.coverage() == "exhaustive");
}

TEST_CASE("only the swap makes (c, w, s) a symmetric monoid") {
  const auto g = generators();
  for (const auto& s : enumerate_maps(2, 2)) {
    const Report r = check_symmetric_monoid(g.c, g.w, s);
    CHECK(r.passed() == (s == g.s));
  }
  const Report id = check_symmetric_monoid(g.c, g.w, FinMap::identity(2));
  CHECK(id.failed_laws() == std::vector<std::string>{"unit-symmetry", "multiplication-symmetry"});
  const auto& w = id.law("unit-symmetry").witness;
  CHECK(w["lhs"] != w["rhs"]);
}

TEST_CASE("monoid check rejects wrongly shaped generators") {
  const auto g = generators();
  CHECK_THROWS_AS(check_symmetric_monoid(g.s, g.w, g.s), ShapeError);
  CHECK_THROWS_AS(check_symmetric_monoid(g.c, FinMap(2, {}), g.s), ShapeError);
}

TEST_CASE("chains compose left to right") {
  const FinMap a(2, {1, 0}), b(1, {0, 0});
  const std::vector<FinMap> chain{a, b};
  CHECK(compose_chain(2, chain) == FinMap(1, {0, 0}));
  CHECK(compose_chain(3, {}) == FinMap::identity(3));
}

TEST_CASE("finmap json round-trip") {
  const FinMap f(4, {3, 0, 0});
  CHECK(finmap_from_json(to_json(f)) == f);
}
