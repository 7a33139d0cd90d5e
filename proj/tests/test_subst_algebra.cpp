#include <doctest.h>

#include "clone_forge/corpus.hpp"
#include "clone_forge/errors.hpp"
#include "clone_forge/subst_algebra.hpp"

using namespace cf;

namespace {

Element atom(std::uint32_t v) { return Atom{v}; }
Element term(const char* text) { return parse_term(text); }

Budget exhaustive() {
  Budget b;
  b.sample_threshold = UINT64_MAX;
  return b;
}

AlgebraPtr s_initial() { return s_functor(builtin_clone("initial")); }
AlgebraPtr s_free() { return s_functor(std::make_shared<FreeClone>(binary_constant_signature())); }

}  // namespace

TEST_CASE("S(initial) substitutes the last variable") {
  const auto a = s_initial();
  const TableAlgebra t = materialize(*a, 4, exhaustive());
  for (std::uint32_t m = 0; m < 4; ++m) {
    CHECK(t.variable(m) == atom(m));
    for (std::uint32_t i = 0; i <= m; ++i) {
      for (std::uint32_t j = 0; j < m; ++j) {
        CHECK(t.substitute(m, atom(i), atom(j)) == atom(i < m ? i : j));
      }
    }
  }
  for (const auto& f : enumerate_maps(3, 2)) {
    for (std::uint32_t i = 0; i < 3; ++i) CHECK(t.act(f, atom(i)) == atom(f(i)));
  }
}

TEST_CASE("S(free) substitution examples") {
  const auto a = s_free();
  CHECK(a->substitute(1, term("b(x0,x1)"), term("x0")) == term("b(x0,x0)"));
  CHECK(a->substitute(2, term("b(x2,b(x1,x2))"), term("e")) == term("b(e,b(x1,e))"));
  CHECK(a->variable(0) == term("x0"));
  CHECK(a->variable(3) == term("x3"));
  CHECK(nu(*a, 2) == term("x2"));
  CHECK(a->act(FinMap(3, {2, 0}), term("b(x0,x1)")) == term("b(x2,x0)"));
}

TEST_CASE("standard algebras satisfy both presentations") {
  for (const auto& [name, alg] : standard_algebras(3)) {
    CAPTURE(name);
    const Report p = check_presentation(*alg, 3, exhaustive());
    const Report d = check_diagrams(*alg, 3, exhaustive());
    CHECK(p.passed());
    CHECK(d.passed());
    CHECK(p.laws.size() == 8);
    CHECK(d.laws.size() == 9);
    CHECK(presentation_agreement(p, d).passed());
  }
}

TEST_CASE("a constant s_2 fails weakening with a replayable witness") {
  const TableAlgebra base = materialize(*s_initial(), 3, exhaustive());
  TableAlgebra broken = base;
  for (std::uint32_t x = 0; x < 3; ++x)
    for (std::uint32_t y = 0; y < 2; ++y) broken = broken.with_s(2, x, y, 0);
  const Report r = check_presentation(broken, 3, exhaustive());
  CHECK_FALSE(r.law("weakening").passed);
  const json& w = r.law("weakening").witness;
  const std::size_t m = w["m"];
  const Element x = element_from_json(w["x"]);
  const Element y = element_from_json(w["y"]);
  const Element weakened = broken.act(coproduct(FinMap::identity(m), generators().w), x);
  CHECK(broken.substitute(m, weakened, y) != x);
  CHECK(r.law("associativity").passed == check_diagrams(broken, 3, exhaustive()).law("associativity").passed);
}

TEST_CASE("changing the stored variable fails coherence and the diagrams") {
  const TableAlgebra base = materialize(*s_initial(), 3, exhaustive());
  const TableAlgebra bad = base.with_v(1, 0);
  const Report p = check_presentation(bad, 3, exhaustive());
  const Report d = check_diagrams(bad, 3, exhaustive());
  CHECK(p.failed_laws() == std::vector<std::string>{"variable-coherence"});
  CHECK_FALSE(d.law("v-naturality").passed);
  CHECK_FALSE(d.passed());
  CHECK(presentation_agreement(p, d).law("overall-verdict").passed);
}

TEST_CASE("rewired variants are each caught by the presentation") {
  for (const auto& [name, alg] : rewired_variants(3)) {
    CAPTURE(name);
    CHECK_FALSE(check_presentation(*alg, 3, exhaustive()).passed());
  }
}

TEST_CASE("law names line up across the two presentations") {
  CHECK(presentation_law_for("v-naturality") == "variable-coherence");
  CHECK(presentation_law_for("contraction-old").empty());
  CHECK(presentation_law_for("associativity") == "associativity");
  for (const auto& law : matched_diagram_laws()) {
    CHECK(check_presentation(*s_initial(), 2, exhaustive()).has(presentation_law_for(law)));
  }
}

TEST_CASE("table algebras validate their shapes") {
  const TableAlgebra base = materialize(*s_initial(), 2, exhaustive());
  auto s = base.s_tables();
  s[1].pop_back();
  CHECK_THROWS_AS(TableAlgebra(base.base(), s, base.v_indices()), ValidationError);
  auto v = base.v_indices();
  v[0] = 7;
  CHECK_THROWS_AS(TableAlgebra(base.base(), base.s_tables(), v), ValidationError);
  CHECK_THROWS_AS(base.substitute(2, atom(0), atom(0)), RangeError);
  CHECK_THROWS_AS(base.variable(2), RangeError);
}

TEST_CASE("homomorphisms out of S(initial)") {
  const auto src = s_initial();
  for (const auto& [name, dst] : standard_algebras(3)) {
    CAPTURE(name);
    CHECK(hom_check(variable_family(dst), *src, *dst, 3, exhaustive()).passed());
  }
  const auto dst = s_free();
  const ElementFamily shifted = [](std::size_t m, const Element& e) -> Element {
    const auto i = std::get<Atom>(e).value;
    return Term::var(static_cast<std::uint32_t>((i + 1) % m));
  };
  const Report r = hom_check(shifted, *src, *dst, 3, exhaustive());
  CHECK_FALSE(r.law("preserves-s").passed);
  const ElementFamily id = [](std::size_t, const Element& e) { return e; };
  CHECK(hom_check(id, *dst, *dst, 2, exhaustive()).passed());
}

TEST_CASE("each isolating variant fails exactly its law") {
  const std::vector<std::pair<std::string, std::string>> expected{
      {"second copy of x_0", "functoriality-identity"},
      {"act(3->2:[1,1,0], 2) := 1", "functoriality-composition"},
      {"s(x,y) = x", "left-unit"},
      {"s(x,y) = x or y", "weakening"},
      {"subsets", "contraction"},
      {"free:", "associativity"}};
  const auto variants = isolating_variants(3);
  CHECK(variants.size() == expected.size());
  for (const auto& [name, alg] : variants) {
    CAPTURE(name);
    std::string law;
    for (const auto& [key, l] : expected) {
      // "s(x,y) = x" is a prefix of "s(x,y) = x or y"; the longer key wins
      if (name.find(key) != std::string::npos && key.size() > law.size()) law = l;
    }
    REQUIRE_FALSE(law.empty());
    CHECK(check_presentation(*alg, 3, exhaustive()).failed_laws() == std::vector<std::string>{law});
  }
  CHECK_THROWS_AS(isolating_variants(2), RangeError);
}

TEST_CASE("two-point variants are all natural") {
  const auto variants = two_point_variants(3);
  CHECK(variants.size() == 32);
  for (const auto& [name, alg] : variants) {
    CAPTURE(name);
    CHECK(structurally_natural(check_diagrams(*alg, 3, exhaustive())));
  }
}

TEST_CASE("mutation sensitivity needs a failure in isolation") {
  // the rewired variants only isolate variable-coherence
  Budget b = exhaustive();
  const auto rewired = rewired_variants(3);
  const Report without = mutation_sensitivity(rewired, 3, b);
  auto corpus = rewired;
  for (auto& v : isolating_variants(3)) corpus.push_back(std::move(v));
  const Report with = mutation_sensitivity(corpus, 3, b);
  for (const char* law : {"functoriality-identity", "functoriality-composition", "left-unit",
                          "weakening", "contraction", "associativity"}) {
    CAPTURE(law);
    CHECK(with.law(law).passed);
  }
  CHECK(without.law("variable-coherence").passed);
  CHECK(without.failed_laws() ==
        std::vector<std::string>{"functoriality-composition", "functoriality-identity", "naturality",
                                 "left-unit", "contraction", "weakening", "associativity"});
  CHECK(without.law("weakening").witness.contains("also_fails"));
}
