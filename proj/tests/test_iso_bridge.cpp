#include <doctest.h>

#include <random>

#include "clone_forge/corpus.hpp"
#include "clone_forge/errors.hpp"
#include "clone_forge/iso_bridge.hpp"

using namespace cf;

namespace {

Element atom(std::uint32_t v) { return Atom{v}; }
Element term(const char* text) { return parse_term(text); }

Budget exhaustive() {
  Budget b;
  b.sample_threshold = UINT64_MAX;
  return b;
}

ClonePtr free_b_e() { return std::make_shared<FreeClone>(binary_constant_signature()); }

}  // namespace

TEST_CASE("phi substitutes the trailing variables") {
  const auto a = s_functor(free_b_e());
  const std::vector<Element> us{term("x0"), term("b(x0,x0)")};
  CHECK(phi(*a, 2, 1, term("b(x1,x2)"), us) == term("b(x0,b(x0,x0))"));
  CHECK(phi(*a, 0, 2, term("b(x1,e)"), {}) == term("b(x1,e)"));
  const std::vector<Element> vs{term("e"), term("x1")};
  CHECK(phi(*a, 2, 2, term("b(x3,b(x2,x0))"), vs) == term("b(x1,b(e,x0))"));
}

TEST_CASE("phi on S(initial) picks a substituend or keeps an old variable") {
  const auto a = s_functor(builtin_clone("initial"));
  for (std::uint32_t n = 0; n <= 3; ++n) {
    for (std::uint32_t m = 0; m <= 3; ++m) {
      std::vector<Element> us;
      for (std::uint32_t k = 0; k < m; ++k) us.push_back(atom(n == 0 ? 0 : (k * 7 + 1) % n));
      if (n == 0 && m > 0) continue;
      for (std::uint32_t i = 0; i < n + m; ++i) {
        const Element expected = i < n ? atom(i) : us[i - n];
        CHECK(phi(*a, m, n, atom(i), us) == expected);
      }
    }
  }
}

TEST_CASE("C(S(free)) has the term clone operations") {
  const auto c = c_functor(s_functor(free_b_e()));
  CHECK(c->iota(2, 1) == term("x1"));
  const std::vector<Element> same{term("x0"), term("x0")};
  CHECK(c->mu(2, 1, term("b(x0,x1)"), same) == term("b(x0,x0)"));
  const std::vector<Element> ordered{term("e"), term("b(x0,x1)")};
  CHECK(c->mu(2, 2, term("b(x0,x1)"), ordered) == term("b(e,b(x0,x1))"));

  const auto clone = free_b_e();
  Budget b;
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = rng() % 4, n = rng() % 4;
    const auto tm = clone->elements(m, b).elements;
    const auto tn = clone->elements(n, b).elements;
    const Element t = tm[rng() % tm.size()];
    std::vector<Element> us;
    std::vector<Term> uterms;
    for (std::size_t k = 0; k < m; ++k) {
      us.push_back(tn[rng() % tn.size()]);
      uterms.push_back(std::get<Term>(us.back()));
    }
    CHECK(c->mu(m, n, t, us) == Element(free_mu(m, n, std::get<Term>(t), uterms)));
  }
}

TEST_CASE("C of a truncated algebra refuses stages past the bound") {
  const auto a = std::make_shared<TableAlgebra>(
      materialize(*s_functor(builtin_clone("initial")), 2, exhaustive()));
  const auto c = c_functor(a);
  const std::vector<Element> one{atom(0)};
  CHECK(c->mu(1, 1, atom(0), one) == atom(0));
  const std::vector<Element> two{atom(0), atom(1)};
  CHECK_THROWS_AS(c->mu(2, 2, atom(0), two), RangeError);
}

TEST_CASE("round trips are the identity") {
  Budget b = exhaustive();
  b.max_arity = 3;
  b.max_depth = 1;
  for (const auto& [name, clone] : standard_clones(3)) {
    CAPTURE(name);
    CHECK(roundtrip_clone(clone, b).passed());
  }
  for (const auto& [name, alg] : standard_algebras(3)) {
    CAPTURE(name);
    CHECK(roundtrip_alg(alg, 3, b).passed());
  }
  const auto table = std::make_shared<TableAlgebra>(
      materialize(*s_functor(builtin_clone("initial")), 3, exhaustive()));
  const Report r = roundtrip_alg(table, 3, b);
  CHECK(r.passed());
}

TEST_CASE("the functors carry homomorphisms") {
  Budget b = exhaustive();
  b.max_depth = 1;
  const auto initial = builtin_clone("initial");
  const auto free = free_b_e();
  const ElementFamily to_var = [](std::size_t, const Element& e) -> Element {
    return Term::var(std::get<Atom>(e).value);
  };
  const Report s = s_on_hom(to_var, initial, free, 3, b);
  CHECK(s.passed());
  CHECK(s.has("source:preserves-mu"));
  CHECK(s.has("target:preserves-s"));

  const auto sa = s_functor(initial);
  const auto sb = s_functor(free);
  const Report c = c_on_hom(variable_family(sb), sa, sb, 3, b);
  CHECK(c.passed());

  const ElementFamily constant = [](std::size_t, const Element&) -> Element { return parse_term("e"); };
  const Report bad = s_on_hom(constant, free, free, 2, b);
  CHECK_FALSE(bad.passed());
  CHECK_FALSE(bad.law("source:preserves-iota").passed);
  CHECK_FALSE(bad.law("target:preserves-v").passed);
}
