#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "clone_forge/clone.hpp"
#include "clone_forge/corpus.hpp"
#include "clone_forge/errors.hpp"

using namespace cf;

namespace {

// Independent term model: printed form built by hand, substitution by recursion.
struct Tree {
  int var = -1;
  std::string op;
  std::vector<Tree> args;
};

std::string show(const Tree& t) {
  if (t.var >= 0) return "x" + std::to_string(t.var);
  if (t.args.empty()) return t.op;
  std::string s = t.op + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) s += (i ? "," : "") + show(t.args[i]);
  return s + ")";
}

Tree subst(const Tree& t, const std::vector<Tree>& us) {
  if (t.var >= 0) return us[t.var];
  Tree out{-1, t.op, {}};
  for (const auto& a : t.args) out.args.push_back(subst(a, us));
  return out;
}

Tree random_tree(std::mt19937_64& rng, int vars, int depth) {
  const auto roll = rng() % 3;
  if (depth == 0 || roll == 0) {
    if (vars == 0 || rng() % 4 == 0) return Tree{-1, "e", {}};
    return Tree{static_cast<int>(rng() % vars), "", {}};
  }
  if (roll == 1) return Tree{-1, "e", {}};
  return Tree{-1, "b", {random_tree(rng, vars, depth - 1), random_tree(rng, vars, depth - 1)}};
}

// Terms over n variables of depth at most d for {b:2, e:0}.
std::uint64_t term_count(std::uint64_t n, std::size_t d) {
  std::uint64_t t = n;
  for (std::size_t k = 0; k < d; ++k) t = n + 1 + t * t;
  return t;
}

// Closure of the projections {0,1}^n -> {0,1} under pointwise meet, as bitmasks
// indexed by the argument tuple read as a binary number (first argument high).
std::set<std::uint32_t> meet_closure(std::size_t n) {
  const std::uint32_t rows = 1u << n;
  std::set<std::uint32_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t mask = 0;
    for (std::uint32_t r = 0; r < rows; ++r)
      if ((r >> (n - 1 - i)) & 1u) mask |= 1u << r;
    out.insert(mask);
  }
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<std::uint32_t> now(out.begin(), out.end());
    for (auto a : now)
      for (auto b : now) grew |= out.insert(a & b).second;
  }
  return out;
}

std::uint32_t as_mask(const Element& e) {
  const auto& v = std::get<FunctionTable>(e).values;
  std::uint32_t mask = 0;
  for (std::size_t r = 0; r < v.size(); ++r)
    if (v[r]) mask |= 1u << r;
  return mask;
}

ClonePtr free_b_e() { return std::make_shared<FreeClone>(binary_constant_signature()); }

}  // namespace

TEST_CASE("terms print, parse and measure") {
  const Term t = parse_term("b(x2,b(e,x0))");
  CHECK(t.to_string() == "b(x2,b(e,x0))");
  CHECK(t.depth() == 3);
  CHECK(parse_term("e").depth() == 1);
  CHECK(Term::var(4).depth() == 0);
  CHECK(t.scope() == 3);
  CHECK(parse_term("e").scope() == 0);
  CHECK_THROWS_AS(parse_term("b(x0,"), ValidationError);
  CHECK(parse_term("b(x0,x1)") == Term::app("b", {Term::var(0), Term::var(1)}));
}

TEST_CASE("free substitution agrees with the independent tree model") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const int m = static_cast<int>(rng() % 4), n = static_cast<int>(rng() % 4);
    const Tree t = random_tree(rng, m, 3);
    std::vector<Tree> us;
    std::vector<Term> uterms;
    for (int i = 0; i < m; ++i) {
      us.push_back(random_tree(rng, n, 2));
      uterms.push_back(parse_term(show(us.back())));
    }
    const Term got = free_mu(m, n, parse_term(show(t)), uterms);
    CHECK(got.to_string() == show(subst(t, us)));
  }
}

TEST_CASE("free substitution example") {
  const Term t = parse_term("b(x1,x0)");
  const std::vector<Term> us{parse_term("e"), parse_term("b(x0,x0)")};
  CHECK(free_mu(2, 1, t, us).to_string() == "b(b(x0,x0),e)");
  CHECK_THROWS_AS(free_mu(1, 1, t, std::vector<Term>{Term::var(0)}), RangeError);
}

TEST_CASE("free clone carriers have the expected sizes") {
  const auto clone = free_b_e();
  for (std::size_t d = 0; d <= 2; ++d) {
    Budget b;
    b.max_depth = d;
    for (std::size_t n = 0; n <= 4; ++n) {
      const Carrier c = clone->elements(n, b);
      CHECK(c.elements.size() == term_count(n, d));
      CHECK_FALSE(c.complete);
      const std::set<std::string> distinct = [&] {
        std::set<std::string> s;
        for (const auto& e : c.elements) s.insert(to_string(e));
        return s;
      }();
      CHECK(distinct.size() == c.elements.size());
    }
  }
  CHECK(term_count(3, 2) == 173);
}

TEST_CASE("meet clone matches the bitmask closure") {
  const auto clone = finite_clone_of_algebra(meet_algebra(), 4);
  Budget b;
  for (std::size_t n = 0; n <= 4; ++n) {
    const auto oracle = meet_closure(n);
    CHECK(oracle.size() == (1u << n) - 1);
    std::set<std::uint32_t> got;
    for (const auto& e : clone->elements(n, b).elements) got.insert(as_mask(e));
    CHECK(got == oracle);
    CHECK(clone->elements(n, b).elements.size() == oracle.size());
  }
  CHECK_THROWS_AS(clone->elements(5, b), RangeError);
}

TEST_CASE("standard clones satisfy the clone laws") {
  Budget b;
  b.max_arity = 2;
  b.max_depth = 1;
  for (const auto& [name, clone] : standard_clones(3)) {
    CAPTURE(name);
    const Report r = clone_laws_check(*clone, b);
    CHECK(r.passed());
    CHECK(r.laws.size() == 3);
  }
}

namespace {

// Forgets the substituends: breaks the projection law.
class StubbornClone final : public Clone {
 public:
  std::string name() const override { return "stubborn"; }
  Carrier elements(std::size_t n, const Budget& b) const override { return inner_->elements(n, b); }
  Element mu(std::size_t, std::size_t, const Element& t, std::span<const Element>) const override {
    return t;
  }
  Element iota(std::size_t m, std::size_t i) const override { return inner_->iota(m, i); }

 private:
  ClonePtr inner_ = builtin_clone("initial");
};

}  // namespace

TEST_CASE("a clone ignoring substituends fails with a witness") {
  Budget b;
  const Report r = clone_laws_check(StubbornClone{}, b);
  CHECK_FALSE(r.law("projection").passed);
  CHECK_FALSE(r.law("projection").witness.is_null());
}

TEST_CASE("initial theory hom-sets have m^n elements") {
  const auto clone = builtin_clone("initial");
  Budget b;
  for (std::size_t m = 0; m <= 4; ++m) {
    for (std::size_t n = 0; n <= 4; ++n) {
      std::uint64_t expected = 1;
      for (std::size_t k = 0; k < n; ++k) expected *= m;
      CHECK(theory_hom_count(*clone, m, n, b) == expected);
      CHECK(enumerate_theory_homs(*clone, m, n, b).size() == expected);
    }
  }
}

TEST_CASE("theory composition is associative and unital, and a bad composer is caught") {
  Budget b;
  b.max_depth = 1;
  for (const auto& [name, clone] : standard_clones(3)) {
    CAPTURE(name);
    CHECK(theory_laws_check(*clone, 2, b).passed());
  }
  const auto clone = builtin_clone("initial");
  const TheoryComposer keep_first = [](const Clone&, const TheoryHom& f, const TheoryHom& g) {
    return TheoryHom{g.src, f.dst, f.components};
  };
  CHECK_FALSE(theory_laws_check(*clone, 2, b, keep_first).passed());
}

TEST_CASE("theory composition substitutes the second into the first") {
  const auto clone = free_b_e();
  const TheoryHom f{2, 1, {parse_term("b(x1,x0)")}};
  const TheoryHom g{1, 2, {parse_term("e"), parse_term("b(x0,x0)")}};
  const TheoryHom fg = theory_compose(*clone, f, g);
  CHECK(fg.src == 1);
  CHECK(fg.dst == 1);
  CHECK(to_string(fg.components[0]) == "b(b(x0,x0),e)");
}

TEST_CASE("clone homomorphism check") {
  Budget b;
  b.max_depth = 1;
  const auto clone = free_b_e();
  const ElementFamily id = [](std::size_t, const Element& e) { return e; };
  CHECK(clone_hom_check(id, *clone, *clone, b).passed());
  const ElementFamily to_e = [](std::size_t, const Element&) -> Element { return parse_term("e"); };
  CHECK_FALSE(clone_hom_check(to_e, *clone, *clone, b).law("preserves-iota").passed);
}

TEST_CASE("inputs are validated") {
  CHECK_THROWS_AS(builtin_clone("nope"), ValidationError);
  Signature sig;
  sig.operators["x0"] = 1;
  CHECK_THROWS_AS(sig.validate(), ValidationError);
  FiniteAlgebra alg;
  alg.carrier = 2;
  alg.operations["m"] = {2, {0, 0, 1}};
  CHECK_THROWS_AS(alg.validate(), ValidationError);
  CHECK(well_formed(binary_constant_signature(), parse_term("b(x0,e)"), 1));
  CHECK_FALSE(well_formed(binary_constant_signature(), parse_term("b(x1,e)"), 1));
  CHECK_FALSE(well_formed(binary_constant_signature(), parse_term("b(e)"), 1));
}
