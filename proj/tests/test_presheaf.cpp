#include <doctest.h>

#include "clone_forge/errors.hpp"
#include "clone_forge/presheaf.hpp"

using namespace cf;

namespace {

Element atom(std::uint32_t v) { return Atom{v}; }

Budget exhaustive() {
  Budget b;
  b.sample_threshold = UINT64_MAX;
  return b;
}

}  // namespace

TEST_CASE("V acts by lookup") {
  const auto v = representable_v();
  const auto g = generators();
  CHECK(v->act(g.c, atom(1)) == atom(0));
  CHECK(v->act(old_inclusion(2), atom(1)) == atom(1));
  CHECK(v->carrier(3, Budget{}).elements.size() == 3);
  CHECK(v->carrier(0, Budget{}).elements.empty());
  CHECK_THROWS_AS(v->act(g.c, atom(2)), RangeError);
}

TEST_CASE("delta shifts stages by one and acts by f + id") {
  const auto v = representable_v();
  const auto d = delta_apply(v);
  CHECK(d->carrier(2, Budget{}).elements.size() == 3);
  const FinMap f(3, {2, 0});
  // f + id_1 = [2,0,3]
  CHECK(d->act(f, atom(0)) == atom(2));
  CHECK(d->act(f, atom(2)) == atom(3));
}

TEST_CASE("delta structure maps on V") {
  const auto ds = delta_structure(representable_v());
  // id_1 + c = [0,1,1]
  CHECK(ds.contraction(1, atom(2)) == atom(1));
  CHECK(ds.contraction(1, atom(0)) == atom(0));
  // id_1 + w : 1 -> 2 is [0]
  CHECK(ds.weakening(1, atom(0)) == atom(0));
  // id_1 + s = [0,2,1]
  CHECK(ds.swap(1, atom(1)) == atom(2));
  CHECK(ds.swap(1, atom(2)) == atom(1));
  CHECK(ds.swap(1, atom(0)) == atom(0));
}

TEST_CASE("strengths pair elements and weaken the passive side") {
  const auto v = representable_v();
  const auto st = strengths(v, v);
  CHECK(st.str(2, atom(2), atom(1)) == ElementPair{atom(2), atom(1)});
  CHECK(st.str_left(2, atom(0), atom(2)) == ElementPair{atom(0), atom(2)});
  const auto b = st.str_bullet(1, atom(1), atom(0), atom(0));
  CHECK(b == std::array<Element, 4>{atom(1), atom(0), atom(0), atom(0)});
  // (a, b) |-> (act(id_1 + s, a), b)
  CHECK(st.dist(1, atom(1), atom(1)) == ElementPair{atom(2), atom(1)});
  const ElementPair p{atom(3), atom(1)};
  CHECK(ell(p) == p);
  CHECK(ell_inverse(ell(p)) == p);
}

TEST_CASE("V and its tabulation satisfy every delta law") {
  const auto v = representable_v();
  CHECK(check_functoriality(*v, 3, exhaustive()).passed());
  const Report r = check_delta_laws(v, 3, exhaustive());
  CHECK(r.passed());
  CHECK(r.has("monad:braid"));
  CHECK(r.has("naturality:str-bullet"));
  const auto t = std::make_shared<TablePresheaf>(tabulate(*v, 3, exhaustive()));
  CHECK(t->sizes() == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(check_delta_laws(t, 3, exhaustive()).passed());
}

TEST_CASE("delta monoid images fail exactly where the finite maps do") {
  const auto v = representable_v();
  const auto g = generators();
  for (const auto& s : enumerate_maps(2, 2)) {
    const Report in_f = check_symmetric_monoid(g.c, g.w, s);
    const Report in_v = check_delta_monoid(*v, 4, exhaustive(), g.c, g.w, s);
    CAPTURE(s.to_string());
    CHECK(in_f.failed_laws() == in_v.failed_laws());
  }
}

TEST_CASE("a corrupted action table is caught with a replayable witness") {
  const auto v = representable_v();
  const TablePresheaf t = tabulate(*v, 2, exhaustive());
  const FinMap swap(2, {1, 0});
  const auto broken = std::make_shared<TablePresheaf>(t.with_image(swap, 0, 0));
  const Report f = check_functoriality(*broken, 2, exhaustive());
  CHECK_FALSE(f.passed());
  const auto& law = f.law(f.failed_laws().front());
  CHECK(law.witness.contains("f"));
  CHECK_FALSE(check_delta_laws(broken, 2, exhaustive()).passed());
}

TEST_CASE("truncated presheaves refuse stages past their bound") {
  const auto v = representable_v();
  const auto t = std::make_shared<TablePresheaf>(tabulate(*v, 2, exhaustive()));
  CHECK_THROWS_AS(require_stage(*t, 3), RangeError);
  CHECK_NOTHROW(require_stage(*t, 2));
  CHECK(DeltaPresheaf(t).bound() == std::optional<std::size_t>{1});
  const Report r = check_delta_laws(t, 5, exhaustive());
  CHECK(r.passed());
  CHECK_FALSE(r.notes.empty());
}
