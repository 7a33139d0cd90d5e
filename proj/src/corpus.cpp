#include "clone_forge/corpus.hpp"

#include <algorithm>

#include "clone_forge/errors.hpp"

namespace cf {

FiniteAlgebra meet_algebra() {
  FiniteAlgebra alg;
  alg.carrier = 2;
  alg.operations["meet"] = FiniteAlgebra::Operation{2, {0, 0, 0, 1}};
  return alg;
}

Signature binary_constant_signature() {
  Signature sig;
  sig.operators = {{"b", 2}, {"e", 0}};
  return sig;
}

std::vector<NamedClone> standard_clones(std::size_t max_arity) {
  return {
      {"initial", builtin_clone("initial")},
      {"terminal", builtin_clone("terminal")},
      {"arrow", builtin_clone("arrow")},
      {"free", std::make_shared<FreeClone>(binary_constant_signature())},
      {"meet", finite_clone_of_algebra(meet_algebra(), max_arity)},
  };
}

std::vector<NamedAlgebra> standard_algebras(std::size_t max_arity) {
  std::vector<NamedAlgebra> out;
  for (auto& [name, clone] : standard_clones(max_arity)) out.push_back({"S(" + name + ")", s_functor(clone)});
  return out;
}

namespace {

const Term& as_term(const Element& e) {
  const auto* t = std::get_if<Term>(&e);
  if (!t) throw ShapeError("expected a term, got " + to_string(e));
  return *t;
}

bool occurs(const Term& t, std::uint32_t i) {
  if (t.is_var()) return t.index() == i;
  for (const auto& a : t.args())
    if (occurs(a, i)) return true;
  return false;
}

Term b(const Term& x, const Term& y) { return Term::app("b", {x, y}); }
Term e() { return Term::app("e", {}); }

FunctionTable meet_tables(const Element& x, const Element& y) {
  const auto& a = std::get<FunctionTable>(x).values;
  const auto& c = std::get<FunctionTable>(y).values;
  FunctionTable out;
  for (std::size_t i = 0; i < a.size(); ++i) out.values.push_back(std::min(a[i], c[i]));
  return out;
}

using SubstFn = RewiredAlgebra::SubstFn;
using VarFn = RewiredAlgebra::VarFn;
using ActFn = RewiredAlgebra::ActFn;

AlgebraPtr rewire(AlgebraPtr base, std::string name, ActFn act, SubstFn s, VarFn v) {
  return std::make_shared<RewiredAlgebra>(std::move(base), std::move(name), std::move(act),
                                          std::move(s), std::move(v));
}

}  // namespace

std::vector<NamedAlgebra> rewired_variants(std::size_t max_arity) {
  const auto free = s_functor(std::make_shared<FreeClone>(binary_constant_signature()));
  const auto initial = s_functor(builtin_clone("initial"));
  const auto meet = s_functor(finite_clone_of_algebra(meet_algebra(), max_arity));
  std::vector<NamedAlgebra> out;
  auto add = [&](AlgebraPtr base, const std::string& name, ActFn act, SubstFn s, VarFn v) {
    out.push_back({name, rewire(std::move(base), name, std::move(act), std::move(s), std::move(v))});
  };

  add(free, "free: s(t,u) = u", {},
      [](const SubstAlgebra&, std::size_t, const Element&, const Element& u) { return u; }, {});
  add(free, "free: s(t,u) = t[x_m := b(u,u)]", {},
      [](const SubstAlgebra& a, std::size_t m, const Element& t, const Element& u) {
        return a.substitute(m, t, b(as_term(u), as_term(u)));
      },
      {});
  add(free, "free: s(t,u) = t[x_m := e]", {},
      [](const SubstAlgebra& a, std::size_t m, const Element& t, const Element&) {
        return a.substitute(m, t, e());
      },
      {});
  add(free, "free: s(t,u) = b(t[x_m := u], u)", {},
      [](const SubstAlgebra& a, std::size_t m, const Element& t, const Element& u) {
        return Element(b(as_term(a.substitute(m, t, u)), as_term(u)));
      },
      {});
  add(free, "free: s(t,u) = t[x_m := b(u,u)] when x_m occurs in t and u is compound", {},
      [](const SubstAlgebra& a, std::size_t m, const Element& t, const Element& u) {
        const Term& ut = as_term(u);
        if (ut.is_var() || !occurs(as_term(t), static_cast<std::uint32_t>(m))) {
          return a.substitute(m, t, u);
        }
        return a.substitute(m, t, b(ut, ut));
      },
      {});
  // Variants that differ from substitution only on inputs of a shape that
  // renaming preserves, so s stays natural.
  add(free, "free: s(x_m, u) = b(u,u) for compound u", {},
      [](const SubstAlgebra& a, std::size_t m, const Element& t, const Element& u) {
        const Term &tt = as_term(t), &ut = as_term(u);
        if (tt.is_var() && tt.index() == m && !ut.is_var()) return Element(b(ut, ut));
        return a.substitute(m, t, u);
      },
      {});
  add(free, "free: s(t,u) = b(t,t) when x_m does not occur in t and u is compound", {},
      [](const SubstAlgebra& a, std::size_t m, const Element& t, const Element& u) {
        const Term &tt = as_term(t), &ut = as_term(u);
        if (ut.is_var() || occurs(tt, static_cast<std::uint32_t>(m))) return a.substitute(m, t, u);
        return Element(b(tt, tt));
      },
      {});
  add(free, "free: s(t,x_j) = b(r,r) for r = t[x_m := x_j] when t is compound and x_m occurs in t",
      {},
      [](const SubstAlgebra& a, std::size_t m, const Element& t, const Element& u) {
        const Term &tt = as_term(t), &ut = as_term(u);
        const Element r = a.substitute(m, t, u);
        if (tt.is_var() || !ut.is_var() || !occurs(tt, static_cast<std::uint32_t>(m))) return r;
        return Element(b(as_term(r), as_term(r)));
      },
      {});
  add(free, "free: v_m = e", {}, {}, [](const SubstAlgebra&, std::size_t) { return Element(e()); });
  add(free, "free: v_m = b(x_m, x_m)", {}, {}, [](const SubstAlgebra&, std::size_t m) {
    const Term x = Term::var(static_cast<std::uint32_t>(m));
    return Element(b(x, x));
  });
  add(free, "free: v_m = x_0", {}, {}, [](const SubstAlgebra&, std::size_t) {
    return Element(Term::var(0));
  });
  add(free, "free: act(f, t) = e for non-identity f",
      [](const SubstAlgebra& a, const FinMap& f, const Element& t) -> Element {
        if (f == FinMap::identity(f.dom())) return a.act(f, t);
        return e();
      },
      {}, {});
  add(free, "free: act(f, t) = b(t', t') for non-injective f",
      [](const SubstAlgebra& a, const FinMap& f, const Element& t) -> Element {
        const Element image = a.act(f, t);
        std::vector<bool> hit(f.cod(), false);
        for (std::size_t i = 0; i < f.dom(); ++i) {
          if (hit[f(i)]) return b(as_term(image), as_term(image));
          hit[f(i)] = true;
        }
        return image;
      },
      {}, {});
  add(initial, "initial: s(i,j) = j", {},
      [](const SubstAlgebra&, std::size_t, const Element&, const Element& j) { return j; }, {});
  add(initial, "initial: s(i,j) = i when i < m, else 0", {},
      [](const SubstAlgebra&, std::size_t m, const Element& i, const Element&) -> Element {
        const auto v = std::get<Atom>(i).value;
        return Atom{v < m ? v : 0U};
      },
      {});
  add(meet, "meet: s(t,u) = t[x_m := u] meet u", {},
      [](const SubstAlgebra& a, std::size_t m, const Element& t, const Element& u) -> Element {
        return meet_tables(a.substitute(m, t, u), u);
      },
      {});
  add(meet, "meet: s(t,u) = t[x_m := u meet x_0] for m > 0", {},
      [](const SubstAlgebra& a, std::size_t m, const Element& t, const Element& u) -> Element {
        if (m == 0) return a.substitute(m, t, u);
        const auto& clone = dynamic_cast<const CloneSubstAlgebra&>(a).clone();
        return a.substitute(m, t, meet_tables(u, clone.iota(m, 0)));
      },
      {});
  return out;
}

std::vector<NamedAlgebra> table_variants(std::size_t bound) {
  Budget budget;
  budget.max_arity = bound;
  std::vector<NamedAlgebra> out;
  auto push = [&](TableAlgebra a, const std::string& name) {
    out.push_back({name, std::make_shared<TableAlgebra>(a.renamed(name))});
  };
  const std::vector<std::pair<std::string, AlgebraPtr>> bases{
      {"S(initial)", s_functor(builtin_clone("initial"))},
      {"S(meet)", s_functor(finite_clone_of_algebra(meet_algebra(), bound))},
  };
  for (const auto& [label, base] : bases) {
    const TableAlgebra t = materialize(*base, bound, budget);
    const auto& p = t.base();
    for (std::size_t m = 0; m < bound; ++m) {
      for (std::uint32_t x = 0; x < p.size(m + 1); ++x) {
        for (std::uint32_t y = 0; y < p.size(m); ++y) {
          const auto current = t.s_tables()[m][x * p.size(m) + y];
          for (std::uint32_t z = 0; z < p.size(m); ++z) {
            if (z == current) continue;
            push(t.with_s(m, x, y, z), label + " s_" + std::to_string(m) + "(" + std::to_string(x) +
                                           "," + std::to_string(y) + ") := " + std::to_string(z));
          }
        }
      }
      for (std::uint32_t z = 0; z < p.size(m + 1); ++z) {
        if (z == t.v_indices()[m]) continue;
        push(t.with_v(m, z), label + " v_" + std::to_string(m) + " := " + std::to_string(z));
      }
    }
    for (std::size_t m = 0; m <= std::min<std::size_t>(bound, 2); ++m) {
      for (std::size_t n = 0; n <= std::min<std::size_t>(bound, 2); ++n) {
        if (p.size(m) == 0 || p.size(n) < 2) continue;
        for (const auto& f : enumerate_maps(m, n)) {
          const auto current = p.actions()[m][n][f.rank()][0];
          const auto other = current == 0 ? 1U : 0U;
          push(t.with_image(f, 0, other), label + " act(" + f.to_string() + ", 0) := " +
                                              std::to_string(other));
        }
      }
    }
  }
  if (bound >= 3) {
    const TableAlgebra t = materialize(*s_functor(builtin_clone("initial")), bound, budget);
    TableAlgebra z = t;
    for (std::uint32_t x = 0; x < 3; ++x)
      for (std::uint32_t y = 0; y < 2; ++y) z = z.with_s(2, x, y, 0);
    push(z, "S(initial) s_2 constantly 0");
  }
  return out;
}

namespace {

TablePresheaf::ActionTables empty_tables(std::size_t bound) {
  return TablePresheaf::ActionTables(bound + 1,
                                     std::vector<std::vector<std::vector<std::uint32_t>>>(bound + 1));
}

// k points at every stage, every map acting as the identity.
TableAlgebra constant_algebra(std::size_t k, std::size_t bound, std::vector<std::uint32_t> s,
                              std::uint32_t v, std::string name) {
  std::vector<std::uint32_t> id(k);
  for (std::uint32_t i = 0; i < k; ++i) id[i] = i;
  auto tables = empty_tables(bound);
  for (std::size_t m = 0; m <= bound; ++m)
    for (std::size_t n = 0; n <= bound; ++n) tables[m][n].assign(enumerate_maps(m, n).size(), id);
  TablePresheaf p(std::vector<std::size_t>(bound + 1, k), std::move(tables), {}, std::move(name));
  return TableAlgebra(std::move(p), std::vector<std::vector<std::uint32_t>>(bound, s),
                      std::vector<std::uint32_t>(bound, v));
}

// A(m) = subsets of ord m as bitmasks, acting by direct image; v_m = {m}.
TableAlgebra subset_algebra(std::size_t bound,
                            const std::function<std::uint32_t(std::size_t, std::uint32_t, std::uint32_t)>& s,
                            std::string name) {
  std::vector<std::size_t> sizes;
  for (std::size_t m = 0; m <= bound; ++m) sizes.push_back(std::size_t{1} << m);
  auto tables = empty_tables(bound);
  for (std::size_t m = 0; m <= bound; ++m) {
    for (std::size_t n = 0; n <= bound; ++n) {
      for (const auto& f : enumerate_maps(m, n)) {
        std::vector<std::uint32_t> images;
        for (std::uint32_t t = 0; t < sizes[m]; ++t) {
          std::uint32_t r = 0;
          for (std::size_t i = 0; i < m; ++i)
            if (t >> i & 1U) r |= 1U << f(i);
          images.push_back(r);
        }
        tables[m][n].push_back(std::move(images));
      }
    }
  }
  std::vector<std::vector<std::uint32_t>> st(bound);
  std::vector<std::uint32_t> v(bound);
  for (std::size_t m = 0; m < bound; ++m) {
    for (std::uint32_t t = 0; t < sizes[m + 1]; ++t)
      for (std::uint32_t u = 0; u < sizes[m]; ++u) st[m].push_back(s(m, t, u));
    v[m] = 1U << m;
  }
  return TableAlgebra(TablePresheaf(sizes, std::move(tables), {}, std::move(name)), std::move(st),
                      std::move(v));
}

// Adds a point at the top stage that every map sends where it sends `twin`,
// including the identity, so act(id, junk) = twin.
TableAlgebra with_top_twin(const TableAlgebra& a, std::uint32_t twin, std::string name) {
  const auto& p = a.base();
  const std::size_t top = *p.bound();
  auto sizes = p.sizes();
  auto tables = p.actions();
  sizes[top] += 1;
  for (std::size_t n = 0; n <= top; ++n)
    for (auto& images : tables[top][n]) images.push_back(images[twin]);
  auto s = a.s_tables();
  const auto width = p.size(top - 1);
  auto& last = s[top - 1];
  last.insert(last.end(), last.begin() + twin * width, last.begin() + (twin + 1) * width);
  return TableAlgebra(TablePresheaf(sizes, std::move(tables), {}, std::move(name)), std::move(s),
                      a.v_indices());
}

bool occurs_twice(const Term& t, std::uint32_t i, int& seen) {
  if (t.is_var()) return (seen += t.index() == i) >= 2;
  for (const auto& a : t.args())
    if (occurs_twice(a, i, seen)) return true;
  return false;
}

}  // namespace

std::vector<NamedAlgebra> isolating_variants(std::size_t bound) {
  if (bound < 3) throw RangeError("isolating variants need bound >= 3");
  Budget budget;
  budget.max_arity = bound;
  std::vector<NamedAlgebra> out;
  auto push = [&](TableAlgebra a) {
    const std::string name = a.name();
    out.push_back({name, std::make_shared<TableAlgebra>(std::move(a))});
  };
  const TableAlgebra initial = materialize(*s_functor(builtin_clone("initial")), bound, budget);

  push(with_top_twin(initial, 0, "S(initial) with a second copy of x_0 at stage " + std::to_string(bound)));

  // [1,1,...,1,0] : bound -> 2 is neither f + id_1 nor id + c, so s never sees it.
  std::vector<std::uint32_t> table(bound, 1);
  table.back() = 0;
  const FinMap g(2, table);
  push(initial.with_image(g, bound - 1, 1)
           .renamed("S(initial) act(" + g.to_string() + ", " + std::to_string(bound - 1) + ") := 1"));

  push(constant_algebra(2, bound, {0, 0, 1, 1}, 0, "two points, trivial action, s(x,y) = x"));
  push(constant_algebra(2, bound, {0, 1, 1, 1}, 0, "two points, trivial action, s(x,y) = x or y"));
  push(subset_algebra(
      bound,
      [](std::size_t m, std::uint32_t t, std::uint32_t u) -> std::uint32_t {
        const std::uint32_t x = 1U << m;
        if (!(t & x)) return t;
        return t == x ? u : 0U;
      },
      "subsets: s(t,u) = {} when x_m occurs in t with another variable"));

  const auto free = s_functor(std::make_shared<FreeClone>(binary_constant_signature()));
  const std::string name = "free: s(t,u) = t[x_m := e] when x_m occurs twice in t and u is compound";
  out.push_back({name, rewire(free, name, {},
                              [](const SubstAlgebra& a, std::size_t m, const Element& t,
                                 const Element& u) -> Element {
                                int seen = 0;
                                if (!as_term(u).is_var() &&
                                    occurs_twice(as_term(t), static_cast<std::uint32_t>(m), seen)) {
                                  return a.substitute(m, t, e());
                                }
                                return a.substitute(m, t, u);
                              },
                              {})});
  return out;
}

std::vector<NamedAlgebra> two_point_variants(std::size_t bound) {
  std::vector<NamedAlgebra> out;
  for (std::uint32_t op = 0; op < 16; ++op) {
    const std::vector<std::uint32_t> s{op >> 3 & 1U, op >> 2 & 1U, op >> 1 & 1U, op & 1U};
    for (std::uint32_t v = 0; v < 2; ++v) {
      const std::string name = "two points, trivial action, s = [" + std::to_string(s[0]) + "," +
                               std::to_string(s[1]) + "," + std::to_string(s[2]) + "," +
                               std::to_string(s[3]) + "], v = " + std::to_string(v);
      out.push_back({name, std::make_shared<TableAlgebra>(constant_algebra(2, bound, s, v, name))});
    }
  }
  return out;
}

ElementFamily variable_family(AlgebraPtr target) {
  return [target](std::size_t m, const Element& x) -> Element {
    const auto i = std::get<Atom>(x).value;
    return target->act(point(m, i), target->variable(0));
  };
}

Report mutation_sensitivity(const std::vector<NamedAlgebra>& corpus, std::size_t bound,
                            const Budget& budget) {
  Report report;
  report.subject = "mutation sensitivity over " + std::to_string(corpus.size()) + " structures";
  std::vector<std::pair<std::string, std::vector<std::string>>> failures;
  for (const auto& [name, alg] : corpus) failures.emplace_back(name, check_presentation(*alg, bound, budget).failed_laws());

  static const std::vector<std::string> laws{
      "functoriality-composition", "functoriality-identity", "naturality",   "left-unit",
      "contraction",               "weakening",              "associativity", "variable-coherence"};
  for (const auto& law : laws) {
    LawResult r;
    r.name = law;
    r.space = corpus.size();
    const std::pair<std::string, std::vector<std::string>>* best = nullptr;
    for (const auto& f : failures) {
      ++r.checked;
      if (std::find(f.second.begin(), f.second.end(), law) == f.second.end()) continue;
      if (!best || f.second.size() < best->second.size()) best = &f;
    }
    r.passed = best != nullptr && best->second.size() == 1;
    if (!best) {
      r.witness = json{{"reason", "no structure in the corpus fails this law"}};
    } else if (!r.passed) {
      r.witness = json{{"reason", "every structure failing this law fails another law too"},
                       {"closest", best->first},
                       {"also_fails", best->second}};
    } else {
      report.notes.push_back(law + ": \"" + best->first + "\" fails it alone");
    }
    report.laws.push_back(std::move(r));
  }
  return report;
}

}  // namespace cf
