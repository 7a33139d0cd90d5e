#include <algorithm>

#include "clone_forge/errors.hpp"
#include "clone_forge/presheaf.hpp"
#include "indexed_presheaf.hpp"

namespace cf {

namespace {

using detail::ActTable;
using detail::CachedPresheaf;
using detail::IndexedPresheaf;
using detail::MapCache;
using detail::npos;

std::size_t effective_bound(const Presheaf& p, std::size_t bound, Report& report) {
  if (auto b = p.bound(); b && *b < bound) {
    report.notes.push_back("bound lowered from " + std::to_string(bound) + " to residual bound " +
                           std::to_string(*b) + " of " + p.name());
    return *b;
  }
  return bound;
}

FinMap id_plus(std::size_t m, const FinMap& g) { return coproduct(FinMap::identity(m), g); }
FinMap plus_id(const FinMap& f, std::size_t k) { return coproduct(f, FinMap::identity(k)); }

json pair_json(const ElementPair& p) {
  return json::array({element_to_json(p.first), element_to_json(p.second)});
}

template <std::size_t N>
json tuple_json(const std::array<Element, N>& t) {
  json out = json::array();
  for (const auto& e : t) out.push_back(element_to_json(e));
  return out;
}

bool same_index(std::size_t ia, std::size_t ib) { return ia == ib && ia != npos; }

}  // namespace

Report check_functoriality(const Presheaf& p, std::size_t bound, const Budget& budget) {
  Report report;
  report.subject = "functoriality of " + p.name();
  const std::size_t b = effective_bound(p, bound, report);
  IndexedPresheaf ip(p, b, budget);
  detail::add_carrier_notes(report, ip);
  MapCache maps(b);

  LawCheck identity("identity", budget);
  for (std::size_t m = 0; m <= b; ++m) {
    const FinMap id = FinMap::identity(m);
    const ActTable& t = ip.table(id);
    identity.over({ip.size(m)}, [&](std::span<const std::size_t> idx) -> std::optional<json> {
      const std::size_t x = idx[0];
      if (t.index[x] == x || ip.eq(m, t.image[x], ip.at(m, x))) return std::nullopt;
      return json{{"f", to_json(id)}, {"x", element_to_json(ip.at(m, x))},
                  {"image", element_to_json(t.image[x])}};
    });
  }
  report.laws.push_back(std::move(identity).finish());

  // act(f, act(g, x)) = act(g;f, x) for g : l -> m, f : m -> n.
  LawCheck composition("composition", budget);
  for (std::size_t l = 0; l <= b; ++l) {
    for (std::size_t m = 0; m <= b; ++m) {
      for (std::size_t n = 0; n <= b; ++n) {
        const auto& gs = maps.maps(l, m);
        const auto& fs = maps.maps(m, n);
        if (gs.empty() || fs.empty() || ip.size(l) == 0) {
          composition.over({gs.size(), fs.size(), ip.size(l)}, [](auto) { return std::nullopt; });
          continue;
        }
        std::vector<const ActTable*> gt, ft, ht;
        for (const auto& g : gs) gt.push_back(&ip.table(g));
        for (const auto& f : fs) ft.push_back(&ip.table(f));
        for (const auto& g : gs)
          for (const auto& f : fs) ht.push_back(&ip.table(compose(g, f)));
        composition.over({gs.size(), fs.size(), ip.size(l)},
                         [&](std::span<const std::size_t> idx) -> std::optional<json> {
                           const auto gi = idx[0], fi = idx[1], x = idx[2];
                           const ActTable& tg = *gt[gi];
                           const ActTable& tf = *ft[fi];
                           const ActTable& th = *ht[gi * fs.size() + fi];
                           const std::size_t mid = tg.index[x];
                           if (mid != npos && same_index(tf.index[mid], th.index[x])) return std::nullopt;
                           const Element lhs =
                               mid != npos ? tf.image[mid] : p.act(fs[fi], tg.image[x]);
                           if (ip.eq(n, lhs, th.image[x])) return std::nullopt;
                           return json{{"g", to_json(gs[gi])},
                                       {"f", to_json(fs[fi])},
                                       {"x", element_to_json(ip.at(l, x))},
                                       {"lhs", element_to_json(lhs)},
                                       {"rhs", element_to_json(th.image[x])}};
                         });
      }
    }
  }
  report.laws.push_back(std::move(composition).finish());
  return report;
}

Report check_delta_monoid(const Presheaf& p, std::size_t bound, const Budget& budget,
                          const FinMap& c, const FinMap& w, const FinMap& s) {
  Report report;
  report.subject = "delta symmetric monad on " + p.name();
  const std::size_t b = effective_bound(p, bound, report);
  IndexedPresheaf ip(p, b, budget);

  for (const auto& d : symmetric_monoid_diagrams(c, w, s)) {
    std::size_t top = d.source;
    for (const auto& f : d.lhs) top = std::max(top, f.cod());
    for (const auto& f : d.rhs) top = std::max(top, f.cod());
    LawCheck check(d.name, budget);
    for (std::size_t m = 0; m + top <= b; ++m) {
      std::vector<FinMap> lhs, rhs;
      for (const auto& f : d.lhs) lhs.push_back(id_plus(m, f));
      for (const auto& f : d.rhs) rhs.push_back(id_plus(m, f));
      const std::size_t out = lhs.empty() ? m + d.source : lhs.back().cod();
      check.over({ip.size(m + d.source)}, [&](std::span<const std::size_t> idx) -> std::optional<json> {
        const Element& x = ip.at(m + d.source, idx[0]);
        Element l = x, r = x;
        for (const auto& f : lhs) l = ip.act(f, l);
        for (const auto& f : rhs) r = ip.act(f, r);
        if (ip.eq(out, l, r)) return std::nullopt;
        return json{{"m", m}, {"x", element_to_json(x)}, {"lhs", element_to_json(l)},
                    {"rhs", element_to_json(r)}};
      });
    }
    report.laws.push_back(std::move(check).finish());
  }
  return report;
}

Report check_delta_laws(PresheafPtr p, std::size_t bound, const Budget& budget) {
  Report report;
  report.subject = "delta laws on " + p->name();
  const std::size_t b = effective_bound(*p, bound, report);
  auto cached = std::make_shared<CachedPresheaf>(p, b, budget);
  const IndexedPresheaf& ip = cached->index();
  detail::add_carrier_notes(report, ip);
  MapCache maps(b);

  const Generators gen = generators();
  report.append(check_delta_monoid(*cached, b, budget, gen.c, gen.w, gen.s), "monad:");

  const DeltaStructure ds(cached);
  const Strengths st(cached, cached);
  auto delta = std::make_shared<DeltaPresheaf>(cached);
  const DeltaStructure dds(delta);  // structure maps of delta on delta(A)
  const Strengths dst(delta, delta);

  auto at = [&](std::size_t m, std::size_t i) -> const Element& { return ip.at(m, i); };
  auto pair_eq = [&](std::size_t m1, std::size_t m2, const ElementPair& l, const ElementPair& r) {
    return cached->eq(m1, l.first, r.first) && cached->eq(m2, l.second, r.second);
  };
  auto pair_fail = [&](std::size_t m1, std::size_t m2, const ElementPair& l, const ElementPair& r,
                       json inputs) -> std::optional<json> {
    if (pair_eq(m1, m2, l, r)) return std::nullopt;
    inputs["lhs"] = pair_json(l);
    inputs["rhs"] = pair_json(r);
    return inputs;
  };
  auto in2 = [](std::size_t m, const Element& a, const Element& b2) {
    return json{{"m", m}, {"a", element_to_json(a)}, {"b", element_to_json(b2)}};
  };

  // Right strength against the monad structure.
  {
    LawCheck mult("strength:multiplication", budget);
    LawCheck unit("strength:unit", budget);
    LawCheck sym("strength:symmetry", budget);
    for (std::size_t m = 0; m + 2 <= b; ++m) {
      mult.over({ip.size(m + 2), ip.size(m)}, [&](std::span<const std::size_t> idx) {
        const Element &a = at(m + 2, idx[0]), &y = at(m, idx[1]);
        const auto s1 = st.str(m, a, y);
        const auto s2 = st.str(m + 1, s1.first, s1.second);
        const ElementPair lhs{ds.contraction(m, s2.first), ds.contraction(m, s2.second)};
        const ElementPair rhs = st.str(m, ds.contraction(m, a), y);
        return pair_fail(m + 1, m + 1, lhs, rhs, in2(m, a, y));
      });
      sym.over({ip.size(m + 2), ip.size(m)}, [&](std::span<const std::size_t> idx) {
        const Element &a = at(m + 2, idx[0]), &y = at(m, idx[1]);
        const auto l1 = st.str(m, ds.swap(m, a), y);
        const auto lhs = st.str(m + 1, l1.first, l1.second);
        const auto r1 = st.str(m, a, y);
        const auto r2 = st.str(m + 1, r1.first, r1.second);
        const ElementPair rhs{ds.swap(m, r2.first), ds.swap(m, r2.second)};
        return pair_fail(m + 2, m + 2, lhs, rhs, in2(m, a, y));
      });
    }
    for (std::size_t m = 0; m + 1 <= b; ++m) {
      unit.over({ip.size(m), ip.size(m)}, [&](std::span<const std::size_t> idx) {
        const Element &x = at(m, idx[0]), &y = at(m, idx[1]);
        const auto lhs = st.str(m, ds.weakening(m, x), y);
        const ElementPair rhs{ds.weakening(m, x), ds.weakening(m, y)};
        return pair_fail(m + 1, m + 1, lhs, rhs, in2(m, x, y));
      });
    }
    report.laws.push_back(std::move(mult).finish());
    report.laws.push_back(std::move(unit).finish());
    report.laws.push_back(std::move(sym).finish());
  }

  // Left strength, mirrored.
  {
    LawCheck mult("left-strength:multiplication", budget);
    LawCheck unit("left-strength:unit", budget);
    LawCheck sym("left-strength:symmetry", budget);
    for (std::size_t m = 0; m + 2 <= b; ++m) {
      mult.over({ip.size(m), ip.size(m + 2)}, [&](std::span<const std::size_t> idx) {
        const Element &x = at(m, idx[0]), &bb = at(m + 2, idx[1]);
        const auto s1 = st.str_left(m, x, bb);
        const auto s2 = st.str_left(m + 1, s1.first, s1.second);
        const ElementPair lhs{ds.contraction(m, s2.first), ds.contraction(m, s2.second)};
        const ElementPair rhs = st.str_left(m, x, ds.contraction(m, bb));
        return pair_fail(m + 1, m + 1, lhs, rhs, in2(m, x, bb));
      });
      sym.over({ip.size(m), ip.size(m + 2)}, [&](std::span<const std::size_t> idx) {
        const Element &x = at(m, idx[0]), &bb = at(m + 2, idx[1]);
        const auto l1 = st.str_left(m, x, ds.swap(m, bb));
        const auto lhs = st.str_left(m + 1, l1.first, l1.second);
        const auto r1 = st.str_left(m, x, bb);
        const auto r2 = st.str_left(m + 1, r1.first, r1.second);
        const ElementPair rhs{ds.swap(m, r2.first), ds.swap(m, r2.second)};
        return pair_fail(m + 2, m + 2, lhs, rhs, in2(m, x, bb));
      });
    }
    for (std::size_t m = 0; m + 1 <= b; ++m) {
      unit.over({ip.size(m), ip.size(m)}, [&](std::span<const std::size_t> idx) {
        const Element &x = at(m, idx[0]), &y = at(m, idx[1]);
        const auto lhs = st.str_left(m, x, ds.weakening(m, y));
        const ElementPair rhs{ds.weakening(m, x), ds.weakening(m, y)};
        return pair_fail(m + 1, m + 1, lhs, rhs, in2(m, x, y));
      });
    }
    report.laws.push_back(std::move(mult).finish());
    report.laws.push_back(std::move(unit).finish());
    report.laws.push_back(std::move(sym).finish());
  }

  // str' on (Y, X) is str on (X, Y) conjugated by the product swap.
  {
    LawCheck exchange("strength:exchange", budget);
    for (std::size_t m = 0; m + 1 <= b; ++m) {
      exchange.over({ip.size(m + 1), ip.size(m)}, [&](std::span<const std::size_t> idx) {
        const Element &a = at(m + 1, idx[0]), &y = at(m, idx[1]);
        const auto r = st.str(m, a, y);
        const auto lhs = st.str_left(m, y, a);
        return pair_fail(m + 1, m + 1, lhs, ElementPair{r.second, r.first}, in2(m, a, y));
      });
    }
    report.laws.push_back(std::move(exchange).finish());
  }

  // str• against its explicit composite: id x diagonal, shuffle, str x id.
  {
    LawCheck formula("strength-bullet:composite", budget);
    for (std::size_t m = 0; m + 1 <= b; ++m) {
      formula.over({ip.size(m + 1), ip.size(m), ip.size(m)}, [&](std::span<const std::size_t> idx) -> std::optional<json> {
        const Element &a = at(m + 1, idx[0]), &x = at(m, idx[1]), &y = at(m, idx[2]);
        const std::array<Element, 4> diag{a, x, y, y};
        const std::array<Element, 4> shuffled{diag[0], diag[2], diag[1], diag[3]};
        const auto s = st.str(m, shuffled[0], shuffled[1]);
        const std::array<Element, 4> expected{s.first, s.second, shuffled[2], shuffled[3]};
        const auto got = st.str_bullet(m, a, x, y);
        const std::array<std::size_t, 4> stages{m + 1, m + 1, m, m};
        for (std::size_t k = 0; k < 4; ++k) {
          if (!cached->eq(stages[k], got[k], expected[k])) {
            return json{{"m", m}, {"a", element_to_json(a)}, {"x", element_to_json(x)},
                        {"y", element_to_json(y)}, {"lhs", tuple_json(got)},
                        {"rhs", tuple_json(expected)}};
          }
        }
        return std::nullopt;
      });
    }
    report.laws.push_back(std::move(formula).finish());
  }

  // Symmetric distributive law delta delta• -> delta• delta.
  {
    LawCheck mult("distributive:multiplication", budget);
    LawCheck unit("distributive:unit", budget);
    LawCheck sym("distributive:symmetry", budget);
    for (std::size_t m = 0; m + 3 <= b; ++m) {
      mult.over({ip.size(m + 3), ip.size(m + 2)}, [&](std::span<const std::size_t> idx) {
        const Element &a = at(m + 3, idx[0]), &bb = at(m + 2, idx[1]);
        const auto t1 = st.dist(m + 1, a, bb);             // T psi
        const auto t2 = dst.dist(m, t1.first, t1.second);  // psi_T
        const ElementPair lhs{ds.contraction(m + 1, t2.first), ds.contraction(m, t2.second)};
        const ElementPair mu_f{dds.contraction(m, a), ds.contraction(m, bb)};
        const auto rhs = st.dist(m, mu_f.first, mu_f.second);
        return pair_fail(m + 2, m + 1, lhs, rhs, in2(m, a, bb));
      });
      sym.over({ip.size(m + 3), ip.size(m + 2)}, [&](std::span<const std::size_t> idx) {
        const Element &a = at(m + 3, idx[0]), &bb = at(m + 2, idx[1]);
        const ElementPair sigma_f{dds.swap(m, a), ds.swap(m, bb)};
        const auto l1 = st.dist(m + 1, sigma_f.first, sigma_f.second);
        const auto lhs = dst.dist(m, l1.first, l1.second);
        const auto r1 = st.dist(m + 1, a, bb);
        const auto r2 = dst.dist(m, r1.first, r1.second);
        const ElementPair rhs{ds.swap(m + 1, r2.first), ds.swap(m, r2.second)};
        return pair_fail(m + 3, m + 2, lhs, rhs, in2(m, a, bb));
      });
    }
    for (std::size_t m = 0; m + 2 <= b; ++m) {
      unit.over({ip.size(m + 1), ip.size(m)}, [&](std::span<const std::size_t> idx) {
        const Element &a = at(m + 1, idx[0]), &bb = at(m, idx[1]);
        const ElementPair eta_f{dds.weakening(m, a), ds.weakening(m, bb)};
        const auto lhs = st.dist(m, eta_f.first, eta_f.second);
        const ElementPair rhs{ds.weakening(m + 1, a), ds.weakening(m, bb)};
        return pair_fail(m + 2, m + 1, lhs, rhs, in2(m, a, bb));
      });
    }
    report.laws.push_back(std::move(mult).finish());
    report.laws.push_back(std::move(unit).finish());
    report.laws.push_back(std::move(sym).finish());
  }

  {
    LawCheck round("ell:round-trip", budget);
    for (std::size_t m = 0; m + 1 <= b; ++m) {
      round.over({ip.size(m + 1), ip.size(m + 1)}, [&](std::span<const std::size_t> idx) -> std::optional<json> {
        const ElementPair pr{at(m + 1, idx[0]), at(m + 1, idx[1])};
        if (pair_eq(m + 1, m + 1, ell_inverse(ell(pr)), pr) &&
            pair_eq(m + 1, m + 1, ell(ell_inverse(pr)), pr)) {
          return std::nullopt;
        }
        return json{{"m", m}, {"pair", pair_json(pr)}};
      });
    }
    report.laws.push_back(std::move(round).finish());
  }

  // Naturality in the stage: for f : m -> n, component_n after the action
  // equals the action after component_m.
  {
    LawCheck contraction("naturality:contraction", budget);
    LawCheck weakening("naturality:weakening", budget);
    LawCheck swap("naturality:swap", budget);
    LawCheck str("naturality:str", budget);
    LawCheck str_left("naturality:str-left", budget);
    LawCheck bullet("naturality:str-bullet", budget);
    LawCheck dist("naturality:dist", budget);
    auto fjson = [](const FinMap& f, json in) {
      in["f"] = to_json(f);
      return in;
    };
    for (std::size_t m = 0; m <= b; ++m) {
      for (std::size_t n = 0; n <= b; ++n) {
        const auto& fs = maps.maps(m, n);
        std::vector<FinMap> f1, f2;
        for (const auto& f : fs) {
          f1.push_back(plus_id(f, 1));
          f2.push_back(plus_id(f, 2));
        }
        if (m + 1 <= b && n + 1 <= b) {
          weakening.over({fs.size(), ip.size(m)}, [&](std::span<const std::size_t> idx) -> std::optional<json> {
            const FinMap& f = fs[idx[0]];
            const Element& x = at(m, idx[1]);
            const Element lhs = cached->act(f1[idx[0]], ds.weakening(m, x));
            const Element rhs = ds.weakening(n, cached->act(f, x));
            if (cached->eq(n + 1, lhs, rhs)) return std::nullopt;
            return fjson(f, {{"x", element_to_json(x)}, {"lhs", element_to_json(lhs)}, {"rhs", element_to_json(rhs)}});
          });
          str.over({fs.size(), ip.size(m + 1), ip.size(m)}, [&](std::span<const std::size_t> idx) {
            const FinMap &f = fs[idx[0]], &g = f1[idx[0]];
            const Element &a = at(m + 1, idx[1]), &y = at(m, idx[2]);
            const auto s = st.str(m, a, y);
            const ElementPair lhs{cached->act(g, s.first), cached->act(g, s.second)};
            const auto rhs = st.str(n, cached->act(g, a), cached->act(f, y));
            return pair_fail(n + 1, n + 1, lhs, rhs, fjson(f, in2(m, a, y)));
          });
          str_left.over({fs.size(), ip.size(m), ip.size(m + 1)}, [&](std::span<const std::size_t> idx) {
            const FinMap &f = fs[idx[0]], &g = f1[idx[0]];
            const Element &x = at(m, idx[1]), &bb = at(m + 1, idx[2]);
            const auto s = st.str_left(m, x, bb);
            const ElementPair lhs{cached->act(g, s.first), cached->act(g, s.second)};
            const auto rhs = st.str_left(n, cached->act(f, x), cached->act(g, bb));
            return pair_fail(n + 1, n + 1, lhs, rhs, fjson(f, in2(m, x, bb)));
          });
          bullet.over({fs.size(), ip.size(m + 1), ip.size(m), ip.size(m)},
                      [&](std::span<const std::size_t> idx) -> std::optional<json> {
            const FinMap &f = fs[idx[0]], &g = f1[idx[0]];
            const Element &a = at(m + 1, idx[1]), &x = at(m, idx[2]), &y = at(m, idx[3]);
            const auto s = st.str_bullet(m, a, x, y);
            const std::array<Element, 4> lhs{cached->act(g, s[0]), cached->act(g, s[1]),
                                             cached->act(f, s[2]), cached->act(f, s[3])};
            const auto rhs = st.str_bullet(n, cached->act(g, a), cached->act(f, x), cached->act(f, y));
            const std::array<std::size_t, 4> stages{n + 1, n + 1, n, n};
            for (std::size_t k = 0; k < 4; ++k) {
              if (!cached->eq(stages[k], lhs[k], rhs[k])) {
                return fjson(f, {{"m", m}, {"a", element_to_json(a)}, {"x", element_to_json(x)},
                                 {"y", element_to_json(y)}, {"lhs", tuple_json(lhs)},
                                 {"rhs", tuple_json(rhs)}});
              }
            }
            return std::nullopt;
          });
        }
        if (m + 2 <= b && n + 2 <= b) {
          contraction.over({fs.size(), ip.size(m + 2)}, [&](std::span<const std::size_t> idx) -> std::optional<json> {
            const FinMap& f = fs[idx[0]];
            const Element& x = at(m + 2, idx[1]);
            const Element lhs = cached->act(f1[idx[0]], ds.contraction(m, x));
            const Element rhs = ds.contraction(n, cached->act(f2[idx[0]], x));
            if (cached->eq(n + 1, lhs, rhs)) return std::nullopt;
            return fjson(f, {{"x", element_to_json(x)}, {"lhs", element_to_json(lhs)}, {"rhs", element_to_json(rhs)}});
          });
          swap.over({fs.size(), ip.size(m + 2)}, [&](std::span<const std::size_t> idx) -> std::optional<json> {
            const FinMap& f = fs[idx[0]];
            const Element& x = at(m + 2, idx[1]);
            const Element lhs = cached->act(f2[idx[0]], ds.swap(m, x));
            const Element rhs = ds.swap(n, cached->act(f2[idx[0]], x));
            if (cached->eq(n + 2, lhs, rhs)) return std::nullopt;
            return fjson(f, {{"x", element_to_json(x)}, {"lhs", element_to_json(lhs)}, {"rhs", element_to_json(rhs)}});
          });
          dist.over({fs.size(), ip.size(m + 2), ip.size(m + 1)}, [&](std::span<const std::size_t> idx) {
            const FinMap &f = fs[idx[0]], &g1 = f1[idx[0]], &g2 = f2[idx[0]];
            const Element &a = at(m + 2, idx[1]), &bb = at(m + 1, idx[2]);
            const auto s = st.dist(m, a, bb);
            const ElementPair lhs{cached->act(g2, s.first), cached->act(g1, s.second)};
            const auto rhs = st.dist(n, cached->act(g2, a), cached->act(g1, bb));
            return pair_fail(n + 2, n + 1, lhs, rhs, fjson(f, in2(m, a, bb)));
          });
        }
      }
    }
    for (auto* c : {&contraction, &weakening, &swap, &str, &str_left, &bullet, &dist})
      report.laws.push_back(std::move(*c).finish());
  }
  return report;
}

}  // namespace cf
