#include <algorithm>

#include "clone_forge/clone.hpp"
#include "clone_forge/errors.hpp"

namespace cf {

namespace {

json elements_json(std::span<const Element> es) {
  json out = json::array();
  for (const auto& e : es) out.push_back(element_to_json(e));
  return out;
}

std::vector<std::size_t> repeat(std::size_t value, std::size_t times) {
  return std::vector<std::size_t>(times, value);
}

std::vector<Carrier> carriers_upto(const Clone& clone, std::size_t max, const Budget& budget,
                                   Report& report) {
  std::vector<Carrier> out;
  for (std::size_t n = 0; n <= max; ++n) {
    out.push_back(clone.elements(n, budget));
    if (!out.back().complete) {
      report.notes.push_back("C_" + std::to_string(n) + " truncated at depth " +
                             std::to_string(budget.max_depth) + " (" +
                             std::to_string(out.back().elements.size()) + " elements)");
    }
  }
  return out;
}

}  // namespace

Report clone_laws_check(const Clone& clone, const Budget& budget) {
  Report report;
  report.subject = "clone laws for " + clone.name();
  const std::size_t a = budget.max_arity;
  const auto carriers = carriers_upto(clone, a, budget, report);
  auto elems = [&](std::size_t n) -> const std::vector<Element>& { return carriers[n].elements; };

  LawCheck assoc("associativity", budget);
  for (std::size_t l = 0; l <= a; ++l) {
    for (std::size_t m = 0; m <= a; ++m) {
      for (std::size_t n = 0; n <= a; ++n) {
        std::vector<std::size_t> sizes{elems(l).size()};
        for (auto s : repeat(elems(m).size(), l)) sizes.push_back(s);
        for (auto s : repeat(elems(n).size(), m)) sizes.push_back(s);
        assoc.over(sizes, [&](std::span<const std::size_t> idx) -> std::optional<json> {
          const Element& x = elems(l)[idx[0]];
          std::vector<Element> ys, zs;
          for (std::size_t i = 0; i < l; ++i) ys.push_back(elems(m)[idx[1 + i]]);
          for (std::size_t j = 0; j < m; ++j) zs.push_back(elems(n)[idx[1 + l + j]]);
          const Element lhs = clone.mu(m, n, clone.mu(l, m, x, ys), zs);
          std::vector<Element> inner;
          inner.reserve(l);
          for (const auto& y : ys) inner.push_back(clone.mu(m, n, y, zs));
          const Element rhs = clone.mu(l, n, x, inner);
          if (clone.eq(n, lhs, rhs)) return std::nullopt;
          return json{{"l", l},
                      {"m", m},
                      {"n", n},
                      {"x", element_to_json(x)},
                      {"y", elements_json(ys)},
                      {"z", elements_json(zs)},
                      {"lhs", element_to_json(lhs)},
                      {"rhs", element_to_json(rhs)}};
        });
      }
    }
  }
  report.laws.push_back(std::move(assoc).finish());

  LawCheck proj("projection", budget);
  for (std::size_t m = 0; m <= a; ++m) {
    for (std::size_t n = 0; n <= a; ++n) {
      std::vector<std::size_t> sizes{m};
      for (auto s : repeat(elems(n).size(), m)) sizes.push_back(s);
      proj.over(sizes, [&](std::span<const std::size_t> idx) -> std::optional<json> {
        const std::size_t i = idx[0];
        std::vector<Element> xs;
        for (std::size_t j = 0; j < m; ++j) xs.push_back(elems(n)[idx[1 + j]]);
        const Element lhs = clone.mu(m, n, clone.iota(m, i), xs);
        if (clone.eq(n, lhs, xs[i])) return std::nullopt;
        return json{{"m", m}, {"n", n}, {"i", i}, {"x", elements_json(xs)},
                    {"lhs", element_to_json(lhs)}};
      });
    }
  }
  report.laws.push_back(std::move(proj).finish());

  LawCheck unit("right-identity", budget);
  for (std::size_t m = 0; m <= a; ++m) {
    std::vector<Element> ids;
    for (std::size_t i = 0; i < m; ++i) ids.push_back(clone.iota(m, i));
    unit.over({elems(m).size()}, [&](std::span<const std::size_t> idx) -> std::optional<json> {
      const Element& x = elems(m)[idx[0]];
      const Element lhs = clone.mu(m, m, x, ids);
      if (clone.eq(m, lhs, x)) return std::nullopt;
      return json{{"m", m}, {"x", element_to_json(x)}, {"lhs", element_to_json(lhs)}};
    });
  }
  report.laws.push_back(std::move(unit).finish());
  return report;
}

Report clone_hom_check(const ElementFamily& h, const Clone& src, const Clone& dst,
                       const Budget& budget) {
  Report report;
  report.subject = "clone homomorphism " + src.name() + " -> " + dst.name();
  const std::size_t a = budget.max_arity;
  const auto carriers = carriers_upto(src, a, budget, report);
  auto elems = [&](std::size_t n) -> const std::vector<Element>& { return carriers[n].elements; };

  LawCheck iota("preserves-iota", budget);
  for (std::size_t m = 0; m <= a; ++m) {
    iota.over({m}, [&](std::span<const std::size_t> idx) -> std::optional<json> {
      const Element lhs = h(m, src.iota(m, idx[0]));
      const Element rhs = dst.iota(m, idx[0]);
      if (dst.eq(m, lhs, rhs)) return std::nullopt;
      return json{{"m", m}, {"i", idx[0]}, {"lhs", element_to_json(lhs)},
                  {"rhs", element_to_json(rhs)}};
    });
  }
  report.laws.push_back(std::move(iota).finish());

  LawCheck mu("preserves-mu", budget);
  for (std::size_t m = 0; m <= a; ++m) {
    for (std::size_t n = 0; n <= a; ++n) {
      std::vector<std::size_t> sizes{elems(m).size()};
      for (auto s : repeat(elems(n).size(), m)) sizes.push_back(s);
      mu.over(sizes, [&](std::span<const std::size_t> idx) -> std::optional<json> {
        const Element& t = elems(m)[idx[0]];
        std::vector<Element> us, hus;
        for (std::size_t j = 0; j < m; ++j) {
          us.push_back(elems(n)[idx[1 + j]]);
          hus.push_back(h(n, us.back()));
        }
        const Element lhs = h(n, src.mu(m, n, t, us));
        const Element rhs = dst.mu(m, n, h(m, t), hus);
        if (dst.eq(n, lhs, rhs)) return std::nullopt;
        return json{{"m", m},
                    {"n", n},
                    {"t", element_to_json(t)},
                    {"us", elements_json(us)},
                    {"lhs", element_to_json(lhs)},
                    {"rhs", element_to_json(rhs)}};
      });
    }
  }
  report.laws.push_back(std::move(mu).finish());
  return report;
}

// ---------------------------------------------------------------------------
// Lawvere theory view

TheoryHom theory_identity(const Clone& clone, std::size_t m) {
  TheoryHom id{m, m, {}};
  for (std::size_t i = 0; i < m; ++i) id.components.push_back(clone.iota(m, i));
  return id;
}

TheoryHom theory_compose(const Clone& clone, const TheoryHom& f, const TheoryHom& g) {
  if (f.src != g.dst || f.components.size() != f.dst || g.components.size() != g.dst) {
    throw ShapeError("cannot compose theory homs " + std::to_string(f.src) + "->" +
                     std::to_string(f.dst) + " after " + std::to_string(g.src) + "->" +
                     std::to_string(g.dst));
  }
  TheoryHom out{g.src, f.dst, {}};
  out.components.reserve(f.dst);
  for (const auto& c : f.components) out.components.push_back(clone.mu(f.src, g.src, c, g.components));
  return out;
}

bool theory_equal(const Clone& clone, const TheoryHom& a, const TheoryHom& b) {
  if (a.src != b.src || a.dst != b.dst || a.components.size() != b.components.size()) return false;
  for (std::size_t k = 0; k < a.components.size(); ++k)
    if (!clone.eq(a.src, a.components[k], b.components[k])) return false;
  return true;
}

std::uint64_t theory_hom_count(const Clone& clone, std::size_t m, std::size_t n,
                               const Budget& budget) {
  if (n == 0) return 1;
  return space_size(repeat(clone.elements(m, budget).elements.size(), n));
}

std::vector<TheoryHom> enumerate_theory_homs(const Clone& clone, std::size_t m, std::size_t n,
                                             const Budget& budget, std::uint64_t limit) {
  const auto carrier = clone.elements(m, budget).elements;
  const auto count = n == 0 ? 1 : space_size(repeat(carrier.size(), n));
  if (count > limit) {
    throw RangeError("hom-set " + std::to_string(m) + "->" + std::to_string(n) + " has " +
                     std::to_string(count) + " members, over the limit " + std::to_string(limit));
  }
  std::vector<TheoryHom> out;
  out.reserve(count);
  std::vector<std::size_t> idx(n, 0);
  for (std::uint64_t c = 0; c < count; ++c) {
    TheoryHom h{m, n, {}};
    for (auto i : idx) h.components.push_back(carrier[i]);
    out.push_back(std::move(h));
    for (std::size_t k = n; k-- > 0;) {
      if (++idx[k] < carrier.size()) break;
      idx[k] = 0;
    }
  }
  return out;
}

Report theory_laws_check(const Clone& clone, std::size_t bound, const Budget& budget,
                         const TheoryComposer& compose) {
  Report report;
  report.subject = "theory laws for " + clone.name();
  const auto carriers = carriers_upto(clone, bound, budget, report);
  auto elems = [&](std::size_t n) -> const std::vector<Element>& { return carriers[n].elements; };
  auto hom_at = [&](std::size_t src, std::size_t dst, std::span<const std::size_t> idx) {
    TheoryHom h{src, dst, {}};
    for (std::size_t k = 0; k < dst; ++k) h.components.push_back(elems(src)[idx[k]]);
    return h;
  };
  auto mismatch = [&](const TheoryHom& lhs, const TheoryHom& rhs, json inputs) -> std::optional<json> {
    if (theory_equal(clone, lhs, rhs)) return std::nullopt;
    inputs["lhs"] = to_json(lhs);
    inputs["rhs"] = to_json(rhs);
    return inputs;
  };

  // F : m -> n, G : l -> m, H : p -> l.
  LawCheck assoc("associativity", budget);
  for (std::size_t p = 0; p <= bound; ++p)
    for (std::size_t l = 0; l <= bound; ++l)
      for (std::size_t m = 0; m <= bound; ++m)
        for (std::size_t n = 0; n <= bound; ++n) {
          std::vector<std::size_t> sizes = repeat(elems(m).size(), n);
          for (auto s : repeat(elems(l).size(), m)) sizes.push_back(s);
          for (auto s : repeat(elems(p).size(), l)) sizes.push_back(s);
          assoc.over(sizes, [&](std::span<const std::size_t> idx) -> std::optional<json> {
            const auto f = hom_at(m, n, idx.subspan(0, n));
            const auto g = hom_at(l, m, idx.subspan(n, m));
            const auto h = hom_at(p, l, idx.subspan(n + m, l));
            return mismatch(compose(clone, compose(clone, f, g), h),
                            compose(clone, f, compose(clone, g, h)),
                            json{{"F", to_json(f)}, {"G", to_json(g)}, {"H", to_json(h)}});
          });
        }
  report.laws.push_back(std::move(assoc).finish());

  LawCheck left("left-unit", budget);
  LawCheck right("right-unit", budget);
  for (std::size_t m = 0; m <= bound; ++m) {
    const auto id = theory_identity(clone, m);
    for (std::size_t n = 0; n <= bound; ++n) {
      // id_n after G : m -> n, and F : m -> n after id_m.
      const auto idn = theory_identity(clone, n);
      left.over(repeat(elems(m).size(), n), [&](std::span<const std::size_t> idx) {
        const auto g = hom_at(m, n, idx);
        return mismatch(compose(clone, idn, g), g, json{{"G", to_json(g)}});
      });
      right.over(repeat(elems(m).size(), n), [&](std::span<const std::size_t> idx) {
        const auto f = hom_at(m, n, idx);
        return mismatch(compose(clone, f, id), f, json{{"F", to_json(f)}});
      });
    }
  }
  report.laws.push_back(std::move(left).finish());
  report.laws.push_back(std::move(right).finish());
  return report;
}

json to_json(const TheoryHom& h) {
  return json{{"src", h.src}, {"dst", h.dst}, {"components", elements_json(h.components)}};
}

}  // namespace cf
