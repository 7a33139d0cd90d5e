#include "clone_forge/iso_bridge.hpp"

#include "clone_forge/errors.hpp"
#include "indexed_presheaf.hpp"

namespace cf {

Element CloneSubstAlgebra::act(const FinMap& f, const Element& x) const {
  std::vector<Element> us;
  us.reserve(f.dom());
  for (std::size_t i = 0; i < f.dom(); ++i) us.push_back(clone_->iota(f.cod(), f(i)));
  return clone_->mu(f.dom(), f.cod(), x, us);
}

Element CloneSubstAlgebra::substitute(std::size_t m, const Element& x, const Element& y) const {
  std::vector<Element> us;
  us.reserve(m + 1);
  for (std::size_t i = 0; i < m; ++i) us.push_back(clone_->iota(m, i));
  us.push_back(y);
  return clone_->mu(m + 1, m, x, us);
}

Element CloneSubstAlgebra::variable(std::size_t m) const { return clone_->iota(m + 1, m); }

AlgebraPtr s_functor(ClonePtr clone) { return std::make_shared<CloneSubstAlgebra>(std::move(clone)); }

Element phi(const SubstAlgebra& a, std::size_t m, std::size_t n, const Element& x,
            std::span<const Element> us) {
  if (us.size() != m) {
    throw ShapeError("phi_{" + std::to_string(m) + "," + std::to_string(n) + "} given " +
                     std::to_string(us.size()) + " substituends");
  }
  require_stage(a, n + m);
  Element acc = x;
  for (std::size_t k = m; k > 0; --k) {
    acc = a.substitute(n + k - 1, acc, a.act(inclusion(n, k - 1), us[k - 1]));
  }
  return acc;
}

Carrier AlgebraClone::elements(std::size_t n, const Budget& budget) const {
  require_stage(*algebra_, n);
  return algebra_->carrier(n, budget);
}

Element AlgebraClone::mu(std::size_t m, std::size_t n, const Element& t,
                         std::span<const Element> us) const {
  require_stage(*algebra_, n + m);
  return phi(*algebra_, m, n, algebra_->act(shift_map(m, n), t), us);
}

Element AlgebraClone::iota(std::size_t m, std::size_t i) const {
  if (i >= m) {
    throw RangeError("projection index " + std::to_string(i) + " out of range for arity " +
                     std::to_string(m));
  }
  require_stage(*algebra_, m);
  return algebra_->act(point(m, i), algebra_->variable(0));
}

ClonePtr c_functor(AlgebraPtr algebra) { return std::make_shared<AlgebraClone>(std::move(algebra)); }

Report s_on_hom(const ElementFamily& h, ClonePtr src, ClonePtr dst, std::size_t bound,
                const Budget& budget) {
  Report report;
  report.subject = "S on the family " + src->name() + " -> " + dst->name();
  report.append(clone_hom_check(h, *src, *dst, budget), "source:");
  CloneSubstAlgebra sa(src), sb(dst);
  report.append(hom_check(h, sa, sb, bound, budget), "target:");
  return report;
}

Report c_on_hom(const ElementFamily& h, AlgebraPtr src, AlgebraPtr dst, std::size_t bound,
                const Budget& budget) {
  Report report;
  report.subject = "C on the family " + src->name() + " -> " + dst->name();
  report.append(hom_check(h, *src, *dst, bound, budget), "source:");
  AlgebraClone ca(src), cb(dst);
  report.append(clone_hom_check(h, ca, cb, budget), "target:");
  return report;
}

namespace {

json elements_json(std::span<const Element> es) {
  json out = json::array();
  for (const auto& e : es) out.push_back(element_to_json(e));
  return out;
}

// Same elements in the same order.
std::optional<json> compare_carriers(std::size_t n, const Carrier& a, const Carrier& b,
                                     const std::function<bool(const Element&, const Element&)>& eq) {
  if (a.complete != b.complete) return json{{"n", n}, {"reason", "completeness differs"}};
  if (a.elements.size() != b.elements.size()) {
    return json{{"n", n}, {"lhs_size", a.elements.size()}, {"rhs_size", b.elements.size()}};
  }
  for (std::size_t i = 0; i < a.elements.size(); ++i) {
    if (!eq(a.elements[i], b.elements[i])) {
      return json{{"n", n}, {"position", i}, {"lhs", element_to_json(a.elements[i])},
                  {"rhs", element_to_json(b.elements[i])}};
    }
  }
  return std::nullopt;
}

std::optional<json> mismatch(bool same, const Element& lhs, const Element& rhs, json in) {
  if (same) return std::nullopt;
  in["lhs"] = element_to_json(lhs);
  in["rhs"] = element_to_json(rhs);
  return in;
}

}  // namespace

Report roundtrip_clone(ClonePtr clone, const Budget& budget) {
  Report report;
  report.subject = "C(S(" + clone->name() + ")) = " + clone->name();
  const AlgebraClone back(s_functor(clone));
  const std::size_t a = budget.max_arity;

  std::vector<Carrier> carriers;
  LawCheck carrier_law("carriers", budget);
  for (std::size_t n = 0; n <= a; ++n) {
    carriers.push_back(clone->elements(n, budget));
    const Carrier other = back.elements(n, budget);
    carrier_law.single([&] {
      return compare_carriers(n, other, carriers.back(),
                              [&](const Element& x, const Element& y) { return clone->eq(n, x, y); });
    });
    if (!carriers.back().complete) {
      report.notes.push_back("C_" + std::to_string(n) + " truncated at depth " +
                             std::to_string(budget.max_depth));
    }
  }
  report.laws.push_back(std::move(carrier_law).finish());

  LawCheck iota("iota", budget);
  for (std::size_t m = 0; m <= a; ++m) {
    iota.over({m}, [&](std::span<const std::size_t> idx) {
      const Element lhs = back.iota(m, idx[0]);
      const Element rhs = clone->iota(m, idx[0]);
      return mismatch(clone->eq(m, lhs, rhs), lhs, rhs, {{"m", m}, {"i", idx[0]}});
    });
  }
  report.laws.push_back(std::move(iota).finish());

  LawCheck mu("mu", budget);
  for (std::size_t m = 0; m <= a; ++m) {
    for (std::size_t n = 0; n <= a; ++n) {
      std::vector<std::size_t> sizes{carriers[m].elements.size()};
      sizes.insert(sizes.end(), m, carriers[n].elements.size());
      mu.over(sizes, [&](std::span<const std::size_t> idx) {
        const Element& t = carriers[m].elements[idx[0]];
        std::vector<Element> us;
        for (std::size_t j = 0; j < m; ++j) us.push_back(carriers[n].elements[idx[1 + j]]);
        const Element lhs = back.mu(m, n, t, us);
        const Element rhs = clone->mu(m, n, t, us);
        return mismatch(clone->eq(n, lhs, rhs), lhs, rhs,
                        {{"m", m}, {"n", n}, {"t", element_to_json(t)}, {"us", elements_json(us)}});
      });
    }
  }
  report.laws.push_back(std::move(mu).finish());
  return report;
}

Report roundtrip_alg(AlgebraPtr algebra, std::size_t bound, const Budget& budget) {
  Report report;
  report.subject = "S(C(" + algebra->name() + ")) = " + algebra->name();
  const CloneSubstAlgebra back(c_functor(algebra));
  // act on f : m -> n goes through mu_{m,n}, which needs stage m + n.
  if (auto b = algebra->bound(); b && 2 * bound > *b) {
    report.notes.push_back("bound lowered from " + std::to_string(bound) + " to " +
                           std::to_string(*b / 2) + ": the round trip needs stage 2b of " +
                           algebra->name() + ", whose bound is " + std::to_string(*b));
    bound = *b / 2;
  }
  detail::IndexedPresheaf ip(*algebra, bound, budget);
  detail::add_carrier_notes(report, ip);
  detail::MapCache maps(bound);

  LawCheck carrier_law("carriers", budget);
  for (std::size_t n = 0; n <= bound; ++n) {
    carrier_law.single([&] {
      return compare_carriers(n, back.carrier(n, budget), Carrier{ip.elements(n), ip.complete(n)},
                              [&](const Element& x, const Element& y) { return algebra->eq(n, x, y); });
    });
  }
  report.laws.push_back(std::move(carrier_law).finish());

  LawCheck act("act", budget);
  for (std::size_t m = 0; m <= bound; ++m) {
    for (std::size_t n = 0; n <= bound; ++n) {
      const auto& fs = maps.maps(m, n);
      act.over({fs.size(), ip.size(m)}, [&](std::span<const std::size_t> idx) {
        const FinMap& f = fs[idx[0]];
        const Element& x = ip.at(m, idx[1]);
        const Element lhs = back.act(f, x);
        const Element& rhs = ip.table(f).image[idx[1]];
        return mismatch(algebra->eq(n, lhs, rhs), lhs, rhs,
                        {{"f", to_json(f)}, {"x", element_to_json(x)}});
      });
    }
  }
  report.laws.push_back(std::move(act).finish());

  LawCheck s("s", budget);
  for (std::size_t m = 0; m < bound; ++m) {
    s.over({ip.size(m + 1), ip.size(m)}, [&](std::span<const std::size_t> idx) {
      const Element &x = ip.at(m + 1, idx[0]), &y = ip.at(m, idx[1]);
      const Element lhs = back.substitute(m, x, y);
      const Element rhs = algebra->substitute(m, x, y);
      return mismatch(algebra->eq(m, lhs, rhs), lhs, rhs,
                      {{"m", m}, {"x", element_to_json(x)}, {"y", element_to_json(y)}});
    });
  }
  report.laws.push_back(std::move(s).finish());

  LawCheck v("v", budget);
  for (std::size_t m = 0; m < bound; ++m) {
    v.single([&] {
      const Element lhs = back.variable(m);
      const Element rhs = algebra->variable(m);
      return mismatch(algebra->eq(m + 1, lhs, rhs), lhs, rhs, {{"m", m}});
    });
  }
  report.laws.push_back(std::move(v).finish());
  return report;
}

}  // namespace cf
