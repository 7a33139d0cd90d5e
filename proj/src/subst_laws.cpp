#include "clone_forge/errors.hpp"
#include "clone_forge/subst_algebra.hpp"
#include "indexed_presheaf.hpp"

namespace cf {

namespace {

using detail::IndexedPresheaf;
using detail::MapCache;
using detail::npos;

// Enumerated carriers plus memoized s_m on enumerated argument pairs.
class Evaluator {
 public:
  Evaluator(const SubstAlgebra& a, std::size_t bound, const Budget& budget)
      : a_(a), ip_(a, bound, budget), memo_(bound) {}

  const IndexedPresheaf& index() const { return ip_; }
  std::size_t size(std::size_t m) const { return ip_.size(m); }
  const Element& at(std::size_t m, std::size_t i) const { return ip_.at(m, i); }
  Element act(const FinMap& f, const Element& x) const { return ip_.act(f, x); }
  bool eq(std::size_t m, const Element& x, const Element& y) const { return a_.eq(m, x, y); }

  const Element& s_at(std::size_t m, std::size_t i, std::size_t j) const {
    auto& table = memo_[m];
    if (table.empty()) table.resize(ip_.size(m + 1) * ip_.size(m));
    auto& slot = table[i * ip_.size(m) + j];
    if (!slot) slot = a_.substitute(m, ip_.at(m + 1, i), ip_.at(m, j));
    return *slot;
  }

  Element s(std::size_t m, const Element& x, const Element& y) const {
    if (m < memo_.size()) {
      const auto i = ip_.find(m + 1, x);
      const auto j = i == npos ? npos : ip_.find(m, y);
      if (j != npos) return s_at(m, i, j);
    }
    return a_.substitute(m, x, y);
  }

 private:
  const SubstAlgebra& a_;
  IndexedPresheaf ip_;
  mutable std::vector<std::vector<std::optional<Element>>> memo_;
};

std::size_t effective_bound(const SubstAlgebra& a, std::size_t bound, Report& report) {
  if (auto b = a.bound(); b && *b < bound) {
    report.notes.push_back("bound lowered from " + std::to_string(bound) + " to " +
                           std::to_string(*b) + ", the bound of " + a.name());
    return *b;
  }
  return bound;
}

FinMap id_plus(std::size_t m, const FinMap& g) { return coproduct(FinMap::identity(m), g); }

std::optional<json> compare(const Evaluator& ev, std::size_t stage, const Element& lhs,
                            const Element& rhs, json inputs) {
  if (ev.eq(stage, lhs, rhs)) return std::nullopt;
  inputs["lhs"] = element_to_json(lhs);
  inputs["rhs"] = element_to_json(rhs);
  return inputs;
}

json ej(const Element& e) { return element_to_json(e); }

// Laws shared by both presentations. Each appends to `report` in order.

void functoriality(const SubstAlgebra& a, std::size_t b, const Budget& budget, Report& report) {
  const Report f = check_functoriality(a, b, budget);
  LawResult comp = f.law("composition");
  LawResult id = f.law("identity");
  comp.name = "functoriality-composition";
  id.name = "functoriality-identity";
  report.laws.push_back(std::move(comp));
  report.laws.push_back(std::move(id));
}

// act(f, s_m(x, y)) = s_n(act(f + id_1, x), act(f, y)) for f : m -> n.
LawResult s_naturality(const Evaluator& ev, const MapCache& maps, std::size_t b,
                       const Budget& budget) {
  LawCheck check("naturality", budget);
  for (std::size_t m = 0; m < b; ++m) {
    for (std::size_t n = 0; n < b; ++n) {
      const auto& fs = maps.maps(m, n);
      std::vector<FinMap> f1;
      for (const auto& f : fs) f1.push_back(coproduct(f, FinMap::identity(1)));
      check.over({fs.size(), ev.size(m + 1), ev.size(m)}, [&](std::span<const std::size_t> idx) {
        const FinMap& f = fs[idx[0]];
        const Element &x = ev.at(m + 1, idx[1]), &y = ev.at(m, idx[2]);
        const Element lhs = ev.act(f, ev.s_at(m, idx[1], idx[2]));
        const Element rhs = ev.s(n, ev.act(f1[idx[0]], x), ev.act(f, y));
        return compare(ev, n, lhs, rhs, {{"f", to_json(f)}, {"x", ej(x)}, {"y", ej(y)}});
      });
    }
  }
  return std::move(check).finish();
}

// s_m(unit_m, x) = x, with unit_m either nu_m or v_m.
template <class Unit>
LawResult left_unit(const Evaluator& ev, std::size_t b, const Budget& budget, Unit unit) {
  LawCheck check("left-unit", budget);
  for (std::size_t m = 0; m < b; ++m) {
    const Element u = unit(m);
    check.over({ev.size(m)}, [&](std::span<const std::size_t> idx) {
      const Element& x = ev.at(m, idx[0]);
      return compare(ev, m, ev.s(m, u, x), x, {{"m", m}, {"unit", ej(u)}, {"x", ej(x)}});
    });
  }
  return std::move(check).finish();
}

// s_{m+1}(x, unit_m) = act(id_m + c, x) for x in A(m+2).
template <class Unit>
LawResult contraction(const Evaluator& ev, std::size_t b, const Budget& budget, Unit unit) {
  LawCheck check("contraction", budget);
  const FinMap& c = generators().c;
  for (std::size_t m = 0; m + 2 <= b; ++m) {
    const Element u = unit(m);
    const FinMap idc = id_plus(m, c);
    check.over({ev.size(m + 2)}, [&](std::span<const std::size_t> idx) {
      const Element& x = ev.at(m + 2, idx[0]);
      return compare(ev, m + 1, ev.s(m + 1, x, u), ev.act(idc, x),
                     {{"m", m}, {"unit", ej(u)}, {"x", ej(x)}});
    });
  }
  return std::move(check).finish();
}

// s_m(act(id_m + w, x), y) = x.
LawResult weakening(const Evaluator& ev, std::size_t b, const Budget& budget) {
  LawCheck check("weakening", budget);
  const FinMap& w = generators().w;
  for (std::size_t m = 0; m + 1 <= b; ++m) {
    const FinMap idw = id_plus(m, w);
    check.over({ev.size(m), ev.size(m)}, [&](std::span<const std::size_t> idx) {
      const Element &x = ev.at(m, idx[0]), &y = ev.at(m, idx[1]);
      return compare(ev, m, ev.s(m, ev.act(idw, x), y), x, {{"m", m}, {"x", ej(x)}, {"y", ej(y)}});
    });
  }
  return std::move(check).finish();
}

// s_m(s_{m+1}(x, y), z) = s_m(s_{m+1}(act(id_m + s, x), act(id_m + w, z)), s_m(y, z)).
LawResult associativity(const Evaluator& ev, std::size_t b, const Budget& budget) {
  LawCheck check("associativity", budget);
  const Generators g = generators();
  for (std::size_t m = 0; m + 2 <= b; ++m) {
    const FinMap ids = id_plus(m, g.s);
    const FinMap idw = id_plus(m, g.w);
    std::vector<Element> swapped, weakened;
    for (const auto& x : ev.index().elements(m + 2)) swapped.push_back(ev.act(ids, x));
    for (const auto& z : ev.index().elements(m)) weakened.push_back(ev.act(idw, z));
    check.over({ev.size(m + 2), ev.size(m + 1), ev.size(m)}, [&](std::span<const std::size_t> idx) {
      const auto xi = idx[0], yi = idx[1], zi = idx[2];
      const Element &x = ev.at(m + 2, xi), &y = ev.at(m + 1, yi), &z = ev.at(m, zi);
      const Element lhs = ev.s(m, ev.s_at(m + 1, xi, yi), z);
      const Element rhs = ev.s(m, ev.s(m + 1, swapped[xi], weakened[zi]), ev.s_at(m, yi, zi));
      return compare(ev, m, lhs, rhs, {{"m", m}, {"x", ej(x)}, {"y", ej(y)}, {"z", ej(z)}});
    });
  }
  return std::move(check).finish();
}

}  // namespace

Report check_presentation(const SubstAlgebra& a, std::size_t bound, const Budget& budget) {
  Report report;
  report.subject = "equational presentation of " + a.name();
  const std::size_t b = effective_bound(a, bound, report);
  Evaluator ev(a, b, budget);
  detail::add_carrier_notes(report, ev.index());
  MapCache maps(b);
  auto nu_m = [&](std::size_t m) { return nu(a, m); };

  functoriality(a, b, budget, report);
  report.laws.push_back(s_naturality(ev, maps, b, budget));
  report.laws.push_back(left_unit(ev, b, budget, nu_m));
  report.laws.push_back(contraction(ev, b, budget, nu_m));
  report.laws.push_back(weakening(ev, b, budget));
  report.laws.push_back(associativity(ev, b, budget));

  // The equations only mention nu; the stored variables must be the nu_m.
  LawCheck coherence("variable-coherence", budget);
  for (std::size_t m = 0; m < b; ++m) {
    coherence.single([&]() {
      return compare(ev, m + 1, a.variable(m), nu(a, m), {{"m", m}});
    });
  }
  report.laws.push_back(std::move(coherence).finish());
  return report;
}

Report check_diagrams(const SubstAlgebra& a, std::size_t bound, const Budget& budget) {
  Report report;
  report.subject = "diagrams of " + a.name();
  const std::size_t b = effective_bound(a, bound, report);
  Evaluator ev(a, b, budget);
  detail::add_carrier_notes(report, ev.index());
  MapCache maps(b);
  auto v_m = [&](std::size_t m) { return a.variable(m); };

  functoriality(a, b, budget, report);
  report.laws.push_back(s_naturality(ev, maps, b, budget));

  // v : 1 -> delta A natural: act(f + id_1, v_m) = v_n.
  LawCheck vnat("v-naturality", budget);
  for (std::size_t m = 0; m < b; ++m) {
    const Element vm = a.variable(m);
    for (std::size_t n = 0; n < b; ++n) {
      const Element vn = a.variable(n);
      const auto& fs = maps.maps(m, n);
      vnat.over({fs.size()}, [&](std::span<const std::size_t> idx) {
        const FinMap& f = fs[idx[0]];
        return compare(ev, n + 1, ev.act(coproduct(f, FinMap::identity(1)), vm), vn,
                       {{"f", to_json(f)}});
      });
    }
  }
  report.laws.push_back(std::move(vnat).finish());

  // (v x id) then s is the left projection.
  report.laws.push_back(left_unit(ev, b, budget, v_m));
  // (id x v) then s is the monad multiplication c.
  report.laws.push_back(contraction(ev, b, budget, v_m));

  // delta of the unit, then (id x v), then s is the identity on delta A:
  // s_{m+1}(act(old(m) + id_1, t), v_m) = t for t in A(m+1).
  LawCheck old("contraction-old", budget);
  for (std::size_t m = 0; m + 2 <= b; ++m) {
    const Element vm = a.variable(m);
    const FinMap lift = coproduct(old_inclusion(m), FinMap::identity(1));
    old.over({ev.size(m + 1)}, [&](std::span<const std::size_t> idx) {
      const Element& t = ev.at(m + 1, idx[0]);
      return compare(ev, m + 1, ev.s(m + 1, ev.act(lift, t), vm), t, {{"m", m}, {"t", ej(t)}});
    });
  }
  report.laws.push_back(std::move(old).finish());

  // (eta x id) then s is the left projection.
  report.laws.push_back(weakening(ev, b, budget));
  // Through the distributive law, str• and delta(s); componentwise this is
  // the twisted associativity equation.
  report.laws.push_back(associativity(ev, b, budget));
  return report;
}

}  // namespace cf
