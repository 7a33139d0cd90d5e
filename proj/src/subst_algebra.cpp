#include "clone_forge/subst_algebra.hpp"

#include "clone_forge/errors.hpp"
#include "indexed_presheaf.hpp"

namespace cf {

namespace {

std::uint32_t atom_index(const Element& e, std::size_t size, std::size_t stage) {
  const auto* a = std::get_if<Atom>(&e);
  if (!a) throw ShapeError("expected an atom element, got " + to_string(e));
  if (a->value >= size) {
    throw RangeError("element " + std::to_string(a->value) + " not in stage " + std::to_string(stage));
  }
  return a->value;
}

}  // namespace

Element nu(const SubstAlgebra& a, std::size_t m) {
  return a.act(point(m + 1, static_cast<std::uint32_t>(m)), a.variable(0));
}

// ---------------------------------------------------------------------------

TableAlgebra::TableAlgebra(TablePresheaf base, std::vector<std::vector<std::uint32_t>> s,
                           std::vector<std::uint32_t> v)
    : base_(std::move(base)), s_(std::move(s)), v_(std::move(v)) {
  const std::size_t bound = *base_.bound();
  if (s_.size() != bound) {
    throw ValidationError("s must have one table per stage below the bound (" +
                          std::to_string(bound) + "), got " + std::to_string(s_.size()));
  }
  if (v_.size() != bound) {
    throw ValidationError("v must have one entry per stage below the bound (" +
                          std::to_string(bound) + "), got " + std::to_string(v_.size()));
  }
  for (std::size_t m = 0; m < bound; ++m) {
    const auto expected = base_.size(m + 1) * base_.size(m);
    if (s_[m].size() != expected) {
      throw ValidationError("s table at stage " + std::to_string(m) + " has " +
                            std::to_string(s_[m].size()) + " entries, expected " +
                            std::to_string(expected));
    }
    for (auto z : s_[m]) {
      if (z >= base_.size(m)) {
        throw ValidationError("s table at stage " + std::to_string(m) + " has image " +
                              std::to_string(z) + " outside stage " + std::to_string(m));
      }
    }
    if (v_[m] >= base_.size(m + 1)) {
      throw ValidationError("v at stage " + std::to_string(m) + " is " + std::to_string(v_[m]) +
                            ", outside stage " + std::to_string(m + 1));
    }
  }
}

Element TableAlgebra::substitute(std::size_t m, const Element& x, const Element& y) const {
  if (m >= s_.size()) {
    throw RangeError("s_" + std::to_string(m) + " needs stage " + std::to_string(m + 1) +
                     ", beyond the bound " + std::to_string(s_.size()));
  }
  const auto i = atom_index(x, base_.size(m + 1), m + 1);
  const auto j = atom_index(y, base_.size(m), m);
  return Atom{s_[m][i * base_.size(m) + j]};
}

Element TableAlgebra::variable(std::size_t m) const {
  if (m >= v_.size()) {
    throw RangeError("v_" + std::to_string(m) + " needs stage " + std::to_string(m + 1) +
                     ", beyond the bound " + std::to_string(v_.size()));
  }
  return Atom{v_[m]};
}

TableAlgebra TableAlgebra::renamed(std::string name) const {
  TablePresheaf b(base_.sizes(), base_.actions(), base_.labels(), std::move(name));
  return TableAlgebra(std::move(b), s_, v_);
}

TableAlgebra TableAlgebra::with_s(std::size_t m, std::uint32_t x, std::uint32_t y,
                                  std::uint32_t z) const {
  TableAlgebra copy = *this;
  copy.s_.at(m).at(x * base_.size(m) + y) = z;
  return copy;
}

TableAlgebra TableAlgebra::with_v(std::size_t m, std::uint32_t idx) const {
  TableAlgebra copy = *this;
  copy.v_.at(m) = idx;
  return copy;
}

TableAlgebra TableAlgebra::with_image(const FinMap& f, std::uint32_t x, std::uint32_t y) const {
  return TableAlgebra(base_.with_image(f, x, y), s_, v_);
}

// ---------------------------------------------------------------------------

RewiredAlgebra::RewiredAlgebra(AlgebraPtr base, std::string name, ActFn act, SubstFn s, VarFn v)
    : base_(std::move(base)),
      name_(std::move(name)),
      act_(std::move(act)),
      s_(std::move(s)),
      v_(std::move(v)) {}

Element RewiredAlgebra::act(const FinMap& f, const Element& x) const {
  return act_ ? act_(*base_, f, x) : base_->act(f, x);
}

Element RewiredAlgebra::substitute(std::size_t m, const Element& x, const Element& y) const {
  return s_ ? s_(*base_, m, x, y) : base_->substitute(m, x, y);
}

Element RewiredAlgebra::variable(std::size_t m) const {
  return v_ ? v_(*base_, m) : base_->variable(m);
}

// ---------------------------------------------------------------------------

TableAlgebra materialize(const SubstAlgebra& a, std::size_t bound, const Budget& budget) {
  TablePresheaf base = tabulate(a, bound, budget);
  detail::IndexedPresheaf ip(a, bound, budget);
  auto index_of = [&](std::size_t stage, const Element& e, const std::string& what) {
    const auto i = ip.find(stage, e);
    if (i == detail::npos) {
      throw RangeError(what + " = " + to_string(e) + " leaves the enumerated carrier of stage " +
                       std::to_string(stage));
    }
    return static_cast<std::uint32_t>(i);
  };
  std::vector<std::vector<std::uint32_t>> s(bound);
  std::vector<std::uint32_t> v(bound);
  for (std::size_t m = 0; m < bound; ++m) {
    for (const auto& x : ip.elements(m + 1)) {
      for (const auto& y : ip.elements(m)) {
        s[m].push_back(index_of(m, a.substitute(m, x, y),
                                "s_" + std::to_string(m) + "(" + to_string(x) + ", " + to_string(y) + ")"));
      }
    }
    v[m] = index_of(m + 1, a.variable(m), "v_" + std::to_string(m));
  }
  return TableAlgebra(std::move(base), std::move(s), std::move(v));
}

// ---------------------------------------------------------------------------

std::string presentation_law_for(std::string_view diagram_law) {
  if (diagram_law == "v-naturality") return "variable-coherence";
  if (diagram_law == "contraction-old") return "";
  return std::string(diagram_law);
}

const std::vector<std::string>& matched_diagram_laws() {
  static const std::vector<std::string> laws{
      "functoriality-composition", "functoriality-identity", "naturality", "v-naturality",
      "left-unit",                 "contraction",            "weakening",  "associativity"};
  return laws;
}

bool structurally_natural(const Report& diagrams) {
  for (const char* law : {"functoriality-composition", "functoriality-identity", "naturality",
                          "v-naturality"}) {
    if (!diagrams.law(law).passed) return false;
  }
  return true;
}

Report hom_check(const ElementFamily& h, const SubstAlgebra& src, const SubstAlgebra& dst,
                 std::size_t bound, const Budget& budget) {
  Report report;
  report.subject = "substitution algebra homomorphism " + src.name() + " -> " + dst.name();
  std::size_t b = bound;
  for (const Presheaf* p : {static_cast<const Presheaf*>(&src), static_cast<const Presheaf*>(&dst)}) {
    if (auto pb = p->bound(); pb && *pb < b) {
      report.notes.push_back("bound lowered from " + std::to_string(b) + " to " +
                             std::to_string(*pb) + " for " + p->name());
      b = *pb;
    }
  }
  detail::IndexedPresheaf ip(src, b, budget);
  detail::add_carrier_notes(report, ip);
  detail::MapCache maps(b);
  auto mismatch = [](const Element& lhs, const Element& rhs, json in) {
    in["lhs"] = element_to_json(lhs);
    in["rhs"] = element_to_json(rhs);
    return in;
  };

  LawCheck nat("naturality", budget);
  for (std::size_t m = 0; m <= b; ++m) {
    std::vector<Element> hx;
    for (const auto& x : ip.elements(m)) hx.push_back(h(m, x));
    for (std::size_t n = 0; n <= b; ++n) {
      const auto& fs = maps.maps(m, n);
      nat.over({fs.size(), ip.size(m)}, [&](std::span<const std::size_t> idx) -> std::optional<json> {
        const FinMap& f = fs[idx[0]];
        const Element lhs = h(n, ip.table(f).image[idx[1]]);
        const Element rhs = dst.act(f, hx[idx[1]]);
        if (dst.eq(n, lhs, rhs)) return std::nullopt;
        return mismatch(lhs, rhs, {{"f", to_json(f)}, {"x", element_to_json(ip.at(m, idx[1]))}});
      });
    }
  }
  report.laws.push_back(std::move(nat).finish());

  LawCheck var("preserves-v", budget);
  for (std::size_t m = 0; m < b; ++m) {
    var.single([&]() -> std::optional<json> {
      const Element lhs = h(m + 1, src.variable(m));
      const Element rhs = dst.variable(m);
      if (dst.eq(m + 1, lhs, rhs)) return std::nullopt;
      return mismatch(lhs, rhs, {{"m", m}});
    });
  }
  report.laws.push_back(std::move(var).finish());

  LawCheck sub("preserves-s", budget);
  for (std::size_t m = 0; m < b; ++m) {
    std::vector<Element> hx, hy;
    for (const auto& x : ip.elements(m + 1)) hx.push_back(h(m + 1, x));
    for (const auto& y : ip.elements(m)) hy.push_back(h(m, y));
    sub.over({ip.size(m + 1), ip.size(m)}, [&](std::span<const std::size_t> idx) -> std::optional<json> {
      const Element& x = ip.at(m + 1, idx[0]);
      const Element& y = ip.at(m, idx[1]);
      const Element lhs = h(m, src.substitute(m, x, y));
      const Element rhs = dst.substitute(m, hx[idx[0]], hy[idx[1]]);
      if (dst.eq(m, lhs, rhs)) return std::nullopt;
      return mismatch(lhs, rhs, {{"m", m}, {"x", element_to_json(x)}, {"y", element_to_json(y)}});
    });
  }
  report.laws.push_back(std::move(sub).finish());
  return report;
}

Report presentation_agreement(const Report& presentation, const Report& diagrams) {
  Report report;
  report.subject = "agreement of presentations for " + presentation.subject;
  const Budget budget;

  LawCheck overall("overall-verdict", budget);
  overall.single([&]() -> std::optional<json> {
    if (presentation.passed() == diagrams.passed()) return std::nullopt;
    return json{{"presentation", presentation.failed_laws()}, {"diagrams", diagrams.failed_laws()}};
  });
  report.laws.push_back(std::move(overall).finish());

  const bool natural = structurally_natural(diagrams);
  if (!natural) report.notes.push_back("raw data is not natural; law-for-law comparison skipped");

  LawCheck each("law-for-law", budget);
  if (natural) {
    for (const auto& law : matched_diagram_laws()) {
      each.single([&]() -> std::optional<json> {
        const bool d = diagrams.law(law).passed;
        const bool p = presentation.law(presentation_law_for(law)).passed;
        if (d == p) return std::nullopt;
        return json{{"diagram_law", law}, {"diagram", d}, {"presentation", p}};
      });
    }
  }
  report.laws.push_back(std::move(each).finish());

  LawCheck swap("contraction-swap", budget);
  if (natural) {
    swap.single([&]() -> std::optional<json> {
      bool with2 = true, with3 = true;
      for (const auto& l : diagrams.laws) {
        if (l.name != "contraction-old") with2 = with2 && l.passed;
        if (l.name != "contraction") with3 = with3 && l.passed;
      }
      if (with2 == with3) return std::nullopt;
      return json{{"with_contraction", with2}, {"with_contraction_old", with3}};
    });
  }
  report.laws.push_back(std::move(swap).finish());
  return report;
}

}  // namespace cf
