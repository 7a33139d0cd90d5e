#pragma once

// Substitution algebras: a presheaf A on 𝔽 with single-variable substitution
// s_m : A(m+1) x A(m) -> A(m) and generic variables v_m in A(m+1).

#include <functional>
#include <string_view>

#include "clone_forge/clone.hpp"
#include "clone_forge/presheaf.hpp"

namespace cf {

class SubstAlgebra : public Presheaf {
 public:
  /// s_m(x, y) for x in A(m+1), y in A(m).
  virtual Element substitute(std::size_t m, const Element& x, const Element& y) const = 0;
  /// v_m in A(m+1).
  virtual Element variable(std::size_t m) const = 0;
};

using AlgebraPtr = std::shared_ptr<const SubstAlgebra>;

/// nu_m = act((0 |-> m) : 1 -> m+1, v_0).
Element nu(const SubstAlgebra& a, std::size_t m);

/// A truncated algebra: a table presheaf up to bound M with s_m and v_m stored
/// for m < M. s[m] is row-major over A(m+1) x A(m) pairs.
class TableAlgebra final : public SubstAlgebra {
 public:
  TableAlgebra(TablePresheaf base, std::vector<std::vector<std::uint32_t>> s,
               std::vector<std::uint32_t> v);

  std::string name() const override { return base_.name(); }
  std::optional<std::size_t> bound() const override { return base_.bound(); }
  Carrier carrier(std::size_t m, const Budget& budget) const override {
    return base_.carrier(m, budget);
  }
  Element act(const FinMap& f, const Element& x) const override { return base_.act(f, x); }
  Element substitute(std::size_t m, const Element& x, const Element& y) const override;
  Element variable(std::size_t m) const override;

  const TablePresheaf& base() const { return base_; }
  const std::vector<std::vector<std::uint32_t>>& s_tables() const { return s_; }
  const std::vector<std::uint32_t>& v_indices() const { return v_; }

  TableAlgebra renamed(std::string name) const;
  TableAlgebra with_s(std::size_t m, std::uint32_t x, std::uint32_t y, std::uint32_t z) const;
  TableAlgebra with_v(std::size_t m, std::uint32_t idx) const;
  TableAlgebra with_image(const FinMap& f, std::uint32_t x, std::uint32_t y) const;

 private:
  TablePresheaf base_;
  std::vector<std::vector<std::uint32_t>> s_;
  std::vector<std::uint32_t> v_;
};

/// An algebra with some of its operations replaced. Unset overrides defer to
/// the base algebra.
class RewiredAlgebra final : public SubstAlgebra {
 public:
  using ActFn = std::function<Element(const SubstAlgebra& base, const FinMap&, const Element&)>;
  using SubstFn = std::function<Element(const SubstAlgebra& base, std::size_t, const Element&,
                                        const Element&)>;
  using VarFn = std::function<Element(const SubstAlgebra& base, std::size_t)>;

  RewiredAlgebra(AlgebraPtr base, std::string name, ActFn act = {}, SubstFn s = {}, VarFn v = {});

  std::string name() const override { return name_; }
  std::optional<std::size_t> bound() const override { return base_->bound(); }
  Carrier carrier(std::size_t m, const Budget& budget) const override {
    return base_->carrier(m, budget);
  }
  Element act(const FinMap& f, const Element& x) const override;
  Element substitute(std::size_t m, const Element& x, const Element& y) const override;
  Element variable(std::size_t m) const override;
  bool eq(std::size_t m, const Element& a, const Element& b) const override {
    return base_->eq(m, a, b);
  }

 private:
  AlgebraPtr base_;
  std::string name_;
  ActFn act_;
  SubstFn s_;
  VarFn v_;
};

/// Tabulates stages 0..bound. Throws RangeError when an operation leaves the
/// enumerated carriers.
TableAlgebra materialize(const SubstAlgebra& a, std::size_t bound, const Budget& budget);

/// The equational presentation: functoriality-identity, functoriality-composition,
/// naturality, left-unit, contraction, weakening, associativity, and
/// variable-coherence (v_m = nu_m, which the equations take as the definition
/// of the variables).
Report check_presentation(const SubstAlgebra& a, std::size_t bound, const Budget& budget);

/// The diagrammatic presentation, each diagram compiled to its stage-m
/// component: functoriality-identity, functoriality-composition, naturality
/// (of s), v-naturality, left-unit, contraction, contraction-old,
/// weakening, associativity.
Report check_diagrams(const SubstAlgebra& a, std::size_t bound, const Budget& budget);

/// Name of the presentation law corresponding to a diagram law, or "" when the
/// diagram has no counterpart (contraction-old stands in for contraction only
/// when the two contraction forms are swapped).
std::string presentation_law_for(std::string_view diagram_law);
/// Diagram laws compared law-for-law against the presentation.
const std::vector<std::string>& matched_diagram_laws();

/// True when the report's functoriality, naturality and variable laws pass,
/// i.e. the raw data is a natural pair (s, v) on a functor.
bool structurally_natural(const Report& diagrams);

/// Compares a presentation report with a diagram report of the same structure:
///   overall-verdict   both pass or both fail;
///   law-for-law       every matched law agrees (natural structures only);
///   contraction-swap  the diagram laws with contraction pass iff they pass
///                     with contraction-old in its place (natural structures only).
Report presentation_agreement(const Report& presentation, const Report& diagrams);

/// h_m : A(m) -> B(m) commutes with the actions, the variables and substitution.
Report hom_check(const ElementFamily& h, const SubstAlgebra& src, const SubstAlgebra& dst,
                 std::size_t bound, const Budget& budget);

}  // namespace cf
