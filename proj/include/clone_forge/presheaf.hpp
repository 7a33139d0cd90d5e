#pragma once

// Covariant presheaves on 𝔽 and the symmetric monad delta(A) = A(- + 1).

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clone_forge/element.hpp"
#include "clone_forge/fin_map.hpp"
#include "clone_forge/law_check.hpp"

namespace cf {

/// A functor 𝔽 -> Set, either defined at every stage or stored up to a bound.
class Presheaf {
 public:
  virtual ~Presheaf() = default;

  virtual std::string name() const = 0;
  /// Highest stage with data; std::nullopt when defined at every stage.
  virtual std::optional<std::size_t> bound() const { return std::nullopt; }
  virtual Carrier carrier(std::size_t m, const Budget& budget) const = 0;
  /// Action of f : m -> n on an element of stage m.
  virtual Element act(const FinMap& f, const Element& x) const = 0;
  virtual bool eq(std::size_t /*m*/, const Element& a, const Element& b) const { return a == b; }
};

using PresheafPtr = std::shared_ptr<const Presheaf>;

/// Throws RangeError when `stage` lies beyond the presheaf's bound.
void require_stage(const Presheaf& p, std::size_t stage);

/// V = 𝔽(1, -): V(m) = ord m, acting by table lookup.
PresheafPtr representable_v();

/// A presheaf fragment stored as tables for all stages up to its bound.
/// Elements are atoms 0..size(m)-1.
class TablePresheaf : public Presheaf {
 public:
  // actions[m][n][rank(f)] lists the image of every element of stage m.
  using ActionTables = std::vector<std::vector<std::vector<std::vector<std::uint32_t>>>>;

  TablePresheaf(std::vector<std::size_t> sizes, ActionTables actions,
                std::vector<std::vector<std::string>> labels = {}, std::string name = "table");

  std::string name() const override { return name_; }
  std::optional<std::size_t> bound() const override { return sizes_.size() - 1; }
  Carrier carrier(std::size_t m, const Budget& budget) const override;
  Element act(const FinMap& f, const Element& x) const override;

  std::size_t size(std::size_t m) const { return sizes_.at(m); }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  const ActionTables& actions() const { return actions_; }
  const std::vector<std::vector<std::string>>& labels() const { return labels_; }

  /// Copy with act(f, x) redefined as y.
  TablePresheaf with_image(const FinMap& f, std::uint32_t x, std::uint32_t y) const;

 protected:
  std::vector<std::size_t> sizes_;
  ActionTables actions_;
  std::vector<std::vector<std::string>> labels_;
  std::string name_;
};

/// Tabulates stages 0..bound of a presheaf whose carriers are closed under the
/// action. Throws RangeError if some image leaves the enumerated carrier.
TablePresheaf tabulate(const Presheaf& p, std::size_t bound, const Budget& budget);

/// delta(P)(m) = P(m+1), acting by f + id_1. A truncated P loses one stage.
class DeltaPresheaf final : public Presheaf {
 public:
  explicit DeltaPresheaf(PresheafPtr base);

  std::string name() const override { return "delta(" + base_->name() + ")"; }
  std::optional<std::size_t> bound() const override;
  Carrier carrier(std::size_t m, const Budget& budget) const override;
  Element act(const FinMap& f, const Element& x) const override;
  bool eq(std::size_t m, const Element& a, const Element& b) const override {
    return base_->eq(m + 1, a, b);
  }

 private:
  PresheafPtr base_;
};

PresheafPtr delta_apply(PresheafPtr p);

/// The symmetric-monad structure maps of delta on a presheaf, at stage m:
///   contraction : P(m+2) -> P(m+1), act(id_m + c)   (multiplication)
///   weakening   : P(m)   -> P(m+1), act(id_m + w)   (unit)
///   swap        : P(m+2) -> P(m+2), act(id_m + s)   (symmetry)
class DeltaStructure {
 public:
  explicit DeltaStructure(PresheafPtr p) : p_(std::move(p)) {}

  Element contraction(std::size_t m, const Element& x) const;
  Element weakening(std::size_t m, const Element& x) const;
  Element swap(std::size_t m, const Element& x) const;
  const Presheaf& presheaf() const { return *p_; }

 private:
  PresheafPtr p_;
};

DeltaStructure delta_structure(PresheafPtr p);

using ElementPair = std::pair<Element, Element>;

/// The concrete strengths and distributive law of delta, at stage m.
class Strengths {
 public:
  Strengths(PresheafPtr p, PresheafPtr q) : p_(std::move(p)), q_(std::move(q)) {}

  /// str : P(m+1) x Q(m) -> (P x Q)(m+1), (a, y) |-> (a, Q.old(y)).
  ElementPair str(std::size_t m, const Element& a, const Element& y) const;
  /// str' : P(m) x Q(m+1) -> (P x Q)(m+1), (x, b) |-> (P.old(x), b).
  ElementPair str_left(std::size_t m, const Element& x, const Element& b) const;
  /// str• : P(m+1) x P(m) x Q(m) -> P(m+1) x Q(m+1) x P(m) x Q(m),
  /// (a, x, y) |-> (a, Q.old(y), x, y).
  std::array<Element, 4> str_bullet(std::size_t m, const Element& a, const Element& x,
                                    const Element& y) const;
  /// Distributive law delta delta• -> delta• delta on P:
  /// P(m+2) x P(m+1) -> P(m+2) x P(m+1), (a, b) |-> (act(id_m + s, a), b).
  ElementPair dist(std::size_t m, const Element& a, const Element& b) const;

 private:
  PresheafPtr p_;
  PresheafPtr q_;
};

Strengths strengths(PresheafPtr p, PresheafPtr q);

/// delta(X x Y)(m) -> delta X(m) x delta Y(m) and back. Both are the identity
/// on our pair representation.
ElementPair ell(const ElementPair& p);
ElementPair ell_inverse(const ElementPair& p);

/// Identity and composition laws for all maps with endpoints up to `bound`.
Report check_functoriality(const Presheaf& p, std::size_t bound, const Budget& budget);

/// Pointwise images under P of the symmetric-monoid diagrams for (c, w, s).
Report check_delta_monoid(const Presheaf& p, std::size_t bound, const Budget& budget,
                          const FinMap& c, const FinMap& w, const FinMap& s);

/// Symmetric monad, strength, distributive law, naturality and ell laws of
/// delta on P, over all stages whose arithmetic stays within `bound`.
Report check_delta_laws(PresheafPtr p, std::size_t bound, const Budget& budget);

}  // namespace cf
