#pragma once

// Abstract clones: sorted families C_n with simultaneous substitution
// mu_{m,n} : C_m x (C_n)^m -> C_n and projections iota^m_i in C_m.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clone_forge/element.hpp"
#include "clone_forge/law_check.hpp"
#include "clone_forge/term.hpp"

namespace cf {

/// Operator names with their arities. Names must not look like variables (x0, x1, ...).
struct Signature {
  std::map<std::string, std::size_t> operators;

  void validate() const;
};

/// True when every variable of `t` is below n and every operator is applied
/// to as many arguments as its arity.
bool well_formed(const Signature& sig, const Term& t, std::size_t n);

/// Capability interface for a clone. Implementations are immutable or
/// memoize internally behind a lock.
class Clone {
 public:
  virtual ~Clone() = default;

  virtual std::string name() const = 0;
  virtual Carrier elements(std::size_t n, const Budget& budget) const = 0;
  virtual Element mu(std::size_t m, std::size_t n, const Element& t,
                     std::span<const Element> us) const = 0;
  virtual Element iota(std::size_t m, std::size_t i) const = 0;
  virtual bool eq(std::size_t /*n*/, const Element& a, const Element& b) const { return a == b; }
};

using ClonePtr = std::shared_ptr<const Clone>;

Term free_iota(std::size_t m, std::size_t i);
/// Simultaneous substitution of `us` (terms over n variables) into t (over m).
Term free_mu(std::size_t m, std::size_t n, const Term& t, std::span<const Term> us);

/// The term clone of a signature; carriers are enumerated by depth.
class FreeClone final : public Clone {
 public:
  explicit FreeClone(Signature sig);

  const Signature& signature() const { return sig_; }

  std::string name() const override;
  Carrier elements(std::size_t n, const Budget& budget) const override;
  Element mu(std::size_t m, std::size_t n, const Element& t,
             std::span<const Element> us) const override;
  Element iota(std::size_t m, std::size_t i) const override;

  /// Terms over n variables of depth exactly d, in enumeration order.
  const std::vector<Term>& level(std::size_t n, std::size_t d) const;

 private:
  Signature sig_;
  mutable std::mutex mutex_;
  mutable std::map<std::size_t, std::vector<std::vector<Term>>> levels_;
};

/// A finite set {0..k-1} with operations given by row-major tables.
struct FiniteAlgebra {
  struct Operation {
    std::size_t arity = 0;
    std::vector<std::uint32_t> table;  // length k^arity
  };
  std::size_t carrier = 0;
  std::map<std::string, Operation> operations;

  void validate() const;
};

/// The clone of term operations of a finite algebra, up to `max_arity`.
class FiniteClone final : public Clone {
 public:
  FiniteClone(FiniteAlgebra algebra, std::size_t max_arity);

  const FiniteAlgebra& algebra() const { return algebra_; }
  std::size_t max_arity() const { return max_arity_; }

  std::string name() const override;
  /// Throws RangeError above max_arity.
  Carrier elements(std::size_t n, const Budget& budget) const override;
  Element mu(std::size_t m, std::size_t n, const Element& t,
             std::span<const Element> us) const override;
  Element iota(std::size_t m, std::size_t i) const override;

 private:
  const std::vector<Element>& closure(std::size_t n) const;

  FiniteAlgebra algebra_;
  std::size_t max_arity_;
  mutable std::mutex mutex_;
  mutable std::map<std::size_t, std::vector<Element>> closures_;
};

ClonePtr finite_clone_of_algebra(const FiniteAlgebra& algebra, std::size_t max_arity);

/// "initial" (C_n = ord n), "terminal" (all singletons), or "arrow"
/// (C_0 empty, singletons otherwise). Throws ValidationError otherwise.
ClonePtr builtin_clone(std::string_view name);

/// Three clone equations: associativity, projection, right identity.
Report clone_laws_check(const Clone& clone, const Budget& budget);

/// A family h_n : C_n -> C'_n.
using ElementFamily = std::function<Element(std::size_t, const Element&)>;

/// Checks that h preserves iota and mu.
Report clone_hom_check(const ElementFamily& h, const Clone& src, const Clone& dst,
                       const Budget& budget);

/// A morphism m -> n of the Lawvere theory of a clone: n elements of C_m.
struct TheoryHom {
  std::size_t src = 0;
  std::size_t dst = 0;
  std::vector<Element> components;
};

TheoryHom theory_identity(const Clone& clone, std::size_t m);
/// F : m -> n after G : l -> m, componentwise mu_{m,l}(F_k, G).
TheoryHom theory_compose(const Clone& clone, const TheoryHom& f, const TheoryHom& g);
bool theory_equal(const Clone& clone, const TheoryHom& a, const TheoryHom& b);

/// Size of (C_m)^n over the budgeted carrier (saturating).
std::uint64_t theory_hom_count(const Clone& clone, std::size_t m, std::size_t n,
                               const Budget& budget);
/// All of (C_m)^n, lexicographic; throws RangeError past `limit` homs.
std::vector<TheoryHom> enumerate_theory_homs(const Clone& clone, std::size_t m, std::size_t n,
                                             const Budget& budget, std::uint64_t limit = 1000000);

using TheoryComposer =
    std::function<TheoryHom(const Clone&, const TheoryHom&, const TheoryHom&)>;

/// Associativity and both unit laws of the hom-set composition with
/// endpoints up to `bound`. A custom composer may be supplied to test the checker.
Report theory_laws_check(const Clone& clone, std::size_t bound, const Budget& budget,
                         const TheoryComposer& compose = theory_compose);

json to_json(const TheoryHom& h);

}  // namespace cf
