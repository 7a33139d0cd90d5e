#pragma once

// The functors S : clones -> substitution algebras and C : substitution
// algebras -> clones, which are mutually inverse.

#include "clone_forge/clone.hpp"
#include "clone_forge/subst_algebra.hpp"

namespace cf {

/// S(K): A(m) = K_m with
///   act(f, t)   = mu_{m,n}(t, iota^n_{f(0)}, ..., iota^n_{f(m-1)})
///   v_m         = iota^{m+1}_m
///   s_m(t, u)   = mu_{m+1,m}(t, iota^m_0, ..., iota^m_{m-1}, u)
class CloneSubstAlgebra final : public SubstAlgebra {
 public:
  explicit CloneSubstAlgebra(ClonePtr clone) : clone_(std::move(clone)) {}

  const Clone& clone() const { return *clone_; }

  std::string name() const override { return "S(" + clone_->name() + ")"; }
  Carrier carrier(std::size_t m, const Budget& budget) const override {
    return clone_->elements(m, budget);
  }
  Element act(const FinMap& f, const Element& x) const override;
  Element substitute(std::size_t m, const Element& x, const Element& y) const override;
  Element variable(std::size_t m) const override;
  bool eq(std::size_t m, const Element& a, const Element& b) const override {
    return clone_->eq(m, a, b);
  }

 private:
  ClonePtr clone_;
};

AlgebraPtr s_functor(ClonePtr clone);

/// Iterated substitution phi_{m,n} : A(n+m) x A(n)^m -> A(n). The last
/// substituend goes first:
///   phi_{0,n}(a)          = a
///   phi_{m+1,n}(a, us, u) = phi_{m,n}(s_{n+m}(a, act(incl : n -> n+m, u)), us)
Element phi(const SubstAlgebra& a, std::size_t m, std::size_t n, const Element& x,
            std::span<const Element> us);

/// C(A): C_n = A(n) with
///   mu_{m,n}(t, us) = phi_{m,n}(act(i |-> n+i : m -> n+m, t), us)
///   iota^m_i        = act((0 |-> i) : 1 -> m, v_0)
/// Throws RangeError when an operation needs a stage beyond A's bound.
class AlgebraClone final : public Clone {
 public:
  explicit AlgebraClone(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}

  const SubstAlgebra& algebra() const { return *algebra_; }

  std::string name() const override { return "C(" + algebra_->name() + ")"; }
  Carrier elements(std::size_t n, const Budget& budget) const override;
  Element mu(std::size_t m, std::size_t n, const Element& t,
             std::span<const Element> us) const override;
  Element iota(std::size_t m, std::size_t i) const override;
  bool eq(std::size_t n, const Element& a, const Element& b) const override {
    return algebra_->eq(n, a, b);
  }

 private:
  AlgebraPtr algebra_;
};

ClonePtr c_functor(AlgebraPtr algebra);

/// S and C leave the underlying family unchanged. These certify it: the
/// report holds the source-side check (prefixed "source:") and the
/// target-side check (prefixed "target:").
Report s_on_hom(const ElementFamily& h, ClonePtr src, ClonePtr dst, std::size_t bound,
                const Budget& budget);
Report c_on_hom(const ElementFamily& h, AlgebraPtr src, AlgebraPtr dst, std::size_t bound,
                const Budget& budget);

/// C(S(K)) = K on the nose: carriers, mu and iota for arities up to the
/// budget's max arity.
Report roundtrip_clone(ClonePtr clone, const Budget& budget);
/// S(C(A)) = A on the nose: carriers, act, s and v up to `bound`.
Report roundtrip_alg(AlgebraPtr algebra, std::size_t bound, const Budget& budget);

}  // namespace cf
