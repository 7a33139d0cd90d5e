#pragma once

// Standard clones and algebras used by the CLI demo and the test suites,
// together with deliberately broken variants.

#include "clone_forge/iso_bridge.hpp"

namespace cf {

/// ({0,1}, meet): the clone of its term operations has 2^n - 1 elements at arity n.
FiniteAlgebra meet_algebra();
/// {b : 2, e : 0}.
Signature binary_constant_signature();

struct NamedClone {
  std::string name;
  ClonePtr clone;
};

/// initial, terminal, arrow, free {b:2, e:0}, and the meet clone up to `max_arity`.
std::vector<NamedClone> standard_clones(std::size_t max_arity);

struct NamedAlgebra {
  std::string name;
  AlgebraPtr algebra;
};

/// S-images of the standard clones.
std::vector<NamedAlgebra> standard_algebras(std::size_t max_arity);

/// Variants of S-images whose s or v is replaced by another natural operation,
/// or whose action is replaced; described by their names.
std::vector<NamedAlgebra> rewired_variants(std::size_t max_arity);

/// Single-entry edits of the tabulated S(initial) and S(meet) up to `bound`:
/// every s entry and v index, and one image of every action table up to
/// stage 2, changed to every other value. Also S(initial) with s_2
/// constantly 0.
std::vector<NamedAlgebra> table_variants(std::size_t bound);

/// One structure per law of the equational presentation that fails that law
/// and no other, at `bound` >= 3:
///   functoriality-identity     S(initial) with a second copy of x_0 at the top stage
///   functoriality-composition  S(initial) with one image changed at the top stage
///   left-unit                  two points, trivial action, s(x, y) = x
///   contraction                subsets of variables, s(t, u) = {} when x_m has company in t
///   weakening                  two points, trivial action, s(x, y) = x or y
///   associativity              terms, s(t, u) = t[x_m := e] when x_m occurs twice and u is compound
/// The first two only exist because the top stage is unconstrained by s.
std::vector<NamedAlgebra> isolating_variants(std::size_t bound);

/// Two points at every stage, every map acting as the identity, each of the
/// 16 binary operations as s and either point as v. All are natural.
std::vector<NamedAlgebra> two_point_variants(std::size_t bound);

/// The variable family from S(initial): ord m -> A(m), i |-> act((0 |-> i), v_0).
ElementFamily variable_family(AlgebraPtr target);

/// For every law of the equational presentation, whether some structure in
/// `corpus` fails that law and no other. The witness of a law without such a
/// structure names the one with the fewest other failing laws.
Report mutation_sensitivity(const std::vector<NamedAlgebra>& corpus, std::size_t bound,
                            const Budget& budget);

}  // namespace cf
