#pragma once

// The category of finite ordinals ord n = {0, ..., n-1} and all functions.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "clone_forge/law_check.hpp"

namespace cf {

/// A function ord dom -> ord cod stored as its table of images.
class FinMap {
 public:
  /// Validates every entry against `cod`; throws ShapeError otherwise.
  FinMap(std::size_t cod, std::vector<std::uint32_t> table);

  static FinMap identity(std::size_t n);

  std::size_t dom() const { return table_.size(); }
  std::size_t cod() const { return cod_; }
  std::span<const std::uint32_t> table() const { return table_; }
  std::uint32_t operator()(std::size_t i) const { return table_[i]; }

  /// Position of this map in enumerate_maps(dom, cod).
  std::uint64_t rank() const;

  std::string to_string() const;  // e.g. "2->1:[0,0]"
  std::string table_key() const;  // comma-joined table, "" for the empty map

  friend bool operator==(const FinMap&, const FinMap&) = default;

 private:
  std::size_t cod_;
  std::vector<std::uint32_t> table_;
};

/// Diagrammatic composite: first f, then g.
FinMap compose(const FinMap& f, const FinMap& g);

/// f + g: f on the left block, g shifted past f.cod on the right block.
FinMap coproduct(const FinMap& f, const FinMap& g);

/// old(n): n -> n+1, the inclusion of the first n points.
FinMap old_inclusion(std::size_t n);
/// new(n): 1 -> n+1, the fresh last point.
FinMap fresh_point(std::size_t n);
/// (0 |-> i): 1 -> n.
FinMap point(std::size_t n, std::size_t i);
/// (i |-> shift + i): m -> shift + m.
FinMap shift_map(std::size_t m, std::size_t shift);
/// (i |-> i): n -> n + extra.
FinMap inclusion(std::size_t n, std::size_t extra);

struct Generators {
  FinMap c;  // [id_1, id_1] : 2 -> 1
  FinMap w;  // old_0 : 0 -> 1
  FinMap s;  // [new_1, old_1] : 2 -> 2
};

Generators generators();

/// All cod^dom maps, lexicographic in their tables.
std::vector<FinMap> enumerate_maps(std::size_t dom, std::size_t cod);

/// One of the symmetric-monoid equations, as two chains of 𝔽 maps applied
/// left to right from the object `source`.
struct MonoidDiagram {
  std::string name;
  std::size_t source;
  std::vector<FinMap> lhs;
  std::vector<FinMap> rhs;
};

/// The eight symmetric-monoid equations for (c, w, s) on the object 1, with
/// the tensor realised as coproduct. Unit is split into its two triangles.
std::vector<MonoidDiagram> symmetric_monoid_diagrams(const FinMap& c, const FinMap& w,
                                                     const FinMap& s);

/// Checks all eight diagrams as equalities of composite maps.
/// Throws ShapeError unless c: 2->1, w: 0->1 and s: 2->2.
Report check_symmetric_monoid(const FinMap& c, const FinMap& w, const FinMap& s);

/// Composes a chain left to right starting from identity(source).
FinMap compose_chain(std::size_t source, std::span<const FinMap> chain);

json to_json(const FinMap& f);
FinMap finmap_from_json(const json& j);

}  // namespace cf
