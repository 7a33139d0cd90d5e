#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "clone_forge/law_check.hpp"
#include "clone_forge/term.hpp"

namespace cf {

/// An element named by its position, as in ord n or a table-defined carrier.
struct Atom {
  std::uint32_t value = 0;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// A function k^n -> k, row-major over argument tuples (last argument fastest).
struct FunctionTable {
  std::vector<std::uint32_t> values;
  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;
};

/// Carrier element of any clone, presheaf or substitution algebra.
using Element = std::variant<Atom, Term, FunctionTable>;

struct ElementHash {
  std::size_t operator()(const Element& e) const;
};

std::string to_string(const Element& e);
json element_to_json(const Element& e);
/// Integers become atoms, strings are parsed as terms, arrays as tables.
Element element_from_json(const json& j);

/// Elements of one stage of a carrier, enumerated within a budget.
struct Carrier {
  std::vector<Element> elements;
  // False when the enumeration was cut off by the budget.
  bool complete = true;
};

}  // namespace cf
