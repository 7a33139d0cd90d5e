#include "clone_forge/element.hpp"

#include "clone_forge/errors.hpp"

namespace cf {

std::size_t ElementHash::operator()(const Element& e) const {
  struct Visitor {
    std::size_t operator()(const Atom& a) const { return std::hash<std::uint32_t>{}(a.value); }
    std::size_t operator()(const Term& t) const { return t.hash(); }
    std::size_t operator()(const FunctionTable& f) const {
      std::size_t h = f.values.size();
      for (auto v : f.values) h = h * 1000003U + v;
      return h;
    }
  };
  return std::visit(Visitor{}, e) ^ (e.index() * 0x9e3779b97f4a7c15ULL);
}

std::string to_string(const Element& e) {
  struct Visitor {
    std::string operator()(const Atom& a) const { return std::to_string(a.value); }
    std::string operator()(const Term& t) const { return t.to_string(); }
    std::string operator()(const FunctionTable& f) const {
      std::string out = "[";
      for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(f.values[i]);
      }
      return out + "]";
    }
  };
  return std::visit(Visitor{}, e);
}

json element_to_json(const Element& e) {
  struct Visitor {
    json operator()(const Atom& a) const { return a.value; }
    json operator()(const Term& t) const { return t.to_string(); }
    json operator()(const FunctionTable& f) const { return f.values; }
  };
  return std::visit(Visitor{}, e);
}

Element element_from_json(const json& j) {
  if (j.is_number_unsigned()) return Atom{j.get<std::uint32_t>()};
  if (j.is_string()) return parse_term(j.get<std::string>());
  if (j.is_array()) return FunctionTable{j.get<std::vector<std::uint32_t>>()};
  throw ValidationError("cannot read an element from " + j.dump());
}

}  // namespace cf
