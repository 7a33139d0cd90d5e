#include "clone_forge/fin_map.hpp"

#include <numeric>
#include <sstream>

#include "clone_forge/errors.hpp"

namespace cf {

FinMap::FinMap(std::size_t cod, std::vector<std::uint32_t> table)
    : cod_(cod), table_(std::move(table)) {
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] >= cod_) {
      throw ShapeError("FinMap entry " + std::to_string(i) + " = " + std::to_string(table_[i]) +
                       " is not below codomain " + std::to_string(cod_));
    }
  }
}

FinMap FinMap::identity(std::size_t n) {
  std::vector<std::uint32_t> t(n);
  std::iota(t.begin(), t.end(), 0U);
  return FinMap(n, std::move(t));
}

std::uint64_t FinMap::rank() const {
  std::uint64_t r = 0;
  for (auto v : table_) r = r * cod_ + v;
  return r;
}

std::string FinMap::table_key() const {
  std::string out;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(table_[i]);
  }
  return out;
}

std::string FinMap::to_string() const {
  return std::to_string(dom()) + "->" + std::to_string(cod_) + ":[" + table_key() + "]";
}

FinMap compose(const FinMap& f, const FinMap& g) {
  if (f.cod() != g.dom()) {
    throw ShapeError("cannot compose " + f.to_string() + " then " + g.to_string());
  }
  std::vector<std::uint32_t> t(f.dom());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = g(f(i));
  return FinMap(g.cod(), std::move(t));
}

FinMap coproduct(const FinMap& f, const FinMap& g) {
  std::vector<std::uint32_t> t(f.table().begin(), f.table().end());
  const auto shift = static_cast<std::uint32_t>(f.cod());
  for (auto v : g.table()) t.push_back(shift + v);
  return FinMap(f.cod() + g.cod(), std::move(t));
}

FinMap old_inclusion(std::size_t n) { return inclusion(n, 1); }

FinMap fresh_point(std::size_t n) { return point(n + 1, n); }

FinMap point(std::size_t n, std::size_t i) {
  return FinMap(n, {static_cast<std::uint32_t>(i)});
}

FinMap shift_map(std::size_t m, std::size_t shift) {
  std::vector<std::uint32_t> t(m);
  std::iota(t.begin(), t.end(), static_cast<std::uint32_t>(shift));
  return FinMap(shift + m, std::move(t));
}

FinMap inclusion(std::size_t n, std::size_t extra) {
  std::vector<std::uint32_t> t(n);
  std::iota(t.begin(), t.end(), 0U);
  return FinMap(n + extra, std::move(t));
}

Generators generators() {
  return Generators{FinMap(1, {0, 0}), FinMap(1, {}), FinMap(2, {1, 0})};
}

std::vector<FinMap> enumerate_maps(std::size_t dom, std::size_t cod) {
  std::vector<FinMap> out;
  if (cod == 0 && dom > 0) return out;
  std::vector<std::uint32_t> t(dom, 0);
  while (true) {
    out.emplace_back(cod, t);
    std::size_t k = dom;
    while (k > 0) {
      --k;
      if (++t[k] < cod) break;
      t[k] = 0;
      if (k == 0) return out;
    }
    if (dom == 0) return out;
  }
}

FinMap compose_chain(std::size_t source, std::span<const FinMap> chain) {
  FinMap acc = FinMap::identity(source);
  for (const auto& f : chain) acc = compose(acc, f);
  return acc;
}

std::vector<MonoidDiagram> symmetric_monoid_diagrams(const FinMap& c, const FinMap& w,
                                                     const FinMap& s) {
  const FinMap id = FinMap::identity(1);
  const FinMap id2 = FinMap::identity(2);
  auto l = [&](const FinMap& f) { return coproduct(f, id); };  // f (x) id
  auto r = [&](const FinMap& f) { return coproduct(id, f); };  // id (x) f
  std::vector<MonoidDiagram> out;
  out.push_back({"associativity", 3, {l(c), c}, {r(c), c}});
  out.push_back({"right-unit", 1, {r(w), c}, {}});
  out.push_back({"left-unit", 1, {l(w), c}, {}});
  out.push_back({"commutativity", 2, {s, c}, {c}});
  out.push_back({"involution", 2, {s, s}, {id2}});
  out.push_back({"braid", 3, {l(s), r(s), l(s)}, {r(s), l(s), r(s)}});
  out.push_back({"unit-symmetry", 1, {l(w), s}, {r(w)}});
  out.push_back({"multiplication-symmetry", 3, {l(s), r(s), l(c)}, {r(c), s}});
  return out;
}

Report check_symmetric_monoid(const FinMap& c, const FinMap& w, const FinMap& s) {
  auto shape = [](const FinMap& f, std::size_t d, std::size_t k, const char* name) {
    if (f.dom() != d || f.cod() != k) {
      throw ShapeError(std::string(name) + " must be " + std::to_string(d) + "->" +
                       std::to_string(k) + ", got " + f.to_string());
    }
  };
  shape(c, 2, 1, "c");
  shape(w, 0, 1, "w");
  shape(s, 2, 2, "s");

  Report report;
  report.subject = "symmetric monoid (c=" + c.to_string() + ", w=" + w.to_string() +
                   ", s=" + s.to_string() + ")";
  for (const auto& d : symmetric_monoid_diagrams(c, w, s)) {
    LawCheck check(d.name, Budget{});
    check.single([&]() -> std::optional<json> {
      const FinMap lhs = compose_chain(d.source, d.lhs);
      const FinMap rhs = compose_chain(d.source, d.rhs);
      if (lhs == rhs) return std::nullopt;
      return json{{"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}};
    });
    report.laws.push_back(std::move(check).finish());
  }
  return report;
}

json to_json(const FinMap& f) {
  return json{{"dom", f.dom()}, {"cod", f.cod()}, {"table", f.table()}};
}

FinMap finmap_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dom") || !j.contains("cod") || !j.contains("table")) {
    throw ValidationError("FinMap must be an object with dom, cod and table");
  }
  auto table = j.at("table").get<std::vector<std::uint32_t>>();
  if (table.size() != j.at("dom").get<std::size_t>()) {
    throw ValidationError("FinMap table length differs from dom");
  }
  try {
    return FinMap(j.at("cod").get<std::size_t>(), std::move(table));
  } catch (const ShapeError& e) {
    throw ValidationError(e.what());
  }
}

}  // namespace cf
