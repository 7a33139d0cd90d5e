#include "clone_forge/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "clone_forge/errors.hpp"

namespace cf {

namespace {

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + ": missing field \"" + key + "\"");
  return *it;
}

std::uint64_t natural(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    throw ValidationError(where + ": expected a non-negative integer, got " + j.dump());
  }
  return j.get<std::uint64_t>();
}

std::vector<std::uint32_t> naturals(const json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array");
  std::vector<std::uint32_t> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto v = natural(j[i], where + "[" + std::to_string(i) + "]");
    if (v > UINT32_MAX) throw ValidationError(where + ": entry too large");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, _] : obj.items()) {
    if (!ok.count(k)) throw ValidationError(where + ": unknown field \"" + k + "\"");
  }
}

std::string stage_key(std::size_t m, std::size_t n) {
  return std::to_string(m) + "->" + std::to_string(n);
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": malformed JSON at byte " + std::to_string(e.byte) +
                          ": " + e.what());
  }
}

Signature signature_from_json(const json& j) {
  reject_unknown(j, {"operators"}, "signature");
  const json& ops = field(j, "operators", "signature");
  if (!ops.is_object()) throw ValidationError("signature.operators: expected an object");
  Signature sig;
  for (const auto& [name, arity] : ops.items()) {
    sig.operators[name] = natural(arity, "signature.operators." + name);
  }
  sig.validate();
  return sig;
}

json to_json(const Signature& sig) {
  json ops = json::object();
  for (const auto& [name, arity] : sig.operators) ops[name] = arity;
  return json{{"operators", ops}};
}

FiniteAlgebra finite_algebra_from_json(const json& j) {
  reject_unknown(j, {"carrier", "operations"}, "algebra");
  FiniteAlgebra alg;
  alg.carrier = natural(field(j, "carrier", "algebra"), "algebra.carrier");
  const json& ops = field(j, "operations", "algebra");
  if (!ops.is_object()) throw ValidationError("algebra.operations: expected an object");
  for (const auto& [name, op] : ops.items()) {
    const std::string where = "algebra.operations." + name;
    reject_unknown(op, {"arity", "table"}, where);
    FiniteAlgebra::Operation o;
    o.arity = natural(field(op, "arity", where), where + ".arity");
    o.table = naturals(field(op, "table", where), where + ".table");
    alg.operations[name] = std::move(o);
  }
  alg.validate();
  return alg;
}

json to_json(const FiniteAlgebra& alg) {
  json ops = json::object();
  for (const auto& [name, op] : alg.operations) ops[name] = {{"arity", op.arity}, {"table", op.table}};
  return json{{"carrier", alg.carrier}, {"operations", ops}};
}

namespace {

TablePresheaf presheaf_body(const json& j) {
  const std::size_t bound = natural(field(j, "bound", "presheaf"), "presheaf.bound");
  const auto sizes32 = naturals(field(j, "carriers", "presheaf"), "presheaf.carriers");
  if (sizes32.size() != bound + 1) {
    throw ValidationError("presheaf.carriers: expected " + std::to_string(bound + 1) +
                          " sizes, got " + std::to_string(sizes32.size()));
  }
  const std::vector<std::size_t> sizes(sizes32.begin(), sizes32.end());
  const json& actions = field(j, "actions", "presheaf");
  if (!actions.is_object()) throw ValidationError("presheaf.actions: expected an object");

  TablePresheaf::ActionTables tables(bound + 1);
  std::size_t used = 0;
  for (std::size_t m = 0; m <= bound; ++m) {
    tables[m].resize(bound + 1);
    for (std::size_t n = 0; n <= bound; ++n) {
      const auto maps = enumerate_maps(m, n);
      if (maps.empty()) {
        if (actions.contains(stage_key(m, n)) && !actions[stage_key(m, n)].empty()) {
          throw ValidationError("presheaf.actions." + stage_key(m, n) + ": there are no maps " +
                                stage_key(m, n));
        }
        used += actions.contains(stage_key(m, n));
        continue;
      }
      const std::string where = "presheaf.actions." + stage_key(m, n);
      const json& block = field(actions, stage_key(m, n), "presheaf.actions");
      if (!block.is_object()) throw ValidationError(where + ": expected an object");
      if (block.size() != maps.size()) {
        throw ValidationError(where + ": expected " + std::to_string(maps.size()) +
                              " maps, got " + std::to_string(block.size()));
      }
      ++used;
      for (const auto& f : maps) {
        tables[m][n].push_back(naturals(field(block, f.table_key(), where), where + "." + f.table_key()));
      }
    }
  }
  if (used != actions.size()) throw ValidationError("presheaf.actions: unexpected stage pairs");

  std::vector<std::vector<std::string>> labels;
  if (j.contains("labels")) {
    const json& l = j["labels"];
    if (!l.is_array()) throw ValidationError("presheaf.labels: expected an array");
    for (const auto& stage : l) {
      if (!stage.is_array()) throw ValidationError("presheaf.labels: expected arrays of strings");
      labels.emplace_back();
      for (const auto& s : stage) {
        if (!s.is_string()) throw ValidationError("presheaf.labels: expected strings");
        labels.back().push_back(s.get<std::string>());
      }
    }
  }
  std::string name = "table";
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ValidationError("presheaf.name: expected a string");
    name = j["name"].get<std::string>();
  }
  TablePresheaf p(sizes, std::move(tables), std::move(labels), std::move(name));

  Budget exhaustive;
  exhaustive.sample_threshold = UINT64_MAX;
  const Report f = check_functoriality(p, bound, exhaustive);
  if (!f.passed()) {
    const auto& law = f.law(f.failed_laws().front());
    throw ValidationError("presheaf is not functorial: " + law.name + " fails at " + law.witness.dump());
  }
  return p;
}

json presheaf_fields(const TablePresheaf& p) {
  const std::size_t bound = *p.bound();
  json actions = json::object();
  for (std::size_t m = 0; m <= bound; ++m) {
    for (std::size_t n = 0; n <= bound; ++n) {
      const auto maps = enumerate_maps(m, n);
      if (maps.empty()) continue;
      json block = json::object();
      for (std::size_t r = 0; r < maps.size(); ++r) block[maps[r].table_key()] = p.actions()[m][n][r];
      actions[stage_key(m, n)] = block;
    }
  }
  json out{{"bound", bound}, {"carriers", p.sizes()}, {"actions", actions}, {"name", p.name()}};
  if (!p.labels().empty()) out["labels"] = p.labels();
  return out;
}

}  // namespace

TablePresheaf presheaf_from_json(const json& j) {
  reject_unknown(j, {"bound", "carriers", "actions", "labels", "name"}, "presheaf");
  return presheaf_body(j);
}

json to_json(const TablePresheaf& p) { return presheaf_fields(p); }

TableAlgebra algebra_from_json(const json& j) {
  reject_unknown(j, {"bound", "carriers", "actions", "labels", "name", "s", "v"}, "algebra");
  TablePresheaf base = presheaf_body(j);
  const std::size_t bound = *base.bound();
  const json& sj = field(j, "s", "algebra");
  const json& vj = field(j, "v", "algebra");
  if (!sj.is_object() || !vj.is_object()) throw ValidationError("algebra: s and v must be objects");
  if (sj.size() != bound || vj.size() != bound) {
    throw ValidationError("algebra: s and v need one entry for each stage below the bound " +
                          std::to_string(bound));
  }
  std::vector<std::vector<std::uint32_t>> s;
  std::vector<std::uint32_t> v;
  for (std::size_t m = 0; m < bound; ++m) {
    const auto key = std::to_string(m);
    s.push_back(naturals(field(sj, key, "algebra.s"), "algebra.s." + key));
    const auto idx = natural(field(vj, key, "algebra.v"), "algebra.v." + key);
    v.push_back(static_cast<std::uint32_t>(idx));
  }
  return TableAlgebra(std::move(base), std::move(s), std::move(v));
}

json to_json(const TableAlgebra& a) {
  json out = presheaf_fields(a.base());
  json s = json::object(), v = json::object();
  for (std::size_t m = 0; m < a.s_tables().size(); ++m) {
    s[std::to_string(m)] = a.s_tables()[m];
    v[std::to_string(m)] = a.v_indices()[m];
  }
  out["s"] = s;
  out["v"] = v;
  return out;
}

}  // namespace cf
