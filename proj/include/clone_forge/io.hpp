#pragma once

// JSON file formats. Loaders validate every invariant and throw
// ValidationError (malformed data) or RangeError.

#include <filesystem>

#include "clone_forge/clone.hpp"
#include "clone_forge/subst_algebra.hpp"

namespace cf {

/// Parses a file; parse errors name the byte offset.
json read_json_file(const std::filesystem::path& path);

/// {"operators": {"b": 2, "e": 0}}
Signature signature_from_json(const json& j);
json to_json(const Signature& sig);

/// {"carrier": k, "operations": {"name": {"arity": n, "table": [...]}}}
FiniteAlgebra finite_algebra_from_json(const json& j);
json to_json(const FiniteAlgebra& alg);

/// {"bound": M, "carriers": [s0..sM], "actions": {"m->n": {"<table>": [images]}},
///  "labels": [[...]] (optional), "name": "..." (optional)}.
/// Maps are keyed by their comma-joined tables. Functoriality is verified.
TablePresheaf presheaf_from_json(const json& j);
json to_json(const TablePresheaf& p);

/// The presheaf format plus "s": {"m": [table]} and "v": {"m": index}.
TableAlgebra algebra_from_json(const json& j);
json to_json(const TableAlgebra& a);

}  // namespace cf
