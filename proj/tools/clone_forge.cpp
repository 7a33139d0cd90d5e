// clone_forge: command-line front end for the clone / substitution-algebra checkers.

#include <chrono>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "clone_forge/corpus.hpp"
#include "clone_forge/errors.hpp"
#include "clone_forge/io.hpp"

using namespace cf;

namespace {

struct Config {
  std::string command;
  std::string input, builtin, signature, algebra;
  std::size_t bound = 3;
  std::size_t depth = 2;
  std::size_t max_arity = 3;
  std::optional<std::uint64_t> seed;
  std::uint64_t threshold = 100000;
  std::string format = "text";

  Budget budget() const {
    Budget b;
    b.max_depth = depth;
    b.max_arity = max_arity;
    b.sample_seed = seed;
    b.sample_threshold = threshold;
    return b;
  }

  json to_json() const {
    json j{{"bound", bound}, {"depth", depth}, {"max_arity", max_arity}, {"sample_threshold", threshold}};
    j["seed"] = seed ? json(*seed) : json(nullptr);
    for (const auto& [k, v] : {std::pair{"input", input}, {"builtin", builtin},
                               {"signature", signature}, {"algebra", algebra}}) {
      if (!v.empty()) j[k] = v;
    }
    return j;
  }
};

// Everything a command produces: law reports plus command-specific data.
struct Run {
  std::vector<Report> reports;
  json data = json::object();

  void add(Report r) { reports.push_back(std::move(r)); }
  bool passed() const {
    for (const auto& r : reports)
      if (!r.passed()) return false;
    return true;
  }
};

ClonePtr named_clone(const std::string& name, const Config& cfg) {
  if (name == "free") return std::make_shared<FreeClone>(binary_constant_signature());
  if (name == "meet") return finite_clone_of_algebra(meet_algebra(), cfg.max_arity);
  return builtin_clone(name);
}

ClonePtr load_clone(const Config& cfg) {
  if (!cfg.builtin.empty()) return named_clone(cfg.builtin, cfg);
  if (!cfg.signature.empty()) {
    return std::make_shared<FreeClone>(signature_from_json(read_json_file(cfg.signature)));
  }
  if (!cfg.algebra.empty()) {
    return finite_clone_of_algebra(finite_algebra_from_json(read_json_file(cfg.algebra)), cfg.max_arity);
  }
  if (!cfg.input.empty()) {
    const json j = read_json_file(cfg.input);
    if (j.is_object() && j.contains("operators")) return std::make_shared<FreeClone>(signature_from_json(j));
    if (j.is_object() && j.contains("operations")) {
      return finite_clone_of_algebra(finite_algebra_from_json(j), cfg.max_arity);
    }
    throw ValidationError(cfg.input + ": neither a signature nor a finite algebra");
  }
  throw ValidationError("no clone given: use --builtin, --signature, --algebra or --input");
}

AlgebraPtr load_algebra(const Config& cfg) {
  if (!cfg.input.empty()) return std::make_shared<TableAlgebra>(algebra_from_json(read_json_file(cfg.input)));
  if (!cfg.builtin.empty()) return s_functor(named_clone(cfg.builtin, cfg));
  throw ValidationError("no substitution algebra given: use --input or --builtin");
}

json carrier_sizes(const Clone& clone, const Budget& budget) {
  json sizes = json::array();
  for (std::size_t n = 0; n <= budget.max_arity; ++n) {
    const Carrier c = clone.elements(n, budget);
    sizes.push_back({{"arity", n}, {"size", c.elements.size()}, {"complete", c.complete}});
  }
  return sizes;
}

void cmd_check_f(const Config&, Run& run) {
  const Generators g = generators();
  run.add(check_symmetric_monoid(g.c, g.w, g.s));
}

void cmd_build_clone(const Config& cfg, Run& run) {
  const Budget budget = cfg.budget();
  const ClonePtr clone = load_clone(cfg);
  run.data["clone"] = clone->name();
  run.data["carriers"] = carrier_sizes(*clone, budget);
  run.add(clone_laws_check(*clone, budget));
}

void cmd_check_clone(const Config& cfg, Run& run) {
  const Budget budget = cfg.budget();
  const ClonePtr clone = load_clone(cfg);
  run.data["clone"] = clone->name();
  run.add(clone_laws_check(*clone, budget));
  run.add(theory_laws_check(*clone, std::min(cfg.bound, cfg.max_arity), budget));
}

void cmd_to_subst(const Config& cfg, Run& run) {
  const Budget budget = cfg.budget();
  const AlgebraPtr alg = s_functor(load_clone(cfg));
  run.data["algebra_name"] = alg->name();
  run.add(check_presentation(*alg, cfg.bound, budget));
  try {
    run.data["algebra"] = to_json(materialize(*alg, cfg.bound, budget));
  } catch (const RangeError& e) {
    run.data["algebra"] = nullptr;
    run.data["not_serialized"] = e.what();
  }
}

void cmd_to_clone(const Config& cfg, Run& run) {
  Budget budget = cfg.budget();
  const AlgebraPtr alg = load_algebra(cfg);
  const ClonePtr clone = c_functor(alg);
  if (auto b = alg->bound(); b && 2 * budget.max_arity > *b) {
    budget.max_arity = *b / 2;
    run.data["max_arity_used"] = budget.max_arity;
  }
  run.data["clone"] = clone->name();
  run.add(clone_laws_check(*clone, budget));
}

void cmd_check_subst(const Config& cfg, Run& run) {
  const Budget budget = cfg.budget();
  const AlgebraPtr alg = load_algebra(cfg);
  Report p = check_presentation(*alg, cfg.bound, budget);
  Report d = check_diagrams(*alg, cfg.bound, budget);
  Report agreement = presentation_agreement(p, d);
  run.add(std::move(p));
  run.add(std::move(d));
  run.add(std::move(agreement));
}

void cmd_roundtrip(const Config& cfg, Run& run) {
  const Budget budget = cfg.budget();
  const bool algebra_input = !cfg.input.empty() && read_json_file(cfg.input).contains("s");
  if (algebra_input) {
    run.add(roundtrip_alg(load_algebra(cfg), cfg.bound, budget));
  } else {
    const ClonePtr clone = load_clone(cfg);
    run.add(roundtrip_clone(clone, budget));
    run.add(roundtrip_alg(s_functor(clone), cfg.bound, budget));
  }
}

void cmd_enum_hom(const Config& cfg, Run& run) {
  const Budget budget = cfg.budget();
  const ClonePtr clone = load_clone(cfg);
  const std::size_t top = std::min(cfg.bound, cfg.max_arity);
  json homs = json::array();
  for (std::size_t m = 0; m <= top; ++m) {
    for (std::size_t n = 0; n <= top; ++n) {
      const auto count = theory_hom_count(*clone, m, n, budget);
      json entry{{"m", m}, {"n", n}, {"count", count},
                 {"complete", clone->elements(m, budget).complete || n == 0}};
      if (count <= 16) {
        json list = json::array();
        for (const auto& h : enumerate_theory_homs(*clone, m, n, budget)) list.push_back(to_json(h));
        entry["homs"] = list;
      }
      homs.push_back(entry);
    }
  }
  run.data["clone"] = clone->name();
  run.data["hom_sets"] = homs;
  run.add(theory_laws_check(*clone, top, budget));
}

// The acceptance checks on built-in structures, at the configured budget.
void cmd_demo(const Config& cfg, Run& run) {
  const Budget budget = cfg.budget();
  const std::size_t bound = cfg.bound;
  const auto clones = standard_clones(std::max(cfg.max_arity, bound));

  cmd_check_f(cfg, run);

  for (const auto& [name, clone] : clones) run.add(clone_laws_check(*clone, budget));

  {
    Report sizes;
    sizes.subject = "meet clone carrier sizes 2^n - 1";
    const auto meet = finite_clone_of_algebra(meet_algebra(), 4);
    LawCheck law("sizes", budget);
    for (std::size_t n = 1; n <= 4; ++n) {
      law.single([&]() -> std::optional<json> {
        const auto size = meet->elements(n, budget).elements.size();
        if (size == (std::size_t{1} << n) - 1) return std::nullopt;
        return json{{"n", n}, {"size", size}};
      });
    }
    sizes.laws.push_back(std::move(law).finish());
    run.add(std::move(sizes));
  }

  std::vector<NamedAlgebra> corpus = standard_algebras(std::max(cfg.max_arity, bound));
  for (const auto& [name, alg] : corpus) run.add(check_presentation(*alg, bound, budget));

  const auto rewired = rewired_variants(std::max(cfg.max_arity, bound));
  const auto tables = table_variants(bound);
  std::vector<NamedAlgebra> mutants = rewired;
  mutants.insert(mutants.end(), tables.begin(), tables.end());
  const auto two_point = two_point_variants(bound);
  mutants.insert(mutants.end(), two_point.begin(), two_point.end());
  if (bound >= 3) {
    const auto isolating = isolating_variants(bound);
    mutants.insert(mutants.end(), isolating.begin(), isolating.end());
  }
  corpus.insert(corpus.end(), mutants.begin(), mutants.end());
  {
    Report agreement;
    agreement.subject = "presentation agreement over " + std::to_string(corpus.size()) + " structures";
    for (const auto& [name, alg] : corpus) {
      const Report a = presentation_agreement(check_presentation(*alg, bound, budget),
                                              check_diagrams(*alg, bound, budget));
      LawResult r;
      r.name = name;
      r.space = r.checked = 1;
      r.passed = a.passed();
      if (!r.passed) r.witness = a.to_json();
      agreement.laws.push_back(std::move(r));
    }
    run.add(std::move(agreement));
  }

  run.add(check_delta_laws(representable_v(), bound, budget));
  for (const auto& [name, clone] : clones) {
    if (name == "initial" || name == "free") run.add(check_delta_laws(s_functor(clone), bound, budget));
  }

  for (const auto& [name, clone] : clones) {
    run.add(roundtrip_clone(clone, budget));
    run.add(roundtrip_alg(s_functor(clone), bound, budget));
  }

  const ClonePtr initial = builtin_clone("initial");
  const AlgebraPtr s_initial = s_functor(initial);
  for (const auto& [name, clone] : clones) {
    const AlgebraPtr target = s_functor(clone);
    const ElementFamily h = variable_family(target);
    run.add(hom_check(h, *s_initial, *target, bound, budget));
    run.add(s_on_hom(h, initial, clone, bound, budget));
  }

  run.add(mutation_sensitivity(mutants, bound, budget));
}

json run_json(const Config& cfg, const Run& run) {
  json reports = json::array();
  for (const auto& r : run.reports) reports.push_back(r.to_json());
  return json{{"command", cfg.command},
              {"config", cfg.to_json()},
              {"data", run.data},
              {"reports", reports},
              {"overall", run.passed() ? "pass" : "fail"}};
}

std::string render_text(const json& j) {
  std::ostringstream os;
  os << "command: " << j["command"].get<std::string>() << '\n';
  os << "config: " << j["config"].dump() << '\n';
  for (const auto& [k, v] : j["data"].items()) os << k << ": " << v.dump() << '\n';
  for (const auto& r : j["reports"]) {
    os << '\n' << r["subject"].get<std::string>() << ": "
       << (r["overall"] == "pass" ? "PASS" : "FAIL") << '\n';
    for (const auto& c : r["checks"]) {
      os << "  [" << (c["status"] == "pass" ? "pass" : "FAIL") << "] " << c["law"].get<std::string>()
         << " (" << c["checked"] << '/' << c["space"] << ", " << c["coverage"].get<std::string>()
         << ")\n";
      if (c.contains("witness")) os << "      witness: " << c["witness"].dump() << '\n';
    }
    for (const auto& n : r["notes"]) os << "  note: " << n.get<std::string>() << '\n';
  }
  os << "\noverall: " << j["overall"].get<std::string>() << '\n';
  return os.str();
}

int emit_error(const Config& cfg, const std::string& kind, const std::string& message) {
  std::cerr << "error: " << message << '\n';
  if (cfg.format == "json") {
    std::cout << json{{"command", cfg.command}, {"error", {{"kind", kind}, {"message", message}}},
                      {"overall", "error"}}
                     .dump(2)
              << '\n';
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Checks abstract clones, presheaves on finite ordinals and substitution algebras."};
  app.require_subcommand(1);
  app.add_option("--input", cfg.input, "Input JSON file");
  app.add_option("--builtin", cfg.builtin, "Built-in clone: initial, terminal, arrow, free, meet");
  app.add_option("--signature", cfg.signature, "Signature JSON file (free clone)");
  app.add_option("--algebra", cfg.algebra, "Finite algebra JSON file (clone of term operations)");
  app.add_option("--bound", cfg.bound, "Highest presheaf stage checked")->capture_default_str();
  app.add_option("--depth", cfg.depth, "Term depth for free clones")->capture_default_str();
  app.add_option("--max-arity", cfg.max_arity, "Highest clone arity checked")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for sampled checks");
  app.add_option("--sample-threshold", cfg.threshold,
                 "Instance blocks larger than this are sampled")->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  const std::vector<std::pair<std::string, std::string>> commands{
      {"check-f", "Symmetric monoid laws of (1, c, w, s) in finite ordinals"},
      {"free-clone", "Build the free clone of a signature and check the clone laws"},
      {"finite-clone", "Build the clone of a finite algebra and check the clone laws"},
      {"check-clone", "Clone laws and hom-set composition laws"},
      {"to-subst", "Substitution algebra of a clone, checked and serialized"},
      {"to-clone", "Clone of a substitution algebra, checked"},
      {"check-subst", "Both presentations of a substitution algebra and their agreement"},
      {"roundtrip", "Round trips through both translations"},
      {"enum-hom", "Hom-sets of the Lawvere theory of a clone"},
      {"demo", "All acceptance checks on the built-in structures"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->fallthrough()->callback([&cfg, name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (const char* env = std::getenv("CLONE_FORGE_FORMAT")) {
    const std::string f = env;
    if (f != "text" && f != "json") {
      std::cerr << "error: CLONE_FORGE_FORMAT must be text or json\n";
      return 2;
    }
    cfg.format = f;
  }

  const auto start = std::chrono::steady_clock::now();
  Run run;
  try {
    if (cfg.command == "check-f") cmd_check_f(cfg, run);
    else if (cfg.command == "free-clone" || cfg.command == "finite-clone") {
      if (!cfg.input.empty()) {
        (cfg.command == "free-clone" ? cfg.signature : cfg.algebra) = cfg.input;
        cfg.input.clear();
      }
      cmd_build_clone(cfg, run);
    }
    else if (cfg.command == "check-clone") cmd_check_clone(cfg, run);
    else if (cfg.command == "to-subst") cmd_to_subst(cfg, run);
    else if (cfg.command == "to-clone") cmd_to_clone(cfg, run);
    else if (cfg.command == "check-subst") cmd_check_subst(cfg, run);
    else if (cfg.command == "roundtrip") cmd_roundtrip(cfg, run);
    else if (cfg.command == "enum-hom") cmd_enum_hom(cfg, run);
    else if (cfg.command == "demo") cmd_demo(cfg, run);
  } catch (const ValidationError& e) {
    return emit_error(cfg, "validation", e.what());
  } catch (const RangeError& e) {
    return emit_error(cfg, "range", e.what());
  } catch (const ShapeError& e) {
    return emit_error(cfg, "shape", e.what());
  } catch (const json::exception& e) {
    return emit_error(cfg, "validation", e.what());
  }
  const json out = run_json(cfg, run);
  if (cfg.format == "json") {
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << render_text(out);
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "elapsed: " << elapsed << " s\n";
  return run.passed() ? 0 : 1;
}
