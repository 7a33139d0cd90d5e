#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cf {

using json = nlohmann::json;

/// Bounds for checks over carriers that may be infinite.
struct Budget {
  std::size_t max_depth = 2;  // term depth for free clones
  std::size_t max_arity = 3;
  std::optional<std::uint64_t> sample_seed;
  // Instance blocks larger than this are sampled instead of enumerated.
  std::uint64_t sample_threshold = 100000;
};

struct LawResult {
  std::string name;
  bool passed = true;
  std::uint64_t checked = 0;  // instances actually evaluated
  std::uint64_t space = 0;    // instances in the budgeted space
  bool sampled = false;
  json witness;  // null unless failed

  std::string coverage() const { return sampled ? "sampled" : "exhaustive"; }
};

/// Outcome of a law checker: one entry per law, in a fixed order.
struct Report {
  std::string subject;
  std::vector<LawResult> laws;
  std::vector<std::string> notes;

  bool passed() const;
  bool has(std::string_view law) const;
  const LawResult& law(std::string_view name) const;
  std::vector<std::string> failed_laws() const;

  void append(const Report& other, std::string_view prefix = {});
  json to_json() const;
  std::string to_text() const;
};

/// Accumulates evaluations of one law over one or more product spaces.
///
/// Each call to `over` visits a product of index ranges. Blocks at or below
/// the budget's sample threshold are enumerated in mixed-radix order (last
/// coordinate fastest); larger blocks are sampled with a seeded generator.
/// Evaluation of a law stops at its first counterexample.
class LawCheck {
 public:
  // Returns a witness on failure, std::nullopt when the instance holds.
  using Instance = std::function<std::optional<json>(std::span<const std::size_t>)>;

  LawCheck(std::string name, const Budget& budget);

  void over(std::span<const std::size_t> sizes, const Instance& instance);
  void over(std::initializer_list<std::size_t> sizes, const Instance& instance) {
    std::vector<std::size_t> v(sizes);
    over(std::span<const std::size_t>(v), instance);
  }

  /// Records a single already-evaluated instance.
  void single(const std::function<std::optional<json>()>& instance);

  bool failed() const { return !result_.passed; }
  LawResult finish() && { return std::move(result_); }

 private:
  LawResult result_;
  std::uint64_t threshold_;
  std::uint64_t seed_;
  std::uint64_t block_ = 0;
};

/// Saturating product of block sizes.
std::uint64_t space_size(std::span<const std::size_t> sizes);

}  // namespace cf
