#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cf {

/// Immutable first-order term: a variable x_i or an operator application.
/// Subterms are shared; copies are cheap.
class Term {
 public:
  static Term var(std::uint32_t index);
  static Term app(std::string op, std::vector<Term> args);

  bool is_var() const;
  std::uint32_t index() const;  // precondition: is_var()
  const std::string& op() const;
  std::span<const Term> args() const;

  std::size_t hash() const;
  /// 0 for variables, 1 + max depth of arguments for applications.
  std::uint32_t depth() const;
  /// 1 + the largest variable index occurring, 0 for closed terms.
  std::uint32_t scope() const;

  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Replaces every x_i by us[i] simultaneously. Unchanged subterms are shared.
/// Throws RangeError if t mentions a variable without a substituend.
Term substitute(const Term& t, std::span<const Term> us);

/// Parses the text produced by Term::to_string, e.g. "b(x0,e)".
Term parse_term(std::string_view text);

}  // namespace cf
