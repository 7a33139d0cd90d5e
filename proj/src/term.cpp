#include "clone_forge/term.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>

#include "clone_forge/errors.hpp"

namespace cf {

struct Term::Node {
  bool is_var = false;
  std::uint32_t index = 0;
  std::string op;
  std::vector<Term> args;
  std::size_t hash = 0;
  std::uint32_t depth = 0;
  std::uint32_t scope = 0;
};

namespace {

constexpr std::size_t kCachedVars = 64;

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::var(std::uint32_t index) {
  static const auto cache = [] {
    std::vector<Term> vars;
    vars.reserve(kCachedVars);
    for (std::uint32_t i = 0; i < kCachedVars; ++i) {
      auto n = std::make_shared<Node>();
      n->is_var = true;
      n->index = i;
      n->hash = mix(0x51ed27, i);
      n->scope = i + 1;
      vars.push_back(Term(std::move(n)));
    }
    return vars;
  }();
  if (index < kCachedVars) return cache[index];
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->index = index;
  n->hash = mix(0x51ed27, index);
  n->scope = index + 1;
  return Term(std::move(n));
}

Term Term::app(std::string op, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->hash = mix(std::hash<std::string>{}(op), args.size());
  n->depth = 1;
  for (const auto& a : args) {
    n->hash = mix(n->hash, a.hash());
    n->depth = std::max(n->depth, a.depth() + 1);
    n->scope = std::max(n->scope, a.scope());
  }
  n->op = std::move(op);
  n->args = std::move(args);
  return Term(std::move(n));
}

bool Term::is_var() const { return node_->is_var; }
std::uint32_t Term::index() const { return node_->index; }
const std::string& Term::op() const { return node_->op; }
std::span<const Term> Term::args() const { return node_->args; }
std::size_t Term::hash() const { return node_->hash; }
std::uint32_t Term::depth() const { return node_->depth; }
std::uint32_t Term::scope() const { return node_->scope; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.is_var != y.is_var) return false;
  if (x.is_var) return x.index == y.index;
  return x.op == y.op && x.args == y.args;
}

std::string Term::to_string() const {
  if (is_var()) return "x" + std::to_string(index());
  std::string out = op();
  if (args().empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < args().size(); ++i) {
    if (i) out += ',';
    out += args()[i].to_string();
  }
  out += ')';
  return out;
}

Term substitute(const Term& t, std::span<const Term> us) {
  if (t.is_var()) {
    if (t.index() >= us.size()) {
      throw RangeError("variable x" + std::to_string(t.index()) + " has no substituend (" +
                       std::to_string(us.size()) + " given)");
    }
    return us[t.index()];
  }
  if (t.scope() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(substitute(a, us));
    changed = changed || !(args.back() == a);
  }
  if (!changed) return t;
  return Term::app(t.op(), std::move(args));
}

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = term();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  Term term() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected identifier");
    std::string name(text_.substr(start, pos_ - start));
    if (name.size() > 1 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(),
                    [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      return Term::var(static_cast<std::uint32_t>(std::stoul(name.substr(1))));
    }
    std::vector<Term> args;
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
      } else {
        while (true) {
          args.push_back(term());
          skip_space();
          if (pos_ < text_.size() && text_[pos_] == ',') {
            ++pos_;
            continue;
          }
          if (pos_ < text_.size() && text_[pos_] == ')') {
            ++pos_;
            break;
          }
          fail("expected ',' or ')'");
        }
      }
    }
    return Term::app(std::move(name), std::move(args));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("term parse error at offset " + std::to_string(pos_) + ": " + what +
                          " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) { return TermParser(text).parse(); }

}  // namespace cf
