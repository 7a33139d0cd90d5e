#include "clone_forge/clone.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "clone_forge/errors.hpp"

namespace cf {

namespace {

constexpr std::size_t kMaxLevelSize = 5'000'000;

bool looks_like_variable(const std::string& name) {
  return name.size() > 1 && name[0] == 'x' &&
         std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::vector<Term> as_terms(std::span<const Element> es) {
  std::vector<Term> out;
  out.reserve(es.size());
  for (const auto& e : es) {
    const auto* t = std::get_if<Term>(&e);
    if (!t) throw ShapeError("free clone expects term elements, got " + to_string(e));
    out.push_back(*t);
  }
  return out;
}

const Term& as_term(const Element& e) {
  const auto* t = std::get_if<Term>(&e);
  if (!t) throw ShapeError("free clone expects term elements, got " + to_string(e));
  return *t;
}

}  // namespace

void Signature::validate() const {
  for (const auto& [name, arity] : operators) {
    (void)arity;
    if (name.empty() || looks_like_variable(name) ||
        !std::all_of(name.begin(), name.end(), [](char c) {
          return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
        })) {
      throw ValidationError("invalid operator name '" + name + "'");
    }
  }
}

bool well_formed(const Signature& sig, const Term& t, std::size_t n) {
  if (t.is_var()) return t.index() < n;
  auto it = sig.operators.find(t.op());
  if (it == sig.operators.end() || it->second != t.args().size()) return false;
  return std::all_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return well_formed(sig, a, n); });
}

Term free_iota(std::size_t m, std::size_t i) {
  if (i >= m) {
    throw RangeError("projection index " + std::to_string(i) + " out of range for arity " +
                     std::to_string(m));
  }
  return Term::var(static_cast<std::uint32_t>(i));
}

Term free_mu(std::size_t m, std::size_t n, const Term& t, std::span<const Term> us) {
  if (us.size() != m) {
    throw ShapeError("mu_{" + std::to_string(m) + "," + std::to_string(n) + "} given " +
                     std::to_string(us.size()) + " substituends");
  }
  if (t.scope() > m) {
    throw RangeError("term " + t.to_string() + " is not in context " + std::to_string(m));
  }
  for (const auto& u : us) {
    if (u.scope() > n) {
      throw RangeError("substituend " + u.to_string() + " is not in context " + std::to_string(n));
    }
  }
  return substitute(t, us);
}

// ---------------------------------------------------------------------------
// FreeClone

FreeClone::FreeClone(Signature sig) : sig_(std::move(sig)) { sig_.validate(); }

std::string FreeClone::name() const {
  std::string out = "free{";
  bool first = true;
  for (const auto& [op, arity] : sig_.operators) {
    if (!first) out += ',';
    first = false;
    out += op + ":" + std::to_string(arity);
  }
  return out + "}";
}

const std::vector<Term>& FreeClone::level(std::size_t n, std::size_t d) const {
  std::lock_guard lock(mutex_);
  auto& levels = levels_[n];
  while (levels.size() <= d) {
    const std::size_t depth = levels.size();
    std::vector<Term> next;
    if (depth == 0) {
      for (std::size_t i = 0; i < n; ++i) next.push_back(Term::var(static_cast<std::uint32_t>(i)));
      levels.push_back(std::move(next));
      continue;
    }
    std::vector<Term> below;  // all terms of depth < depth, in order
    for (const auto& l : levels) below.insert(below.end(), l.begin(), l.end());
    const std::size_t newest = below.size() - levels.back().size();  // first index at depth-1
    for (const auto& [op, arity] : sig_.operators) {
      if (arity == 0) {
        if (depth == 1) next.push_back(Term::app(op, {}));
        continue;
      }
      if (below.empty()) continue;
      std::vector<std::size_t> idx(arity, 0);
      while (true) {
        if (std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return i >= newest; })) {
          std::vector<Term> args;
          args.reserve(arity);
          for (auto i : idx) args.push_back(below[i]);
          next.push_back(Term::app(op, std::move(args)));
          if (next.size() > kMaxLevelSize) {
            throw RangeError("term enumeration over " + std::to_string(n) +
                             " variables exceeds " + std::to_string(kMaxLevelSize) +
                             " terms at depth " + std::to_string(depth));
          }
        }
        std::size_t k = arity;
        while (k > 0) {
          --k;
          if (++idx[k] < below.size()) break;
          idx[k] = 0;
        }
        if (k == 0 && idx[0] == 0) break;
      }
    }
    levels.push_back(std::move(next));
  }
  return levels[d];
}

Carrier FreeClone::elements(std::size_t n, const Budget& budget) const {
  Carrier c;
  for (std::size_t d = 0; d <= budget.max_depth; ++d) {
    const auto& l = level(n, d);
    c.elements.insert(c.elements.end(), l.begin(), l.end());
  }
  c.complete = level(n, budget.max_depth + 1).empty();
  return c;
}

Element FreeClone::mu(std::size_t m, std::size_t n, const Element& t,
                      std::span<const Element> us) const {
  const auto terms = as_terms(us);
  return free_mu(m, n, as_term(t), terms);
}

Element FreeClone::iota(std::size_t m, std::size_t i) const { return free_iota(m, i); }

// ---------------------------------------------------------------------------
// Finite algebras

void FiniteAlgebra::validate() const {
  if (carrier == 0) throw ValidationError("finite algebra needs a non-empty carrier");
  for (const auto& [name, op] : operations) {
    std::size_t expected = 1;
    for (std::size_t i = 0; i < op.arity; ++i) expected *= carrier;
    if (op.table.size() != expected) {
      throw ValidationError("operation '" + name + "' has table length " +
                            std::to_string(op.table.size()) + ", expected " +
                            std::to_string(expected));
    }
    for (auto v : op.table) {
      if (v >= carrier) {
        throw ValidationError("operation '" + name + "' has result " + std::to_string(v) +
                              " outside the carrier");
      }
    }
  }
}

namespace {

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// Projection onto coordinate i of k^n, row-major with the last coordinate fastest.
FunctionTable projection_table(std::size_t k, std::size_t n, std::size_t i) {
  FunctionTable f;
  f.values.resize(power(k, n));
  const std::size_t stride = power(k, n - 1 - i);
  for (std::size_t x = 0; x < f.values.size(); ++x)
    f.values[x] = static_cast<std::uint32_t>((x / stride) % k);
  return f;
}

}  // namespace

FiniteClone::FiniteClone(FiniteAlgebra algebra, std::size_t max_arity)
    : algebra_(std::move(algebra)), max_arity_(max_arity) {
  algebra_.validate();
}

std::string FiniteClone::name() const {
  std::string out = "finite{k=" + std::to_string(algebra_.carrier);
  for (const auto& [op, o] : algebra_.operations) out += "," + op + ":" + std::to_string(o.arity);
  return out + "}";
}

const std::vector<Element>& FiniteClone::closure(std::size_t n) const {
  std::lock_guard lock(mutex_);
  if (auto it = closures_.find(n); it != closures_.end()) return it->second;

  const std::size_t k = algebra_.carrier;
  const std::size_t points = power(k, n);
  std::vector<FunctionTable> found;
  std::unordered_set<Element, ElementHash> seen;
  auto add = [&](FunctionTable f) {
    if (seen.insert(Element(f)).second) found.push_back(std::move(f));
  };
  for (std::size_t i = 0; i < n; ++i) add(projection_table(k, n, i));

  // Apply every operation to every tuple of known functions until nothing new
  // appears; tuples entirely inside the previous round were already tried.
  std::size_t done = 0;
  bool first_round = true;
  while (first_round || done < found.size()) {
    const std::size_t known = found.size();
    for (const auto& [name, op] : algebra_.operations) {
      (void)name;
      if (op.arity == 0) {
        if (first_round) add(FunctionTable{std::vector<std::uint32_t>(points, op.table[0])});
        continue;
      }
      if (known == 0) continue;
      std::vector<std::size_t> idx(op.arity, 0);
      while (true) {
        if (first_round ||
            std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return i >= done; })) {
          FunctionTable g;
          g.values.resize(points);
          for (std::size_t x = 0; x < points; ++x) {
            std::size_t row = 0;
            for (auto i : idx) row = row * k + found[i].values[x];
            g.values[x] = op.table[row];
          }
          add(std::move(g));
        }
        std::size_t pos = op.arity;
        while (pos > 0) {
          --pos;
          if (++idx[pos] < known) break;
          idx[pos] = 0;
        }
        if (pos == 0 && idx[0] == 0) break;
      }
    }
    done = known;
    first_round = false;
  }

  std::vector<Element> out(found.begin(), found.end());
  return closures_.emplace(n, std::move(out)).first->second;
}

Carrier FiniteClone::elements(std::size_t n, const Budget& /*budget*/) const {
  if (n > max_arity_) {
    throw RangeError("finite clone carrier C_" + std::to_string(n) + " exceeds max arity " +
                     std::to_string(max_arity_));
  }
  return Carrier{closure(n), true};
}

Element FiniteClone::mu(std::size_t m, std::size_t n, const Element& t,
                        std::span<const Element> us) const {
  const std::size_t k = algebra_.carrier;
  const auto* tt = std::get_if<FunctionTable>(&t);
  if (!tt || tt->values.size() != power(k, m) || us.size() != m) {
    throw ShapeError("finite clone mu_{" + std::to_string(m) + "," + std::to_string(n) +
                     "} given ill-shaped arguments");
  }
  const std::size_t points = power(k, n);
  std::vector<const FunctionTable*> fs;
  fs.reserve(m);
  for (const auto& u : us) {
    const auto* f = std::get_if<FunctionTable>(&u);
    if (!f || f->values.size() != points) {
      throw ShapeError("finite clone substituend is not a function of arity " + std::to_string(n));
    }
    fs.push_back(f);
  }
  FunctionTable out;
  out.values.resize(points);
  for (std::size_t x = 0; x < points; ++x) {
    std::size_t row = 0;
    for (const auto* f : fs) row = row * k + f->values[x];
    out.values[x] = tt->values[row];
  }
  return out;
}

Element FiniteClone::iota(std::size_t m, std::size_t i) const {
  if (i >= m) {
    throw RangeError("projection index " + std::to_string(i) + " out of range for arity " +
                     std::to_string(m));
  }
  return projection_table(algebra_.carrier, m, i);
}

ClonePtr finite_clone_of_algebra(const FiniteAlgebra& algebra, std::size_t max_arity) {
  return std::make_shared<FiniteClone>(algebra, max_arity);
}

// ---------------------------------------------------------------------------
// Built-in theories

namespace {

std::uint32_t atom_of(const Element& e) {
  const auto* a = std::get_if<Atom>(&e);
  if (!a) throw ShapeError("expected an atom element, got " + to_string(e));
  return a->value;
}

// C_n = ord n, mu(i, us) = us[i].
class InitialClone final : public Clone {
 public:
  std::string name() const override { return "initial"; }
  Carrier elements(std::size_t n, const Budget&) const override {
    Carrier c;
    for (std::size_t i = 0; i < n; ++i) c.elements.push_back(Atom{static_cast<std::uint32_t>(i)});
    return c;
  }
  Element mu(std::size_t m, std::size_t n, const Element& t,
             std::span<const Element> us) const override {
    const auto i = atom_of(t);
    if (us.size() != m || i >= m) throw ShapeError("initial clone mu given ill-shaped arguments");
    const auto& u = us[i];
    if (atom_of(u) >= n) throw RangeError("initial clone substituend outside ord " + std::to_string(n));
    return u;
  }
  Element iota(std::size_t m, std::size_t i) const override {
    if (i >= m) throw RangeError("projection index out of range");
    return Atom{static_cast<std::uint32_t>(i)};
  }
};

// Every carrier a singleton, except C_0 = {} when `empty_nullary`.
class SingletonClone final : public Clone {
 public:
  explicit SingletonClone(bool empty_nullary) : empty_nullary_(empty_nullary) {}
  std::string name() const override { return empty_nullary_ ? "arrow" : "terminal"; }
  Carrier elements(std::size_t n, const Budget&) const override {
    Carrier c;
    if (!(empty_nullary_ && n == 0)) c.elements.push_back(Atom{0});
    return c;
  }
  Element mu(std::size_t m, std::size_t n, const Element& t,
             std::span<const Element> us) const override {
    if (us.size() != m || atom_of(t) != 0) throw ShapeError("singleton clone mu given ill-shaped arguments");
    if (empty_nullary_ && (n == 0 || m == 0)) {
      throw RangeError("arrow clone has an empty carrier C_0");
    }
    return Atom{0};
  }
  Element iota(std::size_t m, std::size_t i) const override {
    if (i >= m) throw RangeError("projection index out of range");
    return Atom{0};
  }

 private:
  bool empty_nullary_;
};

}  // namespace

ClonePtr builtin_clone(std::string_view name) {
  if (name == "initial") return std::make_shared<InitialClone>();
  if (name == "terminal") return std::make_shared<SingletonClone>(false);
  if (name == "arrow") return std::make_shared<SingletonClone>(true);
  throw ValidationError("unknown built-in clone '" + std::string(name) + "'");
}

}  // namespace cf
