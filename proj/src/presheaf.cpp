#include "clone_forge/presheaf.hpp"

#include "clone_forge/errors.hpp"
#include "indexed_presheaf.hpp"

namespace cf {

void require_stage(const Presheaf& p, std::size_t stage) {
  if (auto b = p.bound(); b && stage > *b) {
    throw RangeError(p.name() + " has no stage " + std::to_string(stage) + " (bound " +
                     std::to_string(*b) + ")");
  }
}

namespace {

std::uint32_t atom_value(const Element& e) {
  const auto* a = std::get_if<Atom>(&e);
  if (!a) throw ShapeError("expected an atom element, got " + to_string(e));
  return a->value;
}

class Representable final : public Presheaf {
 public:
  std::string name() const override { return "V"; }
  Carrier carrier(std::size_t m, const Budget&) const override {
    Carrier c;
    for (std::size_t i = 0; i < m; ++i) c.elements.push_back(Atom{static_cast<std::uint32_t>(i)});
    return c;
  }
  Element act(const FinMap& f, const Element& x) const override {
    const auto i = atom_value(x);
    if (i >= f.dom()) throw RangeError("element " + std::to_string(i) + " not in V(" + std::to_string(f.dom()) + ")");
    return Atom{f(i)};
  }
};

const FinMap& id1() {
  static const FinMap id = FinMap::identity(1);
  return id;
}

}  // namespace

PresheafPtr representable_v() { return std::make_shared<Representable>(); }

// ---------------------------------------------------------------------------

TablePresheaf::TablePresheaf(std::vector<std::size_t> sizes, ActionTables actions,
                             std::vector<std::vector<std::string>> labels, std::string name)
    : sizes_(std::move(sizes)),
      actions_(std::move(actions)),
      labels_(std::move(labels)),
      name_(std::move(name)) {
  if (sizes_.empty()) throw ValidationError("table presheaf needs at least stage 0");
  const std::size_t bound = sizes_.size() - 1;
  if (actions_.size() != bound + 1) throw ValidationError("action tables do not cover every stage");
  for (std::size_t m = 0; m <= bound; ++m) {
    if (actions_[m].size() != bound + 1) throw ValidationError("action tables do not cover every stage");
    for (std::size_t n = 0; n <= bound; ++n) {
      const auto expected = enumerate_maps(m, n).size();
      if (actions_[m][n].size() != expected) {
        throw ValidationError("stage " + std::to_string(m) + "->" + std::to_string(n) + " has " +
                              std::to_string(actions_[m][n].size()) + " action tables, expected " +
                              std::to_string(expected));
      }
      for (const auto& images : actions_[m][n]) {
        if (images.size() != sizes_[m]) {
          throw ValidationError("action table " + std::to_string(m) + "->" + std::to_string(n) +
                                " has the wrong length");
        }
        for (auto y : images) {
          if (y >= sizes_[n]) {
            throw ValidationError("action table " + std::to_string(m) + "->" + std::to_string(n) +
                                  " has image " + std::to_string(y) + " outside stage " +
                                  std::to_string(n));
          }
        }
      }
    }
  }
  if (!labels_.empty()) {
    if (labels_.size() != sizes_.size()) throw ValidationError("labels do not cover every stage");
    for (std::size_t m = 0; m <= bound; ++m)
      if (labels_[m].size() != sizes_[m]) throw ValidationError("labels do not match carrier sizes");
  }
}

Carrier TablePresheaf::carrier(std::size_t m, const Budget&) const {
  require_stage(*this, m);
  Carrier c;
  for (std::size_t i = 0; i < sizes_[m]; ++i) c.elements.push_back(Atom{static_cast<std::uint32_t>(i)});
  return c;
}

Element TablePresheaf::act(const FinMap& f, const Element& x) const {
  require_stage(*this, f.dom());
  require_stage(*this, f.cod());
  const auto i = atom_value(x);
  if (i >= sizes_[f.dom()]) {
    throw RangeError("element " + std::to_string(i) + " not in stage " + std::to_string(f.dom()));
  }
  return Atom{actions_[f.dom()][f.cod()][f.rank()][i]};
}

TablePresheaf TablePresheaf::with_image(const FinMap& f, std::uint32_t x, std::uint32_t y) const {
  TablePresheaf copy = *this;
  copy.actions_.at(f.dom()).at(f.cod()).at(f.rank()).at(x) = y;
  return copy;
}

TablePresheaf tabulate(const Presheaf& p, std::size_t bound, const Budget& budget) {
  require_stage(p, bound);
  detail::IndexedPresheaf ip(p, bound, budget);
  std::vector<std::size_t> sizes;
  std::vector<std::vector<std::string>> labels;
  for (std::size_t m = 0; m <= bound; ++m) {
    sizes.push_back(ip.size(m));
    labels.emplace_back();
    for (const auto& e : ip.elements(m)) labels.back().push_back(to_string(e));
  }
  TablePresheaf::ActionTables actions(bound + 1);
  for (std::size_t m = 0; m <= bound; ++m) {
    actions[m].resize(bound + 1);
    for (std::size_t n = 0; n <= bound; ++n) {
      for (const auto& f : enumerate_maps(m, n)) {
        const auto& t = ip.table(f);
        std::vector<std::uint32_t> images;
        for (std::size_t i = 0; i < t.index.size(); ++i) {
          if (t.index[i] == detail::npos) {
            throw RangeError("act(" + f.to_string() + ", " + labels[m][i] +
                             ") leaves the enumerated carrier of stage " + std::to_string(n));
          }
          images.push_back(static_cast<std::uint32_t>(t.index[i]));
        }
        actions[m][n].push_back(std::move(images));
      }
    }
  }
  return TablePresheaf(std::move(sizes), std::move(actions), std::move(labels), p.name());
}

// ---------------------------------------------------------------------------

DeltaPresheaf::DeltaPresheaf(PresheafPtr base) : base_(std::move(base)) {
  if (auto b = base_->bound(); b && *b == 0) {
    throw RangeError("delta of " + base_->name() + " has no stages left (bound 0)");
  }
}

std::optional<std::size_t> DeltaPresheaf::bound() const {
  if (auto b = base_->bound()) return *b - 1;
  return std::nullopt;
}

Carrier DeltaPresheaf::carrier(std::size_t m, const Budget& budget) const {
  require_stage(*this, m);
  return base_->carrier(m + 1, budget);
}

Element DeltaPresheaf::act(const FinMap& f, const Element& x) const {
  return base_->act(coproduct(f, id1()), x);
}

PresheafPtr delta_apply(PresheafPtr p) { return std::make_shared<DeltaPresheaf>(std::move(p)); }

Element DeltaStructure::contraction(std::size_t m, const Element& x) const {
  return p_->act(coproduct(FinMap::identity(m), generators().c), x);
}

Element DeltaStructure::weakening(std::size_t m, const Element& x) const {
  return p_->act(coproduct(FinMap::identity(m), generators().w), x);
}

Element DeltaStructure::swap(std::size_t m, const Element& x) const {
  return p_->act(coproduct(FinMap::identity(m), generators().s), x);
}

DeltaStructure delta_structure(PresheafPtr p) { return DeltaStructure(std::move(p)); }

ElementPair Strengths::str(std::size_t m, const Element& a, const Element& y) const {
  return {a, q_->act(old_inclusion(m), y)};
}

ElementPair Strengths::str_left(std::size_t m, const Element& x, const Element& b) const {
  return {p_->act(old_inclusion(m), x), b};
}

std::array<Element, 4> Strengths::str_bullet(std::size_t m, const Element& a, const Element& x,
                                             const Element& y) const {
  auto [a2, y2] = str(m, a, y);
  return {a2, y2, x, y};
}

ElementPair Strengths::dist(std::size_t m, const Element& a, const Element& b) const {
  return {p_->act(coproduct(FinMap::identity(m), generators().s), a), b};
}

Strengths strengths(PresheafPtr p, PresheafPtr q) { return Strengths(std::move(p), std::move(q)); }

ElementPair ell(const ElementPair& p) { return p; }
ElementPair ell_inverse(const ElementPair& p) { return p; }

}  // namespace cf
