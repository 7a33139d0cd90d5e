#pragma once

// Checker-local cache: enumerated carriers with element indices and memoized
// action tables. Not thread-safe; each check owns its own instance.

#include <limits>
#include <map>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "clone_forge/presheaf.hpp"

namespace cf::detail {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct ActTable {
  std::vector<std::size_t> index;  // npos when the image leaves the carrier
  std::vector<Element> image;
};

class IndexedPresheaf {
 public:
  IndexedPresheaf(const Presheaf& p, std::size_t max_stage, const Budget& budget)
      : p_(p) {
    for (std::size_t m = 0; m <= max_stage; ++m) {
      Carrier c = p.carrier(m, budget);
      complete_.push_back(c.complete);
      std::unordered_map<Element, std::size_t, ElementHash> pos;
      for (std::size_t i = 0; i < c.elements.size(); ++i) pos.emplace(c.elements[i], i);
      elems_.push_back(std::move(c.elements));
      pos_.push_back(std::move(pos));
    }
  }

  const Presheaf& presheaf() const { return p_; }
  std::size_t max_stage() const { return elems_.size() - 1; }
  std::size_t size(std::size_t m) const { return elems_[m].size(); }
  bool complete(std::size_t m) const { return complete_[m]; }
  const std::vector<Element>& elements(std::size_t m) const { return elems_[m]; }
  const Element& at(std::size_t m, std::size_t i) const { return elems_[m][i]; }

  std::size_t find(std::size_t m, const Element& e) const {
    if (m >= pos_.size()) return npos;
    auto it = pos_[m].find(e);
    return it == pos_[m].end() ? npos : it->second;
  }

  const ActTable& table(const FinMap& f) const {
    const auto key = std::make_tuple(f.dom(), f.cod(), f.rank());
    auto it = tables_.find(key);
    if (it != tables_.end()) return it->second;
    ActTable t;
    const auto& src = elems_.at(f.dom());
    t.index.reserve(src.size());
    t.image.reserve(src.size());
    for (const auto& x : src) {
      t.image.push_back(p_.act(f, x));
      t.index.push_back(find(f.cod(), t.image.back()));
    }
    return tables_.emplace(key, std::move(t)).first->second;
  }

  /// Image of an arbitrary element, through the table when it is enumerated.
  Element act(const FinMap& f, const Element& x) const {
    const auto i = find(f.dom(), x);
    if (i != npos) return table(f).image[i];
    return p_.act(f, x);
  }

  bool eq(std::size_t m, const Element& a, const Element& b) const { return p_.eq(m, a, b); }

 private:
  const Presheaf& p_;
  std::vector<std::vector<Element>> elems_;
  std::vector<std::unordered_map<Element, std::size_t, ElementHash>> pos_;
  std::vector<bool> complete_;
  mutable std::map<std::tuple<std::size_t, std::size_t, std::uint64_t>, ActTable> tables_;
};

/// Stage-indexed maps of 𝔽 up to a bound, cached.
class MapCache {
 public:
  explicit MapCache(std::size_t bound) : bound_(bound) {
    maps_.resize(bound + 1);
    for (std::size_t m = 0; m <= bound; ++m)
      for (std::size_t n = 0; n <= bound; ++n) maps_[m].push_back(enumerate_maps(m, n));
  }
  const std::vector<FinMap>& maps(std::size_t m, std::size_t n) const { return maps_[m][n]; }

 private:
  std::size_t bound_;
  std::vector<std::vector<std::vector<FinMap>>> maps_;
};

/// A presheaf whose action on enumerated elements is memoized.
class CachedPresheaf final : public Presheaf {
 public:
  CachedPresheaf(PresheafPtr base, std::size_t max_stage, const Budget& budget)
      : base_(std::move(base)), index_(*base_, max_stage, budget) {}

  std::string name() const override { return base_->name(); }
  std::optional<std::size_t> bound() const override { return base_->bound(); }
  Carrier carrier(std::size_t m, const Budget& budget) const override {
    if (m <= index_.max_stage()) return Carrier{index_.elements(m), index_.complete(m)};
    return base_->carrier(m, budget);
  }
  Element act(const FinMap& f, const Element& x) const override {
    if (f.dom() <= index_.max_stage() && f.cod() <= index_.max_stage()) return index_.act(f, x);
    return base_->act(f, x);
  }
  bool eq(std::size_t m, const Element& a, const Element& b) const override {
    return base_->eq(m, a, b);
  }
  const IndexedPresheaf& index() const { return index_; }

 private:
  PresheafPtr base_;
  IndexedPresheaf index_;
};

inline void add_carrier_notes(Report& report, const IndexedPresheaf& ip) {
  for (std::size_t m = 0; m <= ip.max_stage(); ++m) {
    if (!ip.complete(m)) {
      report.notes.push_back(ip.presheaf().name() + "(" + std::to_string(m) + ") truncated to " +
                             std::to_string(ip.size(m)) + " enumerated elements");
    }
  }
}

}  // namespace cf::detail
