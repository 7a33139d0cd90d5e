#include "clone_forge/law_check.hpp"

#include <limits>
#include <random>
#include <sstream>

#include "clone_forge/errors.hpp"

namespace cf {

std::uint64_t space_size(std::span<const std::size_t> sizes) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (auto s : sizes) {
    if (s == 0) return 0;
    if (total > kMax / s) {
      total = kMax;
    } else {
      total *= s;
    }
  }
  return total;
}

bool Report::passed() const {
  for (const auto& l : laws)
    if (!l.passed) return false;
  return true;
}

bool Report::has(std::string_view name) const {
  for (const auto& l : laws)
    if (l.name == name) return true;
  return false;
}

const LawResult& Report::law(std::string_view name) const {
  for (const auto& l : laws)
    if (l.name == name) return l;
  throw RangeError("report '" + subject + "' has no law named '" + std::string(name) + "'");
}

std::vector<std::string> Report::failed_laws() const {
  std::vector<std::string> out;
  for (const auto& l : laws)
    if (!l.passed) out.push_back(l.name);
  return out;
}

void Report::append(const Report& other, std::string_view prefix) {
  for (auto l : other.laws) {
    if (!prefix.empty()) l.name = std::string(prefix) + l.name;
    laws.push_back(std::move(l));
  }
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

json Report::to_json() const {
  json out;
  out["subject"] = subject;
  out["overall"] = passed() ? "pass" : "fail";
  json checks = json::array();
  for (const auto& l : laws) {
    json c;
    c["law"] = l.name;
    c["status"] = l.passed ? "pass" : "fail";
    c["checked"] = l.checked;
    c["space"] = l.space;
    c["coverage"] = l.coverage();
    if (!l.passed) c["witness"] = l.witness;
    checks.push_back(std::move(c));
  }
  out["checks"] = std::move(checks);
  out["notes"] = notes;
  return out;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << subject << ": " << (passed() ? "PASS" : "FAIL") << '\n';
  for (const auto& l : laws) {
    os << "  [" << (l.passed ? "pass" : "FAIL") << "] " << l.name << " (" << l.checked << '/'
       << l.space << ", " << l.coverage() << ")\n";
    if (!l.passed) os << "      witness: " << l.witness.dump() << '\n';
  }
  for (const auto& n : notes) os << "  note: " << n << '\n';
  return os.str();
}

LawCheck::LawCheck(std::string name, const Budget& budget)
    : threshold_(budget.sample_threshold), seed_(budget.sample_seed.value_or(0)) {
  result_.name = std::move(name);
}

void LawCheck::single(const std::function<std::optional<json>()>& instance) {
  result_.space += 1;
  if (failed()) return;
  result_.checked += 1;
  if (auto w = instance()) {
    result_.passed = false;
    result_.witness = std::move(*w);
  }
}

void LawCheck::over(std::span<const std::size_t> sizes, const Instance& instance) {
  const std::uint64_t total = space_size(sizes);
  const std::uint64_t block = block_++;
  result_.space = total > std::numeric_limits<std::uint64_t>::max() - result_.space
                      ? std::numeric_limits<std::uint64_t>::max()
                      : result_.space + total;
  if (failed() || total == 0) return;

  std::vector<std::size_t> idx(sizes.size(), 0);
  auto run = [&]() -> bool {
    result_.checked += 1;
    if (auto w = instance(idx)) {
      result_.passed = false;
      result_.witness = std::move(*w);
      return false;
    }
    return true;
  };

  if (total <= threshold_) {
    for (std::uint64_t n = 0; n < total; ++n) {
      if (!run()) return;
      for (std::size_t k = idx.size(); k-- > 0;) {
        if (++idx[k] < sizes[k]) break;
        idx[k] = 0;
      }
    }
    return;
  }

  result_.sampled = true;
  std::mt19937_64 rng(seed_ ^ (0x9e3779b97f4a7c15ULL * (block + 1)));
  for (std::uint64_t n = 0; n < threshold_; ++n) {
    for (std::size_t k = 0; k < idx.size(); ++k)
      idx[k] = std::uniform_int_distribution<std::size_t>(0, sizes[k] - 1)(rng);
    if (!run()) return;
  }
}

}  // namespace cf
