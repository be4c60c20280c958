#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace gmorita {

using json = nlohmann::ordered_json;

struct CheckEntry {
  std::string axiom;
  std::string law;  // the identity being checked, written out
  bool passed = true;
  json witness;     // null when passed
};

/// Outcome of an axiom checker: one entry per axiom, failures carry the first
/// basis-level witness found.
class ValidationReport {
 public:
  void record(std::string axiom, std::string law, std::optional<json> witness) {
    CheckEntry e{std::move(axiom), std::move(law), !witness.has_value(), witness ? std::move(*witness) : json()};
    entries_.push_back(std::move(e));
  }

  void pass(std::string axiom, std::string law) { record(std::move(axiom), std::move(law), std::nullopt); }
  void fail(std::string axiom, std::string law, json witness) { record(std::move(axiom), std::move(law), std::move(witness)); }

  void merge(const ValidationReport& other, const std::string& prefix = {}) {
    for (auto e : other.entries_) {
      e.axiom = prefix + e.axiom;
      entries_.push_back(std::move(e));
    }
  }

  bool passed() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const CheckEntry& e) { return e.passed; });
  }

  /// True iff an entry with this name exists and passed.
  bool passed(const std::string& axiom) const {
    const auto* e = find(axiom);
    return e != nullptr && e->passed;
  }

  const CheckEntry* find(const std::string& axiom) const {
    for (const auto& e : entries_)
      if (e.axiom == axiom) return &e;
    return nullptr;
  }

  const std::vector<CheckEntry>& entries() const { return entries_; }

  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& e : entries_)
      if (!e.passed) out.push_back(e.axiom);
    return out;
  }

  json to_json() const {
    json out = json::array();
    for (const auto& e : entries_) {
      out.push_back({{"axiom", e.axiom}, {"law", e.law}, {"status", e.passed ? "pass" : "fail"}, {"witness", e.witness}});
    }
    return out;
  }

  std::string summary() const {
    std::ostringstream os;
    for (const auto& e : entries_) {
      os << (e.passed ? "  pass  " : "  FAIL  ") << e.axiom;
      if (!e.passed) os << "  " << e.witness.dump();
      os << "\n";
    }
    return os.str();
  }

 private:
  std::vector<CheckEntry> entries_;
};

}  // namespace gmorita
