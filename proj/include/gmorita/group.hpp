#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "gmorita/error.hpp"

namespace gmorita {

/// Index of an element inside a FiniteGroup; index 0 is the identity.
struct GroupElt {
  std::uint32_t index = 0;

  friend auto operator<=>(const GroupElt&, const GroupElt&) = default;
};

/// A finite group given by its Cayley table. Validated on construction.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<std::uint32_t>>{{0}}, {"1"}) {}

  /// Validates the table; throws NotAssociative / NoIdentity / NoInverse /
  /// ShapeMismatch naming the offending elements.
  explicit FiniteGroup(const std::vector<std::vector<std::uint32_t>>& table, std::vector<std::string> labels = {})
      : order_(static_cast<std::uint32_t>(table.size())), labels_(std::move(labels)) {
    if (order_ == 0) throw Error(ErrorCode::ShapeMismatch, "group table is empty");
    table_.reserve(std::size_t{order_} * order_);
    for (std::uint32_t i = 0; i < order_; ++i) {
      if (table[i].size() != order_) throw Error(ErrorCode::ShapeMismatch, "group table row " + std::to_string(i) + " has wrong length");
      for (auto v : table[i]) {
        if (v >= order_) throw Error(ErrorCode::ShapeMismatch, "group table entry out of range");
        table_.push_back(v);
      }
    }
    if (labels_.empty()) {
      for (std::uint32_t i = 0; i < order_; ++i) labels_.push_back(i == 0 ? "1" : "g" + std::to_string(i));
    }
    if (labels_.size() != order_) throw Error(ErrorCode::ShapeMismatch, "label count differs from group order");

    for (std::uint32_t i = 0; i < order_; ++i) {
      if (at(0, i) != i || at(i, 0) != i) {
        throw Error(ErrorCode::NoIdentity, "index 0 is not a two-sided identity (fails at " + labels_[i] + ")");
      }
    }
    for (std::uint32_t a = 0; a < order_; ++a)
      for (std::uint32_t b = 0; b < order_; ++b)
        for (std::uint32_t c = 0; c < order_; ++c) {
          if (at(at(a, b), c) != at(a, at(b, c))) {
            throw Error(ErrorCode::NotAssociative,
                        "(" + labels_[a] + "*" + labels_[b] + ")*" + labels_[c] + " != " + labels_[a] + "*(" + labels_[b] + "*" + labels_[c] + ")");
          }
        }
    inverse_.assign(order_, 0);
    for (std::uint32_t a = 0; a < order_; ++a) {
      bool found = false;
      for (std::uint32_t b = 0; b < order_ && !found; ++b) {
        if (at(a, b) == 0 && at(b, a) == 0) {
          inverse_[a] = b;
          found = true;
        }
      }
      if (!found) throw Error(ErrorCode::NoInverse, "element " + labels_[a] + " has no two-sided inverse");
    }
  }

  std::uint32_t order() const { return order_; }
  GroupElt identity() const { return {0}; }

  GroupElt mul(GroupElt a, GroupElt b) const { return {at(a.index, b.index)}; }
  GroupElt inv(GroupElt a) const { return {inverse_.at(a.index)}; }

  const std::string& label(GroupElt g) const { return labels_.at(g.index); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::vector<GroupElt> elements() const {
    std::vector<GroupElt> out;
    for (std::uint32_t i = 0; i < order_; ++i) out.push_back({i});
    return out;
  }

  std::vector<std::vector<std::uint32_t>> table() const {
    std::vector<std::vector<std::uint32_t>> t(order_);
    for (std::uint32_t i = 0; i < order_; ++i) t[i].assign(table_.begin() + i * order_, table_.begin() + (i + 1) * order_);
    return t;
  }

  bool is_abelian() const {
    for (std::uint32_t a = 0; a < order_; ++a)
      for (std::uint32_t b = 0; b < order_; ++b)
        if (at(a, b) != at(b, a)) return false;
    return true;
  }

  /// Same multiplication table; labels are cosmetic.
  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  std::uint32_t at(std::uint32_t a, std::uint32_t b) const { return table_[std::size_t{a} * order_ + b]; }

  std::uint32_t order_ = 1;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::string> labels_;
};

inline FiniteGroup make_group(const std::vector<std::vector<std::uint32_t>>& table, std::vector<std::string> labels = {}) {
  return FiniteGroup(table, std::move(labels));
}

/// g h g⁻¹: the action of g on degrees.
inline GroupElt conjugate(const FiniteGroup& G, GroupElt g, GroupElt h) { return G.mul(G.mul(g, h), G.inv(g)); }

struct Subgroup {
  FiniteGroup parent;
  std::vector<GroupElt> members;  // sorted

  bool contains(GroupElt g) const { return std::binary_search(members.begin(), members.end(), g); }
  std::size_t order() const { return members.size(); }
  bool is_whole_group() const { return members.size() == parent.order(); }
  bool is_trivial() const { return members.size() == 1; }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (auto g : members) out.push_back(parent.label(g));
    return out;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.parent == b.parent && a.members == b.members; }
};

/// Wraps a member set as a Subgroup after checking identity, products and inverses.
inline Subgroup stabilizer_closure(const FiniteGroup& G, std::vector<GroupElt> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (auto g : members) {
    if (g.index >= G.order()) throw Error(ErrorCode::NotClosed, "element index out of range");
  }
  auto has = [&](GroupElt g) { return std::binary_search(members.begin(), members.end(), g); };
  if (!has(G.identity())) throw Error(ErrorCode::NotClosed, "identity missing");
  for (auto a : members) {
    if (!has(G.inv(a))) throw Error(ErrorCode::NotClosed, "inverse of " + G.label(a) + " missing");
    for (auto b : members) {
      if (!has(G.mul(a, b))) throw Error(ErrorCode::NotClosed, G.label(a) + "*" + G.label(b) + " missing");
    }
  }
  return Subgroup{G, std::move(members)};
}

/// Cyclic group of order n with labels 1, g, g^2, ...
inline FiniteGroup cyclic_group(std::uint32_t n, const std::string& generator = "g") {
  std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
  std::vector<std::string> labels;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    labels.push_back(i == 0 ? "1" : i == 1 ? generator : generator + "^" + std::to_string(i));
  }
  return FiniteGroup(t, labels);
}

}  // namespace gmorita
