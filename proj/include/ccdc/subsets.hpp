#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace ccdc {

// A set of node labels drawn from 1..64. Ordering is lexicographic on the
// ascending member list, matching the order produced by lex_subsets.
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(std::initializer_list<int> nodes);

  static NodeSet from_mask(std::uint64_t mask) {
    NodeSet s;
    s.mask_ = mask;
    return s;
  }
  static NodeSet range(int first, int last);

  bool contains(int node) const;
  int size() const;
  bool empty() const { return mask_ == 0; }
  std::uint64_t mask() const { return mask_; }
  std::vector<int> members() const;

  NodeSet with(int node) const;
  NodeSet without(int node) const;
  bool is_subset_of(const NodeSet& other) const { return (mask_ & ~other.mask_) == 0; }

  // "{1,2,4}"
  std::string to_string() const;

  friend bool operator==(const NodeSet& a, const NodeSet& b) { return a.mask_ == b.mask_; }
  friend std::strong_ordering operator<=>(const NodeSet& a, const NodeSet& b);

 private:
  std::uint64_t mask_ = 0;
};

std::int64_t binomial(int n, int k);

// All size-`subset_size` subsets of {1..universe_size} in lexicographic order.
std::vector<NodeSet> lex_subsets(int universe_size, int subset_size);

// Size-`subset_size` subsets of `base` in lexicographic order.
std::vector<NodeSet> lex_subsets_of(const NodeSet& base, int subset_size);

// Zero-based position of `subset` within lex_subsets(universe_size, subset.size()).
std::int64_t lex_rank(const NodeSet& subset, int universe_size);

}  // namespace ccdc
