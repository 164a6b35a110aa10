#include "ccdc/subsets.hpp"

#include <bit>

#include "ccdc/error.hpp"

namespace ccdc {
namespace {

constexpr int kMaxNodes = 64;

void check_label(int node) {
  if (node < 1 || node > kMaxNodes) {
    throw ParameterError("node label " + std::to_string(node) + " outside 1.." +
                         std::to_string(kMaxNodes));
  }
}

std::uint64_t bit(int node) { return std::uint64_t{1} << (node - 1); }

}  // namespace

NodeSet::NodeSet(std::initializer_list<int> nodes) {
  for (int n : nodes) {
    check_label(n);
    mask_ |= bit(n);
  }
}

NodeSet NodeSet::range(int first, int last) {
  NodeSet s;
  for (int n = first; n <= last; ++n) s = s.with(n);
  return s;
}

bool NodeSet::contains(int node) const {
  if (node < 1 || node > kMaxNodes) return false;
  return (mask_ & bit(node)) != 0;
}

int NodeSet::size() const { return std::popcount(mask_); }

std::vector<int> NodeSet::members() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

NodeSet NodeSet::with(int node) const {
  check_label(node);
  return from_mask(mask_ | bit(node));
}

NodeSet NodeSet::without(int node) const {
  check_label(node);
  return from_mask(mask_ & ~bit(node));
}

std::string NodeSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int n : members()) {
    if (!first) s += ",";
    s += std::to_string(n);
    first = false;
  }
  return s + "}";
}

std::strong_ordering operator<=>(const NodeSet& a, const NodeSet& b) {
  // Lexicographic on ascending members: the first differing position decides,
  // and the set holding the smaller label there sorts first.
  const std::uint64_t diff = a.mask_ ^ b.mask_;
  if (diff == 0) return std::strong_ordering::equal;
  const std::uint64_t lowest = diff & (~diff + 1);
  if (a.mask_ & lowest) {
    // a has the smaller element at the first difference, unless b has run out
    // of elements entirely at that point (b is a proper prefix of a).
    return (b.mask_ & ~(lowest - 1)) == 0 ? std::strong_ordering::greater
                                           : std::strong_ordering::less;
  }
  return (a.mask_ & ~(lowest - 1)) == 0 ? std::strong_ordering::less
                                         : std::strong_ordering::greater;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

std::vector<NodeSet> lex_subsets(int universe_size, int subset_size) {
  if (universe_size < 1 || universe_size > kMaxNodes || subset_size < 1 ||
      subset_size > universe_size) {
    throw ParameterError("lex_subsets: need 0 < subset_size <= universe_size <= 64, got (" +
                         std::to_string(universe_size) + ", " + std::to_string(subset_size) +
                         ")");
  }
  std::vector<NodeSet> out;
  out.reserve(static_cast<std::size_t>(binomial(universe_size, subset_size)));
  std::vector<int> pick(subset_size);
  for (int i = 0; i < subset_size; ++i) pick[i] = i + 1;
  while (true) {
    std::uint64_t mask = 0;
    for (int p : pick) mask |= bit(p);
    out.push_back(NodeSet::from_mask(mask));
    int i = subset_size - 1;
    while (i >= 0 && pick[i] == universe_size - subset_size + i + 1) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < subset_size; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

std::vector<NodeSet> lex_subsets_of(const NodeSet& base, int subset_size) {
  const auto m = base.members();
  std::vector<NodeSet> out;
  for (const NodeSet& local : lex_subsets(static_cast<int>(m.size()), subset_size)) {
    NodeSet s;
    for (int i : local.members()) s = s.with(m[static_cast<std::size_t>(i - 1)]);
    out.push_back(s);
  }
  return out;
}

std::int64_t lex_rank(const NodeSet& subset, int universe_size) {
  const auto m = subset.members();
  const int k = static_cast<int>(m.size());
  if (k == 0 || (!m.empty() && m.back() > universe_size)) {
    throw ParameterError("lex_rank: subset " + subset.to_string() + " not inside 1.." +
                         std::to_string(universe_size));
  }
  std::int64_t rank = 0;
  int prev = 0;
  for (int i = 0; i < k; ++i) {
    // Count subsets that agree on the first i members and pick a smaller one at i.
    for (int v = prev + 1; v < m[i]; ++v) rank += binomial(universe_size - v, k - i - 1);
    prev = m[i];
  }
  return rank;
}

}  // namespace ccdc
