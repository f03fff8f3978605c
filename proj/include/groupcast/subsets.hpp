#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace groupcast {

// Thrown when a configurable cap (pmf cells, lattice size, row growth, ...)
// is exceeded.  CLI maps this to its own exit code.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxReceivers = 16;

// Nonempty subset of the receiver set [1:K], stored as a bitmask
// (bit j-1 set iff receiver j is a member).
struct SubsetLabel {
  std::uint32_t mask = 0;

  SubsetLabel() = default;
  explicit SubsetLabel(std::uint32_t m) : mask(m) {}

  static SubsetLabel from_members(const std::vector<int>& members);

  bool empty() const { return mask == 0; }
  bool contains(int j) const { return (mask >> (j - 1)) & 1u; }
  int size() const { return __builtin_popcount(mask); }
  bool subset_of(SubsetLabel o) const { return (mask & ~o.mask) == 0; }
  bool strict_subset_of(SubsetLabel o) const {
    return subset_of(o) && mask != o.mask;
  }
  int max_member() const;
  std::vector<int> members() const;

  // "124" for members {1,2,4}; "{1,12}" once members exceed one digit.
  std::string str() const;

  bool operator==(const SubsetLabel&) const = default;
};

// Canonical order used everywhere labels are enumerated or displayed:
// by cardinality, then lexicographically on the sorted member list.
bool canonical_less(SubsetLabel a, SubsetLabel b);

struct CanonicalLabelLess {
  bool operator()(SubsetLabel a, SubsetLabel b) const {
    return canonical_less(a, b);
  }
};

// A message index set: distinct nonempty subsets of [1:K], canonically sorted.
struct MessageIndexFamily {
  int K = 0;
  std::vector<SubsetLabel> labels;

  static MessageIndexFamily make(int K, std::vector<SubsetLabel> labels);
  // All 2^K - 1 nonempty subsets.
  static MessageIndexFamily full(int K);

  int size() const { return static_cast<int>(labels.size()); }
  int index_of(SubsetLabel s) const;  // -1 if absent
  bool contains(SubsetLabel s) const { return index_of(s) >= 0; }
  bool contains_all(const MessageIndexFamily& other) const;

  // Receiver window: labels of this family containing receiver j.
  std::vector<SubsetLabel> window(int j) const;
};

// Helpers on canonically sorted label vectors.
std::vector<SubsetLabel> sorted_labels(std::vector<SubsetLabel> v);
bool labels_contain(const std::vector<SubsetLabel>& v, SubsetLabel s);
std::vector<SubsetLabel> labels_union(const std::vector<SubsetLabel>& a,
                                      const std::vector<SubsetLabel>& b);
std::vector<SubsetLabel> labels_intersect(const std::vector<SubsetLabel>& a,
                                          const std::vector<SubsetLabel>& b);
std::vector<SubsetLabel> labels_minus(const std::vector<SubsetLabel>& a,
                                      const std::vector<SubsetLabel>& b);
bool labels_subset(const std::vector<SubsetLabel>& a,
                   const std::vector<SubsetLabel>& b);
std::string labels_str(const std::vector<SubsetLabel>& v);

}  // namespace groupcast
