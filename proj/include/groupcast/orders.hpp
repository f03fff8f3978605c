#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "groupcast/subsets.hpp"

namespace groupcast {

enum class OrderKind { Inclusion, Discrete, Explicit };

// A superposition order on a message index family: a partial order where
// S < S' is only allowed when S is a strict subset of S'.  Larger labels
// (more public messages) sit higher; the conditional generating a label's
// codeword conditions on its strict up-set.
struct SuperpositionOrder {
  MessageIndexFamily family;
  OrderKind kind = OrderKind::Discrete;
  // leq[i][j] iff labels[i] <= labels[j].  Reflexive, antisymmetric,
  // transitive by construction.
  std::vector<std::vector<bool>> leq;

  static SuperpositionOrder inclusion(MessageIndexFamily f);
  static SuperpositionOrder discrete(MessageIndexFamily f);
  // Pairs (S, S') meaning S <= S'.  Each must satisfy S subseteq S'.
  // The reflexive-transitive closure is taken.
  static SuperpositionOrder explicit_pairs(
      MessageIndexFamily f,
      const std::vector<std::pair<SubsetLabel, SubsetLabel>>& pairs);

  int size() const { return family.size(); }
  bool less_equal(SubsetLabel a, SubsetLabel b) const;

  // {b in family : a <= b}; canonically sorted.
  std::vector<SubsetLabel> up_set_of(SubsetLabel a) const;
  // Strict version, i.e. the conditioning set for a's codeword.
  std::vector<SubsetLabel> strict_up_set_of(SubsetLabel a) const;
  std::vector<SubsetLabel> down_set_of(SubsetLabel a) const;

  // The induced order on a subset of the family.
  SuperpositionOrder restrict_to(const std::vector<SubsetLabel>& subset) const;

  // Every pair (S, S') with S < S', canonically ordered.
  std::vector<std::pair<SubsetLabel, SubsetLabel>> strict_pairs() const;
};

// Smallest up/down set containing the given labels.
std::vector<SubsetLabel> up_closure(const SuperpositionOrder& o,
                                    const std::vector<SubsetLabel>& q);
std::vector<SubsetLabel> down_closure(const SuperpositionOrder& o,
                                      const std::vector<SubsetLabel>& q);

bool is_up_set(const SuperpositionOrder& o, const std::vector<SubsetLabel>& g);
bool is_down_set(const SuperpositionOrder& o, const std::vector<SubsetLabel>& g);

// Largest up-set contained in g: the members of g whose up-set stays in g.
std::vector<SubsetLabel> max_up_subset(const SuperpositionOrder& o,
                                       const std::vector<SubsetLabel>& g);

// A family of subsets of a poset's label set, e.g. all of its down-sets.
// Members are canonically sorted label vectors; the member list is ordered
// by cardinality, then lexicographically.  Includes the empty member.
struct LatticeFamily {
  MessageIndexFamily ground;
  std::vector<std::vector<SubsetLabel>> members;

  int index_of(const std::vector<SubsetLabel>& m) const;  // -1 if absent
};

inline constexpr std::size_t kDefaultLatticeCap = std::size_t{1} << 20;

LatticeFamily enumerate_down_sets(const SuperpositionOrder& o,
                                  std::size_t cap = kDefaultLatticeCap);
LatticeFamily enumerate_up_sets(const SuperpositionOrder& o,
                                std::size_t cap = kDefaultLatticeCap);

}  // namespace groupcast
