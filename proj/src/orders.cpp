#include "groupcast/orders.hpp"

#include <algorithm>
#include <bit>

namespace groupcast {

namespace {

std::vector<std::vector<bool>> identity_relation(int n) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  return leq;
}

}  // namespace

SuperpositionOrder SuperpositionOrder::inclusion(MessageIndexFamily f) {
  SuperpositionOrder o;
  const int n = f.size();
  o.kind = OrderKind::Inclusion;
  o.leq = identity_relation(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (f.labels[i].subset_of(f.labels[j])) o.leq[i][j] = true;
  o.family = std::move(f);
  return o;
}

SuperpositionOrder SuperpositionOrder::discrete(MessageIndexFamily f) {
  SuperpositionOrder o;
  o.kind = OrderKind::Discrete;
  o.leq = identity_relation(f.size());
  o.family = std::move(f);
  return o;
}

SuperpositionOrder SuperpositionOrder::explicit_pairs(
    MessageIndexFamily f,
    const std::vector<std::pair<SubsetLabel, SubsetLabel>>& pairs) {
  SuperpositionOrder o;
  const int n = f.size();
  o.kind = OrderKind::Explicit;
  o.leq = identity_relation(n);
  for (auto& [a, b] : pairs) {
    int i = f.index_of(a), j = f.index_of(b);
    if (i < 0 || j < 0)
      throw std::invalid_argument("order pair mentions label outside family: " +
                                  a.str() + " <= " + b.str());
    if (!a.subset_of(b))
      throw std::invalid_argument(
          "order pair violates the superposition requirement (" + a.str() +
          " <= " + b.str() + " but " + a.str() + " is not a subset)");
    o.leq[i][j] = true;
  }
  // Transitive closure (Warshall).  Since every declared pair respects set
  // inclusion, so does the closure, and cycles are impossible.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (o.leq[i][k])
        for (int j = 0; j < n; ++j)
          if (o.leq[k][j]) o.leq[i][j] = true;
  o.family = std::move(f);
  return o;
}

bool SuperpositionOrder::less_equal(SubsetLabel a, SubsetLabel b) const {
  int i = family.index_of(a), j = family.index_of(b);
  if (i < 0 || j < 0)
    throw std::invalid_argument("label outside the ordered family");
  return leq[i][j];
}

std::vector<SubsetLabel> SuperpositionOrder::up_set_of(SubsetLabel a) const {
  int i = family.index_of(a);
  if (i < 0) throw std::invalid_argument("label outside the ordered family");
  std::vector<SubsetLabel> out;
  for (int j = 0; j < size(); ++j)
    if (leq[i][j]) out.push_back(family.labels[j]);
  return out;
}

std::vector<SubsetLabel> SuperpositionOrder::strict_up_set_of(
    SubsetLabel a) const {
  auto out = up_set_of(a);
  out.erase(std::remove(out.begin(), out.end(), a), out.end());
  return out;
}

std::vector<SubsetLabel> SuperpositionOrder::down_set_of(SubsetLabel a) const {
  int i = family.index_of(a);
  if (i < 0) throw std::invalid_argument("label outside the ordered family");
  std::vector<SubsetLabel> out;
  for (int j = 0; j < size(); ++j)
    if (leq[j][i]) out.push_back(family.labels[j]);
  return out;
}

SuperpositionOrder SuperpositionOrder::restrict_to(
    const std::vector<SubsetLabel>& subset) const {
  auto labs = sorted_labels(subset);
  std::vector<int> idx;
  for (auto s : labs) {
    int i = family.index_of(s);
    if (i < 0)
      throw std::invalid_argument("restriction label outside the family: " +
                                  s.str());
    idx.push_back(i);
  }
  SuperpositionOrder o;
  o.kind = kind;
  o.family = MessageIndexFamily::make(family.K, labs);
  const int m = static_cast<int>(idx.size());
  o.leq.assign(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) o.leq[i][j] = leq[idx[i]][idx[j]];
  return o;
}

std::vector<std::pair<SubsetLabel, SubsetLabel>>
SuperpositionOrder::strict_pairs() const {
  std::vector<std::pair<SubsetLabel, SubsetLabel>> out;
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (i != j && leq[i][j])
        out.emplace_back(family.labels[i], family.labels[j]);
  return out;
}

std::vector<SubsetLabel> up_closure(const SuperpositionOrder& o,
                                    const std::vector<SubsetLabel>& q) {
  std::vector<SubsetLabel> out;
  for (auto s : q) out = labels_union(out, o.up_set_of(s));
  return out;
}

std::vector<SubsetLabel> down_closure(const SuperpositionOrder& o,
                                      const std::vector<SubsetLabel>& q) {
  std::vector<SubsetLabel> out;
  for (auto s : q) out = labels_union(out, o.down_set_of(s));
  return out;
}

bool is_up_set(const SuperpositionOrder& o, const std::vector<SubsetLabel>& g) {
  for (auto s : g)
    if (!labels_subset(o.up_set_of(s), g)) return false;
  return true;
}

bool is_down_set(const SuperpositionOrder& o,
                 const std::vector<SubsetLabel>& g) {
  for (auto s : g)
    if (!labels_subset(o.down_set_of(s), g)) return false;
  return true;
}

std::vector<SubsetLabel> max_up_subset(const SuperpositionOrder& o,
                                       const std::vector<SubsetLabel>& g) {
  std::vector<SubsetLabel> out;
  for (auto s : g)
    if (labels_subset(o.up_set_of(s), g)) out.push_back(s);
  return sorted_labels(std::move(out));
}

int LatticeFamily::index_of(const std::vector<SubsetLabel>& m) const {
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i] == m) return static_cast<int>(i);
  return -1;
}

namespace {

// Down-sets via backtracking over the canonical linear extension (canonical
// label order is a linear extension: a < b in the order forces |a| < |b|).
// Each member is produced exactly once.
void down_sets_rec(const SuperpositionOrder& o, int pos, std::uint64_t chosen,
                   std::vector<std::uint64_t>& out, std::size_t cap) {
  const int n = o.size();
  if (pos == n) {
    if (out.size() >= cap)
      throw ResourceLimitError("down-set lattice exceeds cap of " +
                               std::to_string(cap) + " members");
    out.push_back(chosen);
    return;
  }
  down_sets_rec(o, pos + 1, chosen, out, cap);
  // labels[pos] may join only if everything below it is already in.
  for (int j = 0; j < n; ++j)
    if (j != pos && o.leq[j][pos] && !((chosen >> j) & 1)) return;
  down_sets_rec(o, pos + 1, chosen | (std::uint64_t{1} << pos), out, cap);
}

LatticeFamily materialize(const SuperpositionOrder& o,
                          std::vector<std::uint64_t> masks) {
  LatticeFamily fam;
  fam.ground = o.family;
  for (auto m : masks) {
    std::vector<SubsetLabel> member;
    for (int j = 0; j < o.size(); ++j)
      if ((m >> j) & 1) member.push_back(o.family.labels[j]);
    fam.members.push_back(std::move(member));
  }
  std::sort(fam.members.begin(), fam.members.end(),
            [](const std::vector<SubsetLabel>& a,
               const std::vector<SubsetLabel>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                                  b.end(), CanonicalLabelLess{});
            });
  return fam;
}

}  // namespace

LatticeFamily enumerate_down_sets(const SuperpositionOrder& o,
                                  std::size_t cap) {
  if (o.size() > 64)
    throw ResourceLimitError("lattice enumeration supports at most 64 labels");
  std::vector<std::uint64_t> masks;
  down_sets_rec(o, 0, 0, masks, cap);
  return materialize(o, std::move(masks));
}

LatticeFamily enumerate_up_sets(const SuperpositionOrder& o, std::size_t cap) {
  // Up-sets are complements of down-sets.
  if (o.size() > 64)
    throw ResourceLimitError("lattice enumeration supports at most 64 labels");
  std::vector<std::uint64_t> masks;
  down_sets_rec(o, 0, 0, masks, cap);
  const std::uint64_t all =
      o.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << o.size()) - 1;
  for (auto& m : masks) m = all & ~m;
  return materialize(o, std::move(masks));
}

}  // namespace groupcast
