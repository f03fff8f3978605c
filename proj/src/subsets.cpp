#include "groupcast/subsets.hpp"

#include <algorithm>
#include <bit>

namespace groupcast {

SubsetLabel SubsetLabel::from_members(const std::vector<int>& members) {
  std::uint32_t m = 0;
  for (int j : members) {
    if (j < 1 || j > kMaxReceivers)
      throw std::invalid_argument("subset member out of range [1:" +
                                  std::to_string(kMaxReceivers) +
                                  "]: " + std::to_string(j));
    m |= 1u << (j - 1);
  }
  if (m == 0) throw std::invalid_argument("subset label must be nonempty");
  return SubsetLabel(m);
}

int SubsetLabel::max_member() const {
  if (mask == 0) return 0;
  return 32 - std::countl_zero(mask);
}

std::vector<int> SubsetLabel::members() const {
  std::vector<int> out;
  for (int j = 1; j <= kMaxReceivers; ++j)
    if (contains(j)) out.push_back(j);
  return out;
}

std::string SubsetLabel::str() const {
  auto ms = members();
  std::string s;
  if (max_member() <= 9) {
    for (int j : ms) s += static_cast<char>('0' + j);
    return s;
  }
  s = "{";
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(ms[i]);
  }
  s += "}";
  return s;
}

bool canonical_less(SubsetLabel a, SubsetLabel b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.members() < b.members();
}

MessageIndexFamily MessageIndexFamily::make(int K,
                                            std::vector<SubsetLabel> labels) {
  if (K < 1 || K > kMaxReceivers)
    throw std::invalid_argument("receiver count K out of range [1:" +
                                std::to_string(kMaxReceivers) + "]");
  if (labels.empty())
    throw std::invalid_argument("message index family must be nonempty");
  for (auto s : labels) {
    if (s.empty()) throw std::invalid_argument("empty label in family");
    if (s.max_member() > K)
      throw std::invalid_argument("label " + s.str() +
                                  " mentions a receiver beyond K=" +
                                  std::to_string(K));
  }
  std::sort(labels.begin(), labels.end(), CanonicalLabelLess{});
  for (std::size_t i = 1; i < labels.size(); ++i)
    if (labels[i] == labels[i - 1])
      throw std::invalid_argument("duplicate label " + labels[i].str());
  MessageIndexFamily f;
  f.K = K;
  f.labels = std::move(labels);
  return f;
}

MessageIndexFamily MessageIndexFamily::full(int K) {
  std::vector<SubsetLabel> all;
  for (std::uint32_t m = 1; m < (1u << K); ++m) all.push_back(SubsetLabel(m));
  return make(K, std::move(all));
}

int MessageIndexFamily::index_of(SubsetLabel s) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == s) return static_cast<int>(i);
  return -1;
}

bool MessageIndexFamily::contains_all(const MessageIndexFamily& other) const {
  for (auto s : other.labels)
    if (!contains(s)) return false;
  return true;
}

std::vector<SubsetLabel> MessageIndexFamily::window(int j) const {
  if (j < 1 || j > K) throw std::invalid_argument("receiver index out of range");
  std::vector<SubsetLabel> out;
  for (auto s : labels)
    if (s.contains(j)) out.push_back(s);
  return out;
}

std::vector<SubsetLabel> sorted_labels(std::vector<SubsetLabel> v) {
  std::sort(v.begin(), v.end(), CanonicalLabelLess{});
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool labels_contain(const std::vector<SubsetLabel>& v, SubsetLabel s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::vector<SubsetLabel> labels_union(const std::vector<SubsetLabel>& a,
                                      const std::vector<SubsetLabel>& b) {
  std::vector<SubsetLabel> out = a;
  for (auto s : b)
    if (!labels_contain(out, s)) out.push_back(s);
  return sorted_labels(std::move(out));
}

std::vector<SubsetLabel> labels_intersect(const std::vector<SubsetLabel>& a,
                                          const std::vector<SubsetLabel>& b) {
  std::vector<SubsetLabel> out;
  for (auto s : a)
    if (labels_contain(b, s)) out.push_back(s);
  return sorted_labels(std::move(out));
}

std::vector<SubsetLabel> labels_minus(const std::vector<SubsetLabel>& a,
                                      const std::vector<SubsetLabel>& b) {
  std::vector<SubsetLabel> out;
  for (auto s : a)
    if (!labels_contain(b, s)) out.push_back(s);
  return sorted_labels(std::move(out));
}

bool labels_subset(const std::vector<SubsetLabel>& a,
                   const std::vector<SubsetLabel>& b) {
  for (auto s : a)
    if (!labels_contain(b, s)) return false;
  return true;
}

std::string labels_str(const std::vector<SubsetLabel>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + "}";
}

}  // namespace groupcast
