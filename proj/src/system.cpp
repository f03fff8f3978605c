#include "groupcast/system.hpp"

#include <algorithm>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace groupcast {

using boost::multiprecision::cpp_int;

std::string Var::name() const {
  switch (kind) {
    case Kind::Rate:
      return "R_" + a.str();
    case Kind::CoverRate:
      return "r_" + a.str();
    case Kind::Split:
      return "r_" + a.str() + "->" + b.str();
    case Kind::RateHat:
      return "Rhat_" + a.str();
    case Kind::RateTilde:
      return "Rtil_" + a.str();
    case Kind::Aux:
      return "t_" + std::to_string(idx);
  }
  return "?";
}

namespace {

SubsetLabel label_parse(const std::string& body) {
  std::vector<int> members;
  if (!body.empty() && body.front() == '{') {
    if (body.back() != '}')
      throw std::invalid_argument("bad label: " + body);
    std::string inner = body.substr(1, body.size() - 2);
    std::size_t pos = 0;
    while (pos < inner.size()) {
      auto comma = inner.find(',', pos);
      if (comma == std::string::npos) comma = inner.size();
      members.push_back(std::stoi(inner.substr(pos, comma - pos)));
      pos = comma + 1;
    }
  } else {
    for (char c : body) {
      if (c < '1' || c > '9') throw std::invalid_argument("bad label: " + body);
      members.push_back(c - '0');
    }
  }
  return SubsetLabel::from_members(members);
}

}  // namespace

Var Var::parse(const std::string& name) {
  auto bad = [&] { return std::invalid_argument("bad variable: " + name); };
  if (name.rfind("R_", 0) == 0) return rate(label_parse(name.substr(2)));
  if (name.rfind("Rhat_", 0) == 0) return rate_hat(label_parse(name.substr(5)));
  if (name.rfind("Rtil_", 0) == 0)
    return rate_tilde(label_parse(name.substr(5)));
  if (name.rfind("t_", 0) == 0) return aux(std::stoi(name.substr(2)));
  if (name.rfind("r_", 0) == 0) {
    auto arrow = name.find("->");
    if (arrow == std::string::npos)
      return cover_rate(label_parse(name.substr(2)));
    return split(label_parse(name.substr(2, arrow - 2)),
                 label_parse(name.substr(arrow + 2)));
  }
  throw bad();
}

bool var_less(const Var& a, const Var& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (!(a.a == b.a)) return canonical_less(a.a, b.a);
  if (!(a.b == b.b)) return canonical_less(a.b, b.b);
  return a.idx < b.idx;
}

int InequalitySystem::var_index(const Var& v) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == v) return static_cast<int>(i);
  return -1;
}

Inequality InequalitySystem::make_row(
    const std::vector<std::pair<Var, Rat>>& lhs, EntropyExpr rhs,
    std::string note, bool rhs_nonneg) const {
  Inequality row;
  row.coeffs.assign(vars.size(), Rat(0));
  for (auto& [v, c] : lhs) {
    int i = var_index(v);
    if (i < 0)
      throw std::invalid_argument("row references unknown variable " +
                                  v.name());
    row.coeffs[i] += c;
  }
  row.rhs = std::move(rhs);
  row.note = std::move(note);
  row.rhs_nonneg = rhs_nonneg || row.rhs.syntactically_nonneg();
  return row;
}

void InequalitySystem::add_row(const std::vector<std::pair<Var, Rat>>& lhs,
                               EntropyExpr rhs, std::string note,
                               bool rhs_nonneg) {
  rows.push_back(make_row(lhs, std::move(rhs), std::move(note), rhs_nonneg));
}

void InequalitySystem::add_equality(
    const std::vector<std::pair<Var, Rat>>& lhs, EntropyExpr rhs,
    std::string note) {
  add_row(lhs, rhs, note);
  std::vector<std::pair<Var, Rat>> neg;
  neg.reserve(lhs.size());
  for (auto& [v, c] : lhs) neg.emplace_back(v, -c);
  EntropyExpr nrhs = rhs;
  nrhs *= Rat(-1);
  add_row(neg, std::move(nrhs), std::move(note));
}

void InequalitySystem::add_nonneg(const Var& v, std::string note) {
  if (note.empty()) note = v.name() + " >= 0";
  add_row({{v, Rat(-1)}}, EntropyExpr{}, std::move(note), true);
}

bool InequalitySystem::row_is_nonneg_bound(int row) const {
  const auto& r = rows[row];
  if (!r.rhs.is_zero()) return false;
  int neg = 0;
  for (auto& c : r.coeffs) {
    if (c > 0) return false;
    if (c < 0) ++neg;
  }
  return neg == 1;
}

void InequalitySystem::normalize() {
  std::vector<Inequality> kept;
  for (auto& row : rows) {
    bool all_zero =
        std::all_of(row.coeffs.begin(), row.coeffs.end(),
                    [](const Rat& c) { return c == 0; });
    if (all_zero) {
      // 0 <= rhs: vacuous when rhs is provably nonnegative, an infeasibility
      // witness when constant-negative; keep anything else untouched.
      if (row.rhs_nonneg || row.rhs.syntactically_nonneg()) continue;
      if (row.rhs.is_constant() && row.rhs.constant < 0)
        row.note += " [infeasible]";
      kept.push_back(std::move(row));
      continue;
    }
    cpp_int den = 1;
    for (auto& c : row.coeffs) den = lcm(den, denominator(c));
    cpp_int num = 0;
    for (auto& c : row.coeffs) num = gcd(num, numerator(c * Rat(den)));
    Rat scale = Rat(den, num);  // num > 0 since some coeff is nonzero
    for (auto& c : row.coeffs) c *= scale;
    row.rhs *= scale;
    kept.push_back(std::move(row));
  }
  rows = std::move(kept);
}

namespace {

int expr_cmp(const EntropyExpr& a, const EntropyExpr& b) {
  auto ia = a.terms.begin();
  auto ib = b.terms.begin();
  SymbolSetLess less;
  for (; ia != a.terms.end() && ib != b.terms.end(); ++ia, ++ib) {
    if (less(ia->first, ib->first)) return -1;
    if (less(ib->first, ia->first)) return 1;
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
  }
  if (ia != a.terms.end()) return 1;
  if (ib != b.terms.end()) return -1;
  if (a.constant != b.constant) return a.constant < b.constant ? -1 : 1;
  return 0;
}

int row_cmp(const Inequality& a, const Inequality& b) {
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] != b.coeffs[i]) return a.coeffs[i] < b.coeffs[i] ? -1 : 1;
  }
  return expr_cmp(a.rhs, b.rhs);
}

}  // namespace

void InequalitySystem::prune_syntactic() {
  normalize();
  // Group rows with identical coefficients; within a group a row is dominated
  // when (other.rhs - row.rhs) is syntactically nonnegative.
  std::vector<bool> drop(rows.size(), false);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (drop[i]) continue;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (i == j || drop[j]) continue;
      if (rows[i].coeffs != rows[j].coeffs) continue;
      EntropyExpr diff = rows[j].rhs - rows[i].rhs;
      if (diff.syntactically_nonneg()) {
        // rhs_j >= rhs_i everywhere, so row j is implied by row i.
        // For exact duplicates keep the smaller index.
        if (diff.is_zero() && j < i) continue;
        drop[j] = true;
      }
    }
  }
  std::vector<Inequality> kept;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!drop[i]) kept.push_back(std::move(rows[i]));
  rows = std::move(kept);
}

void InequalitySystem::sort_rows() {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Inequality& a, const Inequality& b) {
                     return row_cmp(a, b) < 0;
                   });
}

std::vector<SymbolSet> InequalitySystem::referenced_symbol_sets() const {
  std::set<SymbolSet, SymbolSetLess> seen;
  for (auto& row : rows)
    for (auto& [t, c] : row.rhs.terms) seen.insert(t);
  return {seen.begin(), seen.end()};
}

std::string InequalitySystem::str() const {
  std::string out;
  for (auto& row : rows) {
    std::string lhs;
    for (std::size_t i = 0; i < row.coeffs.size(); ++i) {
      const Rat& c = row.coeffs[i];
      if (c == 0) continue;
      if (lhs.empty()) {
        if (c == -1)
          lhs += "-";
        else if (c != 1)
          lhs += rat_str(c) + "*";
      } else {
        lhs += (c < 0) ? " - " : " + ";
        Rat a = abs(c);
        if (a != 1) lhs += rat_str(a) + "*";
      }
      lhs += vars[i].name();
    }
    if (lhs.empty()) lhs = "0";
    out += lhs + " <= " + row.rhs.str();
    if (!row.note.empty()) out += "    [" + row.note + "]";
    out += "\n";
  }
  return out;
}

}  // namespace groupcast
