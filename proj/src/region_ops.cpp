#include "groupcast/region_ops.hpp"

#include <algorithm>

#include "groupcast/simplex.hpp"

namespace groupcast {

EntropyAssignment EntropyAssignment::from_doubles(
    const std::map<SymbolSet, double, SymbolSetLess>& v) {
  EntropyAssignment a;
  for (auto& [t, x] : v) a.values.emplace(t, rat_from_double(x));
  return a;
}

Rat EntropyAssignment::value_of(const EntropyExpr& e) const {
  Rat out = e.constant;
  for (auto& [t, c] : e.terms) {
    auto it = values.find(t);
    if (it == values.end())
      throw std::invalid_argument("assignment is missing H(" +
                                  sym_set_name(t) + ")");
    out += c * it->second;
  }
  return out;
}

InequalitySystem bind_assignment(const InequalitySystem& sys,
                                 const EntropyAssignment& assign) {
  InequalitySystem out;
  out.vars = sys.vars;
  out.rows.reserve(sys.rows.size());
  for (auto& row : sys.rows) {
    Inequality r;
    r.coeffs = row.coeffs;
    r.rhs = EntropyExpr::from_constant(assign.value_of(row.rhs));
    r.note = row.note;
    r.rhs_nonneg = r.rhs.constant >= 0;
    out.rows.push_back(std::move(r));
  }
  return out;
}

bool evaluate_point(const InequalitySystem& sys,
                    const EntropyAssignment& assign,
                    const std::vector<double>& point, double tol,
                    std::string* first_violation) {
  if (point.size() != sys.vars.size())
    throw std::invalid_argument("point dimension mismatch");
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    const auto& row = sys.rows[i];
    double lhs = 0;
    for (std::size_t j = 0; j < point.size(); ++j)
      lhs += rat_to_double(row.coeffs[j]) * point[j];
    double rhs = rat_to_double(assign.value_of(row.rhs));
    if (lhs > rhs + tol) {
      if (first_violation)
        *first_violation = "row " + std::to_string(i) + " (" + row.note +
                           "): lhs " + std::to_string(lhs) + " > rhs " +
                           std::to_string(rhs);
      return false;
    }
  }
  return true;
}

namespace {

void require_constant(const InequalitySystem& sys) {
  for (auto& row : sys.rows)
    if (!row.rhs.is_constant())
      throw std::invalid_argument(
          "operation requires numeric rhs; bind an assignment first");
}

std::pair<std::vector<std::vector<Rat>>, std::vector<Rat>> as_matrix(
    const InequalitySystem& sys) {
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  A.reserve(sys.rows.size());
  for (auto& row : sys.rows) {
    A.push_back(row.coeffs);
    b.push_back(row.rhs.constant);
  }
  return {std::move(A), std::move(b)};
}

}  // namespace

InequalitySystem remove_redundant_exact(const InequalitySystem& sys) {
  require_constant(sys);
  InequalitySystem cur = sys;
  cur.prune_syntactic();
  cur.sort_rows();
  std::size_t i = 0;
  while (i < cur.rows.size()) {
    // Relax row i, cap the objective one unit above its bound, and test
    // whether the rest already enforces it.
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    for (std::size_t k = 0; k < cur.rows.size(); ++k) {
      if (k == i) continue;
      A.push_back(cur.rows[k].coeffs);
      b.push_back(cur.rows[k].rhs.constant);
    }
    A.push_back(cur.rows[i].coeffs);
    b.push_back(cur.rows[i].rhs.constant + 1);
    auto res = lp::maximize(A, b, cur.rows[i].coeffs);
    bool redundant = false;
    if (res.status == lp::Status::Optimal)
      redundant = res.value <= cur.rows[i].rhs.constant;
    else if (res.status == lp::Status::Infeasible)
      redundant = true;  // the rest is already empty
    if (redundant)
      cur.rows.erase(cur.rows.begin() + static_cast<long>(i));
    else
      ++i;
  }
  return cur;
}

namespace {

// Reorders b's columns to match a's variable list; throws when the variable
// sets differ.
InequalitySystem align_to(const InequalitySystem& a,
                          const InequalitySystem& b) {
  if (a.vars.size() != b.vars.size())
    throw std::invalid_argument("region comparison over different variables");
  std::vector<int> perm(a.vars.size());
  for (std::size_t i = 0; i < a.vars.size(); ++i) {
    int j = b.var_index(a.vars[i]);
    if (j < 0)
      throw std::invalid_argument("region comparison over different variables: " +
                                  a.vars[i].name() + " missing");
    perm[i] = j;
  }
  InequalitySystem out;
  out.vars = a.vars;
  for (auto& row : b.rows) {
    Inequality r = row;
    for (std::size_t i = 0; i < perm.size(); ++i)
      r.coeffs[i] = row.coeffs[static_cast<std::size_t>(perm[i])];
    out.rows.push_back(std::move(r));
  }
  return out;
}

// One direction: finds a point of `inner` violating a row of `outer` by more
// than tol, or returns nullopt when inner is contained in outer + tol.
std::optional<std::pair<std::vector<Rat>, int>> containment_witness(
    const InequalitySystem& inner, const InequalitySystem& outer,
    const Rat& tol) {
  auto [A, b] = as_matrix(inner);
  for (std::size_t r = 0; r < outer.rows.size(); ++r) {
    const auto& row = outer.rows[r];
    auto res = lp::maximize(A, b, row.coeffs);
    if (res.status == lp::Status::Infeasible) return std::nullopt;
    if (res.status == lp::Status::Optimal) {
      if (res.value > row.rhs.constant + tol)
        return std::make_pair(res.point, static_cast<int>(r));
      continue;
    }
    // Unbounded along res.ray: march from the feasible base point until the
    // row is violated by a full unit beyond tolerance.
    Rat slope = 0, base_val = 0;
    for (std::size_t j = 0; j < row.coeffs.size(); ++j) {
      slope += row.coeffs[j] * res.ray[j];
      base_val += row.coeffs[j] * res.point[j];
    }
    if (slope <= 0) continue;  // this row does not block the ray
    Rat t = (row.rhs.constant + tol + 1 - base_val) / slope;
    if (t < 0) t = 0;
    std::vector<Rat> pt = res.point;
    for (std::size_t j = 0; j < pt.size(); ++j) pt[j] += t * res.ray[j];
    return std::make_pair(std::move(pt), static_cast<int>(r));
  }
  return std::nullopt;
}

}  // namespace

RegionCompare region_equal(const InequalitySystem& a,
                           const InequalitySystem& b,
                           const EntropyAssignment& assign, double tol) {
  InequalitySystem ba = bind_assignment(a, assign);
  InequalitySystem bb = align_to(ba, bind_assignment(b, assign));
  const Rat rtol = rat_from_double(tol);

  auto [Aa, bba] = as_matrix(ba);
  auto [Ab, bbb] = as_matrix(bb);
  bool a_feasible =
      lp::feasible_point(Aa, bba, ba.vars.size()).status == lp::Status::Optimal;
  bool b_feasible =
      lp::feasible_point(Ab, bbb, bb.vars.size()).status == lp::Status::Optimal;

  RegionCompare out;
  if (!a_feasible && !b_feasible) {
    out.equal = true;
    out.detail = "both regions empty";
    return out;
  }
  if (a_feasible != b_feasible) {
    auto res = lp::feasible_point(a_feasible ? Aa : Ab, a_feasible ? bba : bbb,
                                  ba.vars.size());
    out.equal = false;
    out.witness = res.point;
    out.witness_in_first = a_feasible;
    out.detail = std::string("one region is empty, the other is not (") +
                 (a_feasible ? "second" : "first") + " empty)";
    return out;
  }

  if (auto w = containment_witness(ba, bb, rtol)) {
    out.equal = false;
    out.witness = w->first;
    out.witness_in_first = true;
    out.violated_row = w->second;
    out.detail = "first region leaves the second: row " +
                 std::to_string(w->second) + " (" +
                 bb.rows[static_cast<std::size_t>(w->second)].note + ")";
    return out;
  }
  if (auto w = containment_witness(bb, ba, rtol)) {
    out.equal = false;
    out.witness = w->first;
    out.witness_in_first = false;
    out.violated_row = w->second;
    out.detail = "second region leaves the first: row " +
                 std::to_string(w->second) + " (" +
                 ba.rows[static_cast<std::size_t>(w->second)].note + ")";
    return out;
  }
  out.equal = true;
  return out;
}

}  // namespace groupcast
