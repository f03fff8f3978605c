#include "groupcast/fm.hpp"

#include <algorithm>

#include "groupcast/region_ops.hpp"

namespace groupcast {

namespace {

InequalitySystem drop_column(const InequalitySystem& sys, int col) {
  InequalitySystem out;
  out.vars = sys.vars;
  out.vars.erase(out.vars.begin() + col);
  out.rows.reserve(sys.rows.size());
  for (auto& row : sys.rows) {
    Inequality r = row;
    r.coeffs.erase(r.coeffs.begin() + col);
    out.rows.push_back(std::move(r));
  }
  return out;
}

bool exprs_negate(const EntropyExpr& a, const EntropyExpr& b) {
  EntropyExpr s = a;
  s += b;
  return s.is_zero();
}

// Looks for a complementary row pair encoding an equality that touches
// column v; returns {i, j} or {-1, -1}.
std::pair<int, int> find_equality_pair(const InequalitySystem& sys, int v) {
  std::vector<int> touching;
  for (std::size_t i = 0; i < sys.rows.size(); ++i)
    if (sys.rows[i].coeffs[v] != 0) touching.push_back(static_cast<int>(i));
  for (std::size_t a = 0; a < touching.size(); ++a)
    for (std::size_t b = a + 1; b < touching.size(); ++b) {
      const auto& ra = sys.rows[touching[a]];
      const auto& rb = sys.rows[touching[b]];
      bool neg = true;
      for (std::size_t k = 0; k < ra.coeffs.size() && neg; ++k)
        neg = (ra.coeffs[k] == -rb.coeffs[k]);
      if (neg && exprs_negate(ra.rhs, rb.rhs))
        return {touching[a], touching[b]};
    }
  return {-1, -1};
}

InequalitySystem eliminate_one(const InequalitySystem& sys, int v,
                               const FmOptions& opts) {
  auto [ei, ej] = find_equality_pair(sys, v);
  if (ei >= 0) {
    // Gaussian substitution by the equality row: every other row k gets
    // row_k - (c_k / a) * eq, which cancels column v exactly.
    const Inequality eq = sys.rows[ei];
    const Rat a = eq.coeffs[v];
    InequalitySystem out;
    out.vars = sys.vars;
    for (std::size_t k = 0; k < sys.rows.size(); ++k) {
      if (static_cast<int>(k) == ei || static_cast<int>(k) == ej) continue;
      Inequality r = sys.rows[k];
      const Rat c = r.coeffs[v];
      if (c != 0) {
        Rat f = c / a;
        for (std::size_t t = 0; t < r.coeffs.size(); ++t)
          r.coeffs[t] -= f * eq.coeffs[t];
        EntropyExpr scaled = eq.rhs;
        scaled *= f;
        r.rhs -= scaled;
        r.rhs_nonneg = r.rhs.syntactically_nonneg();
      }
      out.rows.push_back(std::move(r));
    }
    return drop_column(out, v);
  }

  InequalitySystem out;
  out.vars = sys.vars;
  std::vector<const Inequality*> pos, neg;
  for (auto& row : sys.rows) {
    if (row.coeffs[v] > 0)
      pos.push_back(&row);
    else if (row.coeffs[v] < 0)
      neg.push_back(&row);
    else
      out.rows.push_back(row);
  }
  if (out.rows.size() + pos.size() * neg.size() > opts.row_cap)
    throw ResourceLimitError(
        "row growth during elimination exceeds cap of " +
        std::to_string(opts.row_cap));
  for (auto* p : pos)
    for (auto* n : neg) {
      const Rat mp = -n->coeffs[v];  // > 0
      const Rat mn = p->coeffs[v];   // > 0
      Inequality r;
      r.coeffs.resize(sys.vars.size());
      for (std::size_t t = 0; t < r.coeffs.size(); ++t)
        r.coeffs[t] = mp * p->coeffs[t] + mn * n->coeffs[t];
      EntropyExpr rp = p->rhs;
      rp *= mp;
      EntropyExpr rn = n->rhs;
      rn *= mn;
      r.rhs = rp + rn;
      r.rhs_nonneg = (p->rhs_nonneg && n->rhs_nonneg) ||
                     r.rhs.syntactically_nonneg();
      out.rows.push_back(std::move(r));
    }
  return drop_column(out, v);
}

}  // namespace

InequalitySystem fm_eliminate(const InequalitySystem& sys,
                              const std::vector<Var>& eliminate,
                              const FmOptions& opts) {
  InequalitySystem cur = sys;
  std::vector<Var> todo = eliminate;
  for (auto& v : todo)
    if (cur.var_index(v) < 0)
      throw std::invalid_argument("cannot eliminate unknown variable " +
                                  v.name());
  while (!todo.empty()) {
    // Fewest rows touched first; ties by canonical variable order.
    std::size_t best = 0;
    std::size_t best_count = SIZE_MAX;
    for (std::size_t i = 0; i < todo.size(); ++i) {
      int col = cur.var_index(todo[i]);
      std::size_t count = 0;
      for (auto& row : cur.rows)
        if (row.coeffs[col] != 0) ++count;
      if (count < best_count ||
          (count == best_count && var_less(todo[i], todo[best]))) {
        best_count = count;
        best = i;
      }
    }
    int col = cur.var_index(todo[best]);
    todo.erase(todo.begin() + best);
    if (best_count == 0) {
      cur = drop_column(cur, col);
      continue;
    }
    cur = eliminate_one(cur, col, opts);
    if (opts.syntactic_prune) cur.prune_syntactic();
    if (opts.exact_prune_each_step) cur = remove_redundant_exact(cur);
  }
  if (opts.syntactic_prune) cur.prune_syntactic();
  return cur;
}

InequalitySystem substitute_zero(const InequalitySystem& sys,
                                 const std::vector<Var>& zero_vars) {
  InequalitySystem cur = sys;
  for (auto& v : zero_vars) {
    int col = cur.var_index(v);
    if (col < 0)
      throw std::invalid_argument("cannot substitute unknown variable " +
                                  v.name());
    cur = drop_column(cur, col);
  }
  cur.normalize();
  return cur;
}

InequalitySystem minkowski_sum_with_cone(
    const InequalitySystem& sys, const std::vector<std::vector<Rat>>& gens,
    const FmOptions& opts) {
  for (auto& g : gens)
    if (g.size() != sys.vars.size())
      throw std::invalid_argument("cone generator dimension mismatch");
  InequalitySystem lifted;
  lifted.vars = sys.vars;
  int next_aux = 0;
  for (const Var& v : sys.vars)
    if (v.kind == Var::Kind::Aux) next_aux = std::max(next_aux, v.idx + 1);
  std::vector<Var> aux;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Var t = Var::aux(next_aux + static_cast<int>(i));
    aux.push_back(t);
    lifted.vars.push_back(t);
  }
  const std::size_t n = sys.vars.size();
  // x in P + cone  iff  exists t >= 0 with  x - sum t_i g_i in P.
  for (auto& row : sys.rows) {
    Inequality r;
    r.coeffs = row.coeffs;
    r.coeffs.resize(n + gens.size(), Rat(0));
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Rat dot = 0;
      for (std::size_t j = 0; j < n; ++j) dot += row.coeffs[j] * gens[i][j];
      r.coeffs[n + i] = -dot;
    }
    r.rhs = row.rhs;
    r.note = row.note;
    r.rhs_nonneg = row.rhs_nonneg;
    lifted.rows.push_back(std::move(r));
  }
  for (auto& t : aux) lifted.add_nonneg(t);
  return fm_eliminate(lifted, aux, opts);
}

}  // namespace groupcast
