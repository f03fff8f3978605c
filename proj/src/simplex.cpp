#include "groupcast/simplex.hpp"

#include <cstddef>
#include <stdexcept>

namespace groupcast::lp {

namespace {

// Dense tableau for min cost.x over equality rows with nonnegative variables.
struct Tableau {
  std::size_t m = 0, n = 0;
  std::vector<std::vector<Rat>> t;  // m rows of n coefficients + rhs
  std::vector<Rat> z;               // reduced-cost row + objective value
  std::vector<int> basis;           // basic column per row

  Rat& rhs(std::size_t i) { return t[i][n]; }

  void pivot(std::size_t row, std::size_t col) {
    Rat p = t[row][col];
    for (auto& v : t[row]) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || t[i][col] == 0) continue;
      Rat f = t[i][col];
      for (std::size_t j = 0; j <= n; ++j) t[i][j] -= f * t[row][j];
    }
    if (z[col] != 0) {
      Rat f = z[col];
      for (std::size_t j = 0; j <= n; ++j) z[j] -= f * t[row][j];
    }
    basis[row] = static_cast<int>(col);
  }

  // Bland's rule; allowed(col) masks out columns that may not enter.
  // Returns false at optimality; sets unbounded_col >= 0 when unbounded.
  bool step(const std::vector<bool>& allowed, long& unbounded_col) {
    unbounded_col = -1;
    std::size_t enter = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (allowed[j] && z[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == n) return false;
    std::size_t leave = m;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = rhs(i) / t[i][enter];
      if (leave == m || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m) {
      unbounded_col = static_cast<long>(enter);
      return false;
    }
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

Result maximize(const std::vector<std::vector<Rat>>& A,
                const std::vector<Rat>& b, const std::vector<Rat>& c) {
  const std::size_t m = A.size();
  const std::size_t nx = c.size();
  for (auto& row : A)
    if (row.size() != nx)
      throw std::invalid_argument("lp: ragged constraint matrix");
  if (b.size() != m) throw std::invalid_argument("lp: rhs size mismatch");

  // Columns: u (nx), v (nx), slack (m), artificial (appended per row when
  // needed).  x = u - v.
  const std::size_t nuv = 2 * nx;
  std::size_t ncols = nuv + m;

  Tableau tab;
  tab.m = m;
  std::vector<bool> negated(m, false);
  std::vector<std::size_t> art_col(m, SIZE_MAX);
  std::size_t n_art = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (b[i] < 0) {
      negated[i] = true;
      art_col[i] = ncols + n_art;
      ++n_art;
    }
  tab.n = ncols + n_art;
  tab.t.assign(m, std::vector<Rat>(tab.n + 1, Rat(0)));
  tab.basis.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    Rat sgn = negated[i] ? -1 : 1;
    for (std::size_t j = 0; j < nx; ++j) {
      tab.t[i][j] = sgn * A[i][j];
      tab.t[i][nx + j] = -sgn * A[i][j];
    }
    tab.t[i][nuv + i] = sgn;
    tab.rhs(i) = sgn * b[i];
    if (negated[i]) {
      tab.t[i][art_col[i]] = 1;
      tab.basis[i] = static_cast<int>(art_col[i]);
    } else {
      tab.basis[i] = static_cast<int>(nuv + i);
    }
  }

  // Phase 1: minimize the artificial sum.  Artificial columns cost one unit
  // each and may not re-enter the basis once driven out.
  if (n_art > 0) {
    tab.z.assign(tab.n + 1, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
      if (negated[i])
        for (std::size_t j = 0; j <= tab.n; ++j) tab.z[j] -= tab.t[i][j];
    for (std::size_t j = ncols; j < tab.n; ++j) tab.z[j] += 1;
    std::vector<bool> allow_real(tab.n, true);
    for (std::size_t j = ncols; j < tab.n; ++j) allow_real[j] = false;
    long ub = -1;
    while (tab.step(allow_real, ub)) {
    }
    // -z[n] is the attained artificial sum.
    if (tab.z[tab.n] != 0) return {Status::Infeasible, 0, {}, {}};
    // Drive remaining artificials out of the basis; rows that are zero over
    // all real columns are redundant and get dropped.
    std::vector<std::size_t> drop;
    for (std::size_t i = 0; i < tab.m; ++i) {
      if (static_cast<std::size_t>(tab.basis[i]) < ncols) continue;
      std::size_t col = ncols;
      for (std::size_t j = 0; j < ncols; ++j)
        if (tab.t[i][j] != 0) {
          col = j;
          break;
        }
      if (col < ncols)
        tab.pivot(i, col);
      else
        drop.push_back(i);
    }
    for (auto it = drop.rbegin(); it != drop.rend(); ++it) {
      tab.t.erase(tab.t.begin() + static_cast<long>(*it));
      tab.basis.erase(tab.basis.begin() + static_cast<long>(*it));
      --tab.m;
    }
  }

  // Phase 2 objective: min -(c.u - c.v).
  tab.z.assign(tab.n + 1, Rat(0));
  for (std::size_t j = 0; j < nx; ++j) {
    tab.z[j] = -c[j];
    tab.z[nx + j] = c[j];
  }
  for (std::size_t i = 0; i < tab.m; ++i) {
    std::size_t bc = static_cast<std::size_t>(tab.basis[i]);
    if (tab.z[bc] != 0) {
      Rat f = tab.z[bc];
      for (std::size_t j = 0; j <= tab.n; ++j) tab.z[j] -= f * tab.t[i][j];
    }
  }
  std::vector<bool> allowed(tab.n, true);
  for (std::size_t j = ncols; j < tab.n; ++j) allowed[j] = false;

  long ub = -1;
  while (tab.step(allowed, ub)) {
  }

  auto extract_point = [&] {
    std::vector<Rat> col_val(tab.n, Rat(0));
    for (std::size_t i = 0; i < tab.m; ++i)
      col_val[static_cast<std::size_t>(tab.basis[i])] = tab.rhs(i);
    std::vector<Rat> x(nx);
    for (std::size_t j = 0; j < nx; ++j) x[j] = col_val[j] - col_val[nx + j];
    return x;
  };

  if (ub >= 0) {
    Result res;
    res.status = Status::Unbounded;
    res.point = extract_point();
    std::vector<Rat> dir(tab.n, Rat(0));
    dir[static_cast<std::size_t>(ub)] = 1;
    for (std::size_t i = 0; i < tab.m; ++i)
      dir[static_cast<std::size_t>(tab.basis[i])] =
          -tab.t[i][static_cast<std::size_t>(ub)];
    res.ray.assign(nx, Rat(0));
    for (std::size_t j = 0; j < nx; ++j) res.ray[j] = dir[j] - dir[nx + j];
    return res;
  }

  Result res;
  res.status = Status::Optimal;
  res.point = extract_point();
  Rat obj = 0;
  for (std::size_t j = 0; j < nx; ++j) obj += c[j] * res.point[j];
  res.value = obj;
  return res;
}

}  // namespace groupcast::lp
