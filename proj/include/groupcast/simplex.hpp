#pragma once

#include <vector>

#include "groupcast/expr.hpp"

namespace groupcast::lp {

enum class Status { Optimal, Unbounded, Infeasible };

struct Result {
  Status status = Status::Infeasible;
  Rat value = 0;           // optimal objective (Optimal only)
  std::vector<Rat> point;  // Optimal: a maximizer; Unbounded: a feasible point
  std::vector<Rat> ray;    // Unbounded: improving recession direction
};

// maximize c.x subject to A x <= b, x free.  Exact rational arithmetic,
// two-phase dense simplex with Bland's rule (terminates, no cycling).
Result maximize(const std::vector<std::vector<Rat>>& A,
                const std::vector<Rat>& b, const std::vector<Rat>& c);

inline Result feasible_point(const std::vector<std::vector<Rat>>& A,
                             const std::vector<Rat>& b, std::size_t nvars) {
  return maximize(A, b, std::vector<Rat>(nvars, Rat(0)));
}

}  // namespace groupcast::lp
