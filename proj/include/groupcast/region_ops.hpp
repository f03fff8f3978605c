#pragma once

#include <map>
#include <optional>

#include "groupcast/system.hpp"

namespace groupcast {

// Exact numeric values for the joint entropies a system references.
struct EntropyAssignment {
  std::map<SymbolSet, Rat, SymbolSetLess> values;

  static EntropyAssignment from_doubles(
      const std::map<SymbolSet, double, SymbolSetLess>& v);

  bool has(const SymbolSet& t) const { return values.count(t) > 0; }
  // Evaluates a rational-linear entropy expression; throws on missing terms.
  Rat value_of(const EntropyExpr& e) const;
};

// Replaces every rhs by its numeric value under the assignment.
InequalitySystem bind_assignment(const InequalitySystem& sys,
                                 const EntropyAssignment& assign);

// Checks a point against every row at the given tolerance.  When
// first_violation is non-null it receives a description of the first
// violated row.
bool evaluate_point(const InequalitySystem& sys,
                    const EntropyAssignment& assign,
                    const std::vector<double>& point, double tol,
                    std::string* first_violation = nullptr);

// Irredundant subsystem defining the same set.  Requires every rhs constant
// (bind first).  Exact LP test per row, deterministic row order.
InequalitySystem remove_redundant_exact(const InequalitySystem& sys);

struct RegionCompare {
  bool equal = false;
  std::string detail;
  // On failure: a point inside one region violating a row of the other.
  std::optional<std::vector<Rat>> witness;
  bool witness_in_first = false;  // witness feasible for A (else for B)
  int violated_row = -1;          // row index in the other system
};

// Mutual inclusion of two bound regions over identical variable sets, within
// tolerance: every row of each system may be exceeded by at most tol on the
// other.  Unbounded directions produce a witness along the offending ray.
RegionCompare region_equal(const InequalitySystem& a,
                           const InequalitySystem& b,
                           const EntropyAssignment& assign, double tol);

}  // namespace groupcast
