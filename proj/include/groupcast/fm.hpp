#pragma once

#include "groupcast/system.hpp"

namespace groupcast {

struct FmOptions {
  bool syntactic_prune = true;
  // Run an exact LP redundancy sweep after each variable (only possible when
  // every rhs is a plain constant).
  bool exact_prune_each_step = false;
  std::size_t row_cap = 200000;
};

// Exact projection: eliminates the given variables, preserving the feasible
// set over the remaining ones.  Equality row pairs involving a target
// variable are used as substitutions; remaining occurrences go through
// positive/negative row combination.  Variables are processed fewest-rows-
// touched first (ties by listed order).  Eliminating an absent variable just
// drops its column.
InequalitySystem fm_eliminate(const InequalitySystem& sys,
                              const std::vector<Var>& eliminate,
                              const FmOptions& opts = {});

// Substitutes x_v = 0 for each given variable and drops its column.  Rows
// that become 0 <= negative-constant are kept and flagged.
InequalitySystem substitute_zero(const InequalitySystem& sys,
                                 const std::vector<Var>& zero_vars);

// Minkowski sum of the region with the cone spanned by the given generators
// (vectors over sys.vars).  Lifts one nonnegative multiplier per generator
// and projects it away again.
InequalitySystem minkowski_sum_with_cone(
    const InequalitySystem& sys, const std::vector<std::vector<Rat>>& gens,
    const FmOptions& opts = {});

}  // namespace groupcast
