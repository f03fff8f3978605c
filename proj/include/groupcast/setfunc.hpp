#pragma once

#include "groupcast/orders.hpp"

namespace groupcast {

struct SetFunctionReport {
  bool ok = true;
  std::string detail;  // first violation, empty when ok
};

// Verifies normalization (f(empty) = 0), monotonicity along containment, and
// submodularity over a union/intersection-closed family of sets.  `value[i]`
// pairs with `fam.members[i]`.
SetFunctionReport polymatroid_check(const LatticeFamily& fam,
                                    const std::vector<double>& value,
                                    double tol);

// Verifies normalization, non-decreasing along containment, and
// supermodularity (the shape of the covering deficiency function).
SetFunctionReport contrapolymatroid_check(const LatticeFamily& fam,
                                          const std::vector<double>& value,
                                          double tol);

}  // namespace groupcast
