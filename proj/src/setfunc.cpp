#include "groupcast/setfunc.hpp"

#include <cmath>
#include <sstream>

namespace groupcast {

namespace {

std::string member_str(const std::vector<SubsetLabel>& m) {
  return "{" + labels_str(m) + "}";
}

// Shared walk over the lattice: checks f(empty) = 0, a direction of
// monotonicity, and one of the two modular inequalities.  `super` selects
// supermodular (f(A) + f(B) <= f(A|B) + f(A&B)) versus submodular.
SetFunctionReport check_shape(const LatticeFamily& fam,
                              const std::vector<double>& value, double tol,
                              bool nondecreasing, bool super) {
  SetFunctionReport rep;
  const auto& mem = fam.members;
  if (value.size() != mem.size())
    throw std::invalid_argument("set function: value count != member count");

  int empty_idx = fam.index_of({});
  if (empty_idx < 0) throw std::invalid_argument("set function: family lacks the empty set");
  if (std::abs(value[empty_idx]) > tol) {
    rep.ok = false;
    std::ostringstream os;
    os << "f(empty) = " << value[empty_idx] << " != 0";
    rep.detail = os.str();
    return rep;
  }

  std::size_t n = mem.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!labels_subset(mem[i], mem[j])) continue;
      double lo = nondecreasing ? value[i] : value[j];
      double hi = nondecreasing ? value[j] : value[i];
      if (lo > hi + tol) {
        rep.ok = false;
        std::ostringstream os;
        os << "monotonicity fails: f(" << member_str(mem[i]) << ") = " << value[i]
           << " vs f(" << member_str(mem[j]) << ") = " << value[j];
        rep.detail = os.str();
        return rep;
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto uni = labels_union(mem[i], mem[j]);
      auto inter = labels_intersect(mem[i], mem[j]);
      int ui = fam.index_of(uni);
      int ii = fam.index_of(inter);
      if (ui < 0 || ii < 0)
        throw std::invalid_argument("set function: family not closed under union/intersection");
      double lhs = value[i] + value[j];
      double rhs = value[ui] + value[ii];
      bool bad = super ? (lhs > rhs + tol) : (rhs > lhs + tol);
      if (bad) {
        rep.ok = false;
        std::ostringstream os;
        os << (super ? "supermodularity" : "submodularity") << " fails at "
           << member_str(mem[i]) << ", " << member_str(mem[j]) << ": f+f = " << lhs
           << ", f(union)+f(intersection) = " << rhs;
        rep.detail = os.str();
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace

SetFunctionReport polymatroid_check(const LatticeFamily& fam,
                                    const std::vector<double>& value,
                                    double tol) {
  return check_shape(fam, value, tol, /*nondecreasing=*/true, /*super=*/false);
}

SetFunctionReport contrapolymatroid_check(const LatticeFamily& fam,
                                          const std::vector<double>& value,
                                          double tol) {
  return check_shape(fam, value, tol, /*nondecreasing=*/true, /*super=*/true);
}

}  // namespace groupcast
