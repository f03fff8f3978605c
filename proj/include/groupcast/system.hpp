#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "groupcast/expr.hpp"

namespace groupcast {

// A named coordinate of a rate system.
struct Var {
  enum class Kind : std::uint8_t {
    Rate = 0,      // R_S, a delivered message rate
    CoverRate,     // r_S, a covering excess rate
    Split,         // r_{S->S'}, a split rate
    RateHat,       // Rhat_S, a reconstructed rate
    RateTilde,     // Rtil_S, a codebook rate before binning
    Aux,           // generated multipliers (cone lifts etc.)
  };
  Kind kind = Kind::Rate;
  SubsetLabel a{}, b{};
  int idx = 0;

  static Var rate(SubsetLabel s) { return {Kind::Rate, s, {}, 0}; }
  static Var cover_rate(SubsetLabel s) { return {Kind::CoverRate, s, {}, 0}; }
  static Var split(SubsetLabel s, SubsetLabel t) {
    return {Kind::Split, s, t, 0};
  }
  static Var rate_hat(SubsetLabel s) { return {Kind::RateHat, s, {}, 0}; }
  static Var rate_tilde(SubsetLabel s) { return {Kind::RateTilde, s, {}, 0}; }
  static Var aux(int i) { return {Kind::Aux, {}, {}, i}; }

  std::string name() const;  // "R_12", "r_1", "r_1->12", "Rhat_12", ...
  static Var parse(const std::string& name);

  bool operator==(const Var&) const = default;
};

bool var_less(const Var& a, const Var& b);

// One row: coeffs . x <= rhs.
struct Inequality {
  std::vector<Rat> coeffs;
  EntropyExpr rhs;
  std::string note;
  // Provenance flag: the rhs is known to evaluate nonnegative for every
  // distribution (e.g. it is a sum of mutual informations).  Preserved by
  // nonnegative combinations; used to discard vacuous rows.
  bool rhs_nonneg = false;
};

struct InequalitySystem {
  std::vector<Var> vars;
  std::vector<Inequality> rows;

  int var_index(const Var& v) const;  // -1 if absent
  Inequality make_row(const std::vector<std::pair<Var, Rat>>& lhs,
                      EntropyExpr rhs, std::string note = "",
                      bool rhs_nonneg = false) const;
  void add_row(const std::vector<std::pair<Var, Rat>>& lhs, EntropyExpr rhs,
               std::string note = "", bool rhs_nonneg = false);
  // Adds lhs == rhs as a complementary row pair.
  void add_equality(const std::vector<std::pair<Var, Rat>>& lhs,
                    EntropyExpr rhs, std::string note = "");
  void add_nonneg(const Var& v, std::string note = "");

  bool row_is_nonneg_bound(int row) const;  // -x_i <= 0 for some i

  // Scales each row so coefficients are coprime integers; drops rows that
  // reduce to 0 <= rhs with rhs provably nonnegative.  Rows of the form
  // 0 <= negative constant (infeasibility witnesses) are kept.
  void normalize();
  // normalize, then dedupe identical rows and drop rows dominated by an
  // identical-coefficient row whose rhs is syntactically no larger.
  void prune_syntactic();
  // Deterministic row order (lexicographic over coefficients, then rhs).
  void sort_rows();

  // Every symbol set referenced by some rhs.
  std::vector<SymbolSet> referenced_symbol_sets() const;

  std::string str() const;  // human-readable rendering
};

}  // namespace groupcast
