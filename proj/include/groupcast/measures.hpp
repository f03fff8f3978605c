#pragma once

#include <map>

#include "groupcast/expr.hpp"

namespace groupcast {

inline constexpr std::size_t kMaxJointCells = std::size_t{1} << 24;
inline constexpr std::size_t kMaxJointSymbols = 64;

// The symbols carried by a joint distribution, each with its alphabet size.
// Symbol order fixes the dense cell layout: the last symbol varies fastest.
struct VariableUniverse {
  std::vector<Symbol> symbols;
  std::vector<int> cardinalities;

  static VariableUniverse make(std::vector<Symbol> symbols,
                               std::vector<int> cardinalities);

  int size() const { return static_cast<int>(symbols.size()); }
  int index_of(const Symbol& s) const;  // -1 if absent
  std::size_t cell_count() const;
  // Mixed-radix cell index of a value tuple given in universe order.
  std::size_t cell_of(const std::vector<int>& value) const;
};

// A dense finite joint distribution.  Entropies are in bits and cached per
// symbol set.
struct JointDistribution {
  VariableUniverse universe;
  std::vector<double> p;

  // Validates the cell count and nonnegativity and that the mass sums to 1
  // within 1e-9.
  static JointDistribution make(VariableUniverse u, std::vector<double> p);
  // All-zero mass table to be filled in, then normalized via `finish`.
  static JointDistribution zeros(VariableUniverse u);
  void finish();  // validates as in make

  double& at(const std::vector<int>& value);
  double at(const std::vector<int>& value) const;

  JointDistribution marginal(const SymbolSet& keep) const;

  double entropy(const SymbolSet& s) const;
  // I(A ; B | C) from joint entropies.
  double cond_mutual_information(const SymbolSet& a, const SymbolSet& b,
                                 const SymbolSet& c = {}) const;
  double evaluate(const EntropyExpr& e) const;

 private:
  mutable std::map<SymbolSet, double, SymbolSetLess> entropy_cache_;
};

}  // namespace groupcast
