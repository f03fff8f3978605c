#include "groupcast/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace groupcast {

VariableUniverse VariableUniverse::make(std::vector<Symbol> symbols,
                                        std::vector<int> cardinalities) {
  if (symbols.size() != cardinalities.size())
    throw std::invalid_argument("universe: symbol/cardinality count mismatch");
  if (symbols.size() > kMaxJointSymbols)
    throw ResourceLimitError("universe: too many symbols");
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (cardinalities[i] < 1)
      throw std::invalid_argument("universe: cardinality of " +
                                  symbols[i].name() + " must be >= 1");
    for (std::size_t j = i + 1; j < symbols.size(); ++j)
      if (symbols[i] == symbols[j])
        throw std::invalid_argument("universe: duplicate symbol " +
                                    symbols[i].name());
  }
  VariableUniverse u;
  u.symbols = std::move(symbols);
  u.cardinalities = std::move(cardinalities);
  u.cell_count();  // enforce the cell cap up front
  return u;
}

int VariableUniverse::index_of(const Symbol& s) const {
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i] == s) return static_cast<int>(i);
  return -1;
}

std::size_t VariableUniverse::cell_count() const {
  std::size_t n = 1;
  for (int c : cardinalities) {
    if (n > kMaxJointCells / static_cast<std::size_t>(c))
      throw ResourceLimitError("joint distribution exceeds the cell cap");
    n *= static_cast<std::size_t>(c);
  }
  return n;
}

std::size_t VariableUniverse::cell_of(const std::vector<int>& value) const {
  if (value.size() != symbols.size())
    throw std::invalid_argument("cell_of: tuple arity mismatch");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (value[i] < 0 || value[i] >= cardinalities[i])
      throw std::out_of_range("cell_of: value out of range for " +
                              symbols[i].name());
    idx = idx * static_cast<std::size_t>(cardinalities[i]) +
          static_cast<std::size_t>(value[i]);
  }
  return idx;
}

JointDistribution JointDistribution::make(VariableUniverse u,
                                          std::vector<double> p) {
  if (p.size() != u.cell_count())
    throw std::invalid_argument("distribution: cell count mismatch");
  JointDistribution d;
  d.universe = std::move(u);
  d.p = std::move(p);
  d.finish();
  return d;
}

JointDistribution JointDistribution::zeros(VariableUniverse u) {
  JointDistribution d;
  d.p.assign(u.cell_count(), 0.0);
  d.universe = std::move(u);
  return d;
}

void JointDistribution::finish() {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0))
      throw std::invalid_argument("distribution: negative or NaN mass");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("distribution: mass sums to " +
                                std::to_string(sum));
  entropy_cache_.clear();
}

double& JointDistribution::at(const std::vector<int>& value) {
  return p[universe.cell_of(value)];
}

double JointDistribution::at(const std::vector<int>& value) const {
  return p[universe.cell_of(value)];
}

JointDistribution JointDistribution::marginal(const SymbolSet& keep) const {
  std::vector<int> kept_pos;
  std::vector<Symbol> kept_syms;
  std::vector<int> kept_cards;
  for (std::size_t i = 0; i < universe.symbols.size(); ++i) {
    const Symbol& s = universe.symbols[i];
    if (std::find(keep.begin(), keep.end(), s) != keep.end()) {
      kept_pos.push_back(static_cast<int>(i));
      kept_syms.push_back(s);
      kept_cards.push_back(universe.cardinalities[i]);
    }
  }
  if (kept_pos.size() != keep.size())
    throw std::invalid_argument("marginal: symbol not in universe");

  JointDistribution out =
      zeros(VariableUniverse::make(kept_syms, kept_cards));
  std::vector<int> tuple(universe.symbols.size(), 0);
  for (std::size_t cell = 0; cell < p.size(); ++cell) {
    if (p[cell] > 0.0) {
      std::size_t idx = 0;
      for (std::size_t k = 0; k < kept_pos.size(); ++k)
        idx = idx * static_cast<std::size_t>(kept_cards[k]) +
              static_cast<std::size_t>(tuple[kept_pos[k]]);
      out.p[idx] += p[cell];
    }
    for (int i = static_cast<int>(tuple.size()) - 1; i >= 0; --i) {
      if (++tuple[i] < universe.cardinalities[i]) break;
      tuple[i] = 0;
    }
  }
  return out;
}

double JointDistribution::entropy(const SymbolSet& s) const {
  if (s.empty()) return 0.0;
  auto it = entropy_cache_.find(s);
  if (it != entropy_cache_.end()) return it->second;

  JointDistribution marg = marginal(s);
  double h = 0.0;
  for (double q : marg.p)
    if (q > 0.0) h -= q * std::log2(q);
  entropy_cache_.emplace(s, h);
  return h;
}

double JointDistribution::cond_mutual_information(const SymbolSet& a,
                                                  const SymbolSet& b,
                                                  const SymbolSet& c) const {
  if (a.empty() || b.empty()) return 0.0;
  return entropy(sym_union(a, c)) + entropy(sym_union(b, c)) -
         entropy(sym_union(sym_union(a, b), c)) - entropy(c);
}

double JointDistribution::evaluate(const EntropyExpr& e) const {
  double v = rat_to_double(e.constant);
  for (const auto& [t, coeff] : e.terms) v += rat_to_double(coeff) * entropy(t);
  return v;
}

}  // namespace groupcast
