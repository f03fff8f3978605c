#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>
#include <vector>

#include "groupcast/subsets.hpp"

namespace groupcast {

using Rat = boost::multiprecision::cpp_rational;

// "p/q" or plain "p".
Rat rat_parse(const std::string& s);
std::string rat_str(const Rat& r);
// Doubles are dyadic, so this conversion is exact.  Throws on non-finite.
Rat rat_from_double(double x);
double rat_to_double(const Rat& r);

// A random-variable symbol: the time-sharing variable Q, an auxiliary U_S,
// the channel input X, or a receiver output Y_j.
struct Symbol {
  enum class Kind : std::uint8_t { Q = 0, U = 1, X = 2, Y = 3 };
  Kind kind = Kind::Q;
  SubsetLabel label{};  // U: the message label
  int receiver = 0;     // Y: the receiver index

  static Symbol q() { return Symbol{}; }
  static Symbol u(SubsetLabel s) { return Symbol{Kind::U, s, 0}; }
  static Symbol x() { return Symbol{Kind::X, SubsetLabel{}, 0}; }
  static Symbol y(int j) { return Symbol{Kind::Y, SubsetLabel{}, j}; }

  std::string name() const;  // "Q", "U_13", "X", "Y_2"
  static Symbol parse(const std::string& name);

  bool operator==(const Symbol&) const = default;
};

bool symbol_less(const Symbol& a, const Symbol& b);

struct SymbolLess {
  bool operator()(const Symbol& a, const Symbol& b) const {
    return symbol_less(a, b);
  }
};

// Canonically sorted, duplicate-free set of symbols.
using SymbolSet = std::vector<Symbol>;

SymbolSet sym_set(std::vector<Symbol> syms);
SymbolSet sym_union(const SymbolSet& a, const SymbolSet& b);
std::string sym_set_name(const SymbolSet& s);  // "Q,U_1,Y_2"
SymbolSet sym_set_parse(const std::string& s);

struct SymbolSetLess {
  bool operator()(const SymbolSet& a, const SymbolSet& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        SymbolLess{});
  }
};

// A rational-linear combination of joint entropies plus a rational constant.
// H(empty set) folds into the constant as zero.
struct EntropyExpr {
  std::map<SymbolSet, Rat, SymbolSetLess> terms;
  Rat constant = 0;

  static EntropyExpr from_constant(Rat c);
  static EntropyExpr entropy(const SymbolSet& t);

  bool is_constant() const { return terms.empty(); }
  bool is_zero() const { return terms.empty() && constant == 0; }

  void add_term(const SymbolSet& t, const Rat& coeff);
  EntropyExpr& operator+=(const EntropyExpr& o);
  EntropyExpr& operator-=(const EntropyExpr& o);
  EntropyExpr& operator*=(const Rat& c);
  friend EntropyExpr operator+(EntropyExpr a, const EntropyExpr& b) {
    return a += b;
  }
  friend EntropyExpr operator-(EntropyExpr a, const EntropyExpr& b) {
    return a -= b;
  }
  friend EntropyExpr operator*(EntropyExpr a, const Rat& c) { return a *= c; }

  // True when every entropy coefficient and the constant are nonnegative,
  // which forces the expression itself to be nonnegative.
  bool syntactically_nonneg() const;

  std::string str() const;  // canonical rendering, e.g. "H(U_1,Y_2) - H(U_1)"

  bool operator==(const EntropyExpr&) const = default;
};

// I(A; B | C) expanded into joint entropies:
// H(A u C) + H(B u C) - H(A u B u C) - H(C).  Empty A or B gives zero.
EntropyExpr mutual_information_expr(const SymbolSet& a, const SymbolSet& b,
                                    const SymbolSet& c = {});

// Conventional shorthand for I(U_B ; Y_j | U_C [, Q]).
EntropyExpr receiver_mi_expr(const std::vector<SubsetLabel>& b, int receiver,
                             const std::vector<SubsetLabel>& c,
                             bool with_time_sharing);

}  // namespace groupcast
