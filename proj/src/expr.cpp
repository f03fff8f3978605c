#include "groupcast/expr.hpp"

#include <algorithm>
#include <cmath>

namespace groupcast {

Rat rat_parse(const std::string& s) {
  auto bad = [&] {
    return std::invalid_argument("malformed rational: '" + s + "'");
  };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos)
      return Rat(boost::multiprecision::cpp_int(s));
    boost::multiprecision::cpp_int num(s.substr(0, slash));
    boost::multiprecision::cpp_int den(s.substr(slash + 1));
    if (den == 0) throw bad();
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw bad();
  }
}

std::string rat_str(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rat rat_from_double(double x) {
  if (!std::isfinite(x))
    throw std::invalid_argument("cannot convert non-finite double to rational");
  return Rat(x);
}

double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

std::string Symbol::name() const {
  switch (kind) {
    case Kind::Q:
      return "Q";
    case Kind::U:
      return "U_" + label.str();
    case Kind::X:
      return "X";
    case Kind::Y:
      return "Y_" + std::to_string(receiver);
  }
  return "?";
}

Symbol Symbol::parse(const std::string& name) {
  if (name == "Q") return q();
  if (name == "X") return x();
  if (name.rfind("Y_", 0) == 0) {
    int j = std::stoi(name.substr(2));
    if (j < 1 || j > kMaxReceivers)
      throw std::invalid_argument("bad receiver symbol: " + name);
    return y(j);
  }
  if (name.rfind("U_", 0) == 0) {
    std::string body = name.substr(2);
    std::vector<int> members;
    if (!body.empty() && body.front() == '{') {
      if (body.back() != '}')
        throw std::invalid_argument("bad label symbol: " + name);
      body = body.substr(1, body.size() - 2);
      std::size_t pos = 0;
      while (pos < body.size()) {
        auto comma = body.find(',', pos);
        if (comma == std::string::npos) comma = body.size();
        members.push_back(std::stoi(body.substr(pos, comma - pos)));
        pos = comma + 1;
      }
    } else {
      for (char c : body) {
        if (c < '1' || c > '9')
          throw std::invalid_argument("bad label symbol: " + name);
        members.push_back(c - '0');
      }
    }
    return u(SubsetLabel::from_members(members));
  }
  throw std::invalid_argument("unknown symbol: " + name);
}

bool symbol_less(const Symbol& a, const Symbol& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  switch (a.kind) {
    case Symbol::Kind::U:
      return canonical_less(a.label, b.label);
    case Symbol::Kind::Y:
      return a.receiver < b.receiver;
    default:
      return false;
  }
}

SymbolSet sym_set(std::vector<Symbol> syms) {
  std::sort(syms.begin(), syms.end(), SymbolLess{});
  syms.erase(std::unique(syms.begin(), syms.end()), syms.end());
  return syms;
}

SymbolSet sym_union(const SymbolSet& a, const SymbolSet& b) {
  SymbolSet out = a;
  out.insert(out.end(), b.begin(), b.end());
  return sym_set(std::move(out));
}

std::string sym_set_name(const SymbolSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s[i].name();
  }
  return out;
}

SymbolSet sym_set_parse(const std::string& s) {
  SymbolSet out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    // Label bodies may contain braces with commas; split on commas that are
    // not inside braces.
    std::size_t end = pos;
    int depth = 0;
    while (end < s.size() && (depth > 0 || s[end] != ',')) {
      if (s[end] == '{') ++depth;
      if (s[end] == '}') --depth;
      ++end;
    }
    out.push_back(Symbol::parse(s.substr(pos, end - pos)));
    pos = end + 1;
  }
  return sym_set(std::move(out));
}

EntropyExpr EntropyExpr::from_constant(Rat c) {
  EntropyExpr e;
  e.constant = std::move(c);
  return e;
}

EntropyExpr EntropyExpr::entropy(const SymbolSet& t) {
  EntropyExpr e;
  e.add_term(t, 1);
  return e;
}

void EntropyExpr::add_term(const SymbolSet& t, const Rat& coeff) {
  if (coeff == 0) return;
  if (t.empty()) return;  // H() = 0
  auto it = terms.find(t);
  if (it == terms.end()) {
    terms.emplace(t, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms.erase(it);
  }
}

EntropyExpr& EntropyExpr::operator+=(const EntropyExpr& o) {
  if (this == &o) return *this *= Rat(2);
  for (auto& [t, c] : o.terms) add_term(t, c);
  constant += o.constant;
  return *this;
}

EntropyExpr& EntropyExpr::operator-=(const EntropyExpr& o) {
  if (this == &o) return *this *= Rat(0);
  for (auto& [t, c] : o.terms) add_term(t, -c);
  constant -= o.constant;
  return *this;
}

EntropyExpr& EntropyExpr::operator*=(const Rat& c) {
  if (c == 0) {
    terms.clear();
    constant = 0;
    return *this;
  }
  for (auto& [t, coeff] : terms) coeff *= c;
  constant *= c;
  return *this;
}

bool EntropyExpr::syntactically_nonneg() const {
  if (constant < 0) return false;
  for (auto& [t, c] : terms)
    if (c < 0) return false;
  return true;
}

std::string EntropyExpr::str() const {
  std::string out;
  auto append = [&](const Rat& c, const std::string& body) {
    if (out.empty()) {
      if (c == -1)
        out += "-";
      else if (c != 1)
        out += rat_str(c) + "*";
    } else {
      out += (c < 0) ? " - " : " + ";
      Rat a = abs(c);
      if (a != 1) out += rat_str(a) + "*";
    }
    out += body;
  };
  for (auto& [t, c] : terms) append(c, "H(" + sym_set_name(t) + ")");
  if (constant != 0 || terms.empty()) {
    if (out.empty())
      out = rat_str(constant);
    else
      out += (constant < 0 ? " - " : " + ") + rat_str(abs(constant));
  }
  return out;
}

EntropyExpr mutual_information_expr(const SymbolSet& a, const SymbolSet& b,
                                    const SymbolSet& c) {
  EntropyExpr e;
  if (a.empty() || b.empty()) return e;
  e += EntropyExpr::entropy(sym_union(a, c));
  e += EntropyExpr::entropy(sym_union(b, c));
  e -= EntropyExpr::entropy(sym_union(sym_union(a, b), c));
  e -= EntropyExpr::entropy(c);
  return e;
}

EntropyExpr receiver_mi_expr(const std::vector<SubsetLabel>& b, int receiver,
                             const std::vector<SubsetLabel>& c,
                             bool with_time_sharing) {
  SymbolSet A, C;
  for (auto s : b) A.push_back(Symbol::u(s));
  for (auto s : c) C.push_back(Symbol::u(s));
  if (with_time_sharing) C.push_back(Symbol::q());
  return mutual_information_expr(sym_set(std::move(A)),
                                 {Symbol::y(receiver)},
                                 sym_set(std::move(C)));
}

}  // namespace groupcast
