#include "groupcast/regions.hpp"

#include <algorithm>
#include <stdexcept>

namespace groupcast {

namespace {

Var rate_var(Var::Kind kind, SubsetLabel s) {
  switch (kind) {
    case Var::Kind::Rate:
      return Var::rate(s);
    case Var::Kind::RateHat:
      return Var::rate_hat(s);
    case Var::Kind::RateTilde:
      return Var::rate_tilde(s);
    case Var::Kind::CoverRate:
      return Var::cover_rate(s);
    default:
      throw std::invalid_argument("rate_var: not a per-label kind");
  }
}

struct ReceiverRow {
  std::vector<SubsetLabel> decode_set;  // LHS rate sum
  EntropyExpr rhs;
  std::string note;
};

// The decoding constraints of one receiver: per nonempty down-set B of the
// order induced on the window, sum of the B-rates bounded by the conditional
// information about U_B given the rest of the window.  The all-subsets
// variant emits one row per nonempty subset, bounded at its down-closure.
std::vector<ReceiverRow> receiver_rows(const ProblemSpec& spec, int receiver,
                                       bool all_subsets) {
  std::vector<ReceiverRow> out;
  std::vector<SubsetLabel> window = spec.labels().window(receiver);
  if (window.empty()) return out;
  SuperpositionOrder induced = spec.order.restrict_to(window);

  auto emit = [&](const std::vector<SubsetLabel>& lhs,
                  const std::vector<SubsetLabel>& bound_set,
                  std::string note) {
    ReceiverRow row;
    row.decode_set = lhs;
    row.rhs = receiver_mi_expr(bound_set, receiver,
                               labels_minus(window, bound_set),
                               spec.with_time_sharing);
    row.note = std::move(note);
    out.push_back(std::move(row));
  };

  std::string jtag = "receiver " + std::to_string(receiver);
  if (!all_subsets) {
    LatticeFamily lat = enumerate_down_sets(induced);
    for (const auto& b : lat.members)
      if (!b.empty()) emit(b, b, jtag + ", decode {" + labels_str(b) + "}");
    return out;
  }

  if (window.size() > 20)
    throw ResourceLimitError("all-subsets variant: window too large");
  std::uint32_t count = std::uint32_t{1} << window.size();
  for (std::uint32_t mask = 1; mask < count; ++mask) {
    std::vector<SubsetLabel> b;
    for (std::size_t i = 0; i < window.size(); ++i)
      if (mask & (std::uint32_t{1} << i)) b.push_back(window[i]);
    std::vector<SubsetLabel> closed = down_closure(induced, b);
    emit(b, closed,
         jtag + ", subset {" + labels_str(b) + "} closes to {" +
             labels_str(closed) + "}");
  }
  return out;
}

std::vector<std::pair<SubsetLabel, SubsetLabel>> resolve_split_pairs(
    const ProblemSpec& spec,
    const std::vector<std::pair<SubsetLabel, SubsetLabel>>* split_pairs) {
  auto legal = legal_split_pairs(spec.messages, spec.labels());
  if (!split_pairs) return legal;
  std::vector<std::pair<SubsetLabel, SubsetLabel>> chosen = *split_pairs;
  std::sort(chosen.begin(), chosen.end(), LabelPairLess{});
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  for (const auto& p : chosen)
    if (!std::binary_search(legal.begin(), legal.end(), p, LabelPairLess{}))
      throw std::invalid_argument("split pair " + p.first.str() + "->" +
                                  p.second.str() + " is not legal");
  return chosen;
}

}  // namespace

ProblemSpec ProblemSpec::make(MessageIndexFamily messages,
                              SuperpositionOrder order,
                              bool with_time_sharing) {
  if (messages.K != order.family.K)
    throw std::invalid_argument("problem: receiver count mismatch");
  if (!order.family.contains_all(messages))
    throw std::invalid_argument(
        "problem: message labels must lie inside the label family");
  ProblemSpec spec;
  spec.messages = std::move(messages);
  spec.order = std::move(order);
  spec.with_time_sharing = with_time_sharing;
  return spec;
}

InequalitySystem receiver_polyhedron(const ProblemSpec& spec, int receiver,
                                     Var::Kind kind, bool all_subsets) {
  if (receiver < 1 || receiver > spec.labels().K)
    throw std::invalid_argument("receiver out of range");
  InequalitySystem sys;
  for (const SubsetLabel& s : spec.labels().labels)
    sys.vars.push_back(rate_var(kind, s));
  for (const Var& v : sys.vars) sys.add_nonneg(v, "nonnegativity");
  for (const ReceiverRow& r : receiver_rows(spec, receiver, all_subsets)) {
    std::vector<std::pair<Var, Rat>> lhs;
    for (const SubsetLabel& s : r.decode_set)
      lhs.emplace_back(rate_var(kind, s), Rat(1));
    sys.add_row(lhs, r.rhs, r.note, /*rhs_nonneg=*/true);
  }
  return sys;
}

InequalitySystem receivers_intersection(const ProblemSpec& spec,
                                        Var::Kind kind, bool all_subsets) {
  InequalitySystem sys;
  for (const SubsetLabel& s : spec.labels().labels)
    sys.vars.push_back(rate_var(kind, s));
  for (const Var& v : sys.vars) sys.add_nonneg(v, "nonnegativity");
  for (int j = 1; j <= spec.labels().K; ++j)
    for (const ReceiverRow& r : receiver_rows(spec, j, all_subsets)) {
      std::vector<std::pair<Var, Rat>> lhs;
      for (const SubsetLabel& s : r.decode_set)
        lhs.emplace_back(rate_var(kind, s), Rat(1));
      sys.add_row(lhs, r.rhs, r.note, /*rhs_nonneg=*/true);
    }
  return sys;
}

std::vector<std::pair<SubsetLabel, SubsetLabel>> legal_split_pairs(
    const MessageIndexFamily& messages, const MessageIndexFamily& labels) {
  std::vector<std::pair<SubsetLabel, SubsetLabel>> pairs;
  for (const SubsetLabel& s : messages.labels)
    for (const SubsetLabel& t : labels.labels)
      if (s.subset_of(t)) pairs.emplace_back(s, t);
  std::sort(pairs.begin(), pairs.end(), LabelPairLess{});
  return pairs;
}

InequalitySystem split_rate_system(
    const ProblemSpec& spec,
    const std::vector<std::pair<SubsetLabel, SubsetLabel>>* split_pairs) {
  auto pairs = resolve_split_pairs(spec, split_pairs);
  InequalitySystem sys;
  for (const SubsetLabel& s : spec.messages.labels)
    sys.vars.push_back(Var::rate(s));
  for (const auto& p : pairs)
    sys.vars.push_back(Var::split(p.first, p.second));

  // each desired rate is the sum of its splits
  for (const SubsetLabel& s : spec.messages.labels) {
    std::vector<std::pair<Var, Rat>> lhs = {{Var::rate(s), Rat(1)}};
    for (const auto& p : pairs)
      if (p.first == s) lhs.emplace_back(Var::split(p.first, p.second), Rat(-1));
    sys.add_equality(lhs, EntropyExpr{}, "R_" + s.str() + " split");
  }
  for (const auto& p : pairs)
    sys.add_nonneg(Var::split(p.first, p.second), "split nonnegativity");

  // receiver rows over the reconstructed label rates, each expanded as the
  // sum of the splits relabeled onto it
  for (int j = 1; j <= spec.labels().K; ++j)
    for (const ReceiverRow& r : receiver_rows(spec, j, false)) {
      std::vector<std::pair<Var, Rat>> lhs;
      for (const auto& p : pairs)
        if (labels_contain(r.decode_set, p.second))
          lhs.emplace_back(Var::split(p.first, p.second), Rat(1));
      sys.add_row(lhs, r.rhs, r.note, /*rhs_nonneg=*/true);
    }
  return sys;
}

std::vector<Var> split_vars(const InequalitySystem& sys) {
  std::vector<Var> out;
  for (const Var& v : sys.vars)
    if (v.kind == Var::Kind::Split) out.push_back(v);
  return out;
}

ConeGenerators exchange_cone_generators(const ProblemSpec& spec) {
  ConeGenerators gens;
  for (const SubsetLabel& s : spec.labels().labels)
    gens.vars.push_back(Var::rate(s));
  for (const auto& p : legal_split_pairs(spec.messages, spec.labels())) {
    if (p.first == p.second) continue;
    std::vector<Rat> vec(gens.vars.size(), Rat(0));
    vec[spec.labels().index_of(p.first)] = 1;
    vec[spec.labels().index_of(p.second)] = -1;
    gens.pairs.push_back(p);
    gens.vectors.push_back(std::move(vec));
  }
  return gens;
}

InequalitySystem minkowski_form_system(const ProblemSpec& spec,
                                       const FmOptions& opts) {
  InequalitySystem base = receivers_intersection(spec, Var::Kind::Rate);
  ConeGenerators gens = exchange_cone_generators(spec);
  InequalitySystem sum =
      gens.vectors.empty() ? base
                           : minkowski_sum_with_cone(base, gens.vectors, opts);

  // intersect with the nonnegative embedding of the E-rates
  for (const SubsetLabel& s : spec.labels().labels)
    if (!spec.messages.contains(s)) sum.add_nonneg(Var::rate(s));
  std::vector<Var> zeroed;
  for (const SubsetLabel& s : spec.labels().labels)
    if (!spec.messages.contains(s)) zeroed.push_back(Var::rate(s));
  InequalitySystem out = substitute_zero(sum, zeroed);
  for (const SubsetLabel& s : spec.messages.labels)
    out.add_nonneg(Var::rate(s), "nonnegativity");
  out.prune_syntactic();
  out.sort_rows();
  return out;
}

ExchangeVector split_to_exchange(const SplitRateMap& splits,
                                 const MessageIndexFamily& messages,
                                 const MessageIndexFamily& labels) {
  ProblemSpec spec = ProblemSpec::make(
      messages, SuperpositionOrder::discrete(labels), false);
  ExchangeVector ex;
  ex.generators = exchange_cone_generators(spec);
  ex.vars = ex.generators.vars;
  ex.delta.assign(ex.vars.size(), Rat(0));
  ex.multipliers.assign(ex.generators.pairs.size(), Rat(0));

  auto legal = legal_split_pairs(messages, labels);
  for (const auto& [pair, value] : splits) {
    if (!std::binary_search(legal.begin(), legal.end(), pair, LabelPairLess{}))
      throw std::invalid_argument("split pair " + pair.first.str() + "->" +
                                  pair.second.str() + " is not legal");
    if (!(value >= 0.0))
      throw std::invalid_argument("split rates must be nonnegative");
    if (pair.first == pair.second) continue;  // no transfer
    auto it = std::find(ex.generators.pairs.begin(), ex.generators.pairs.end(),
                        pair);
    std::size_t g =
        static_cast<std::size_t>(it - ex.generators.pairs.begin());
    Rat r = rat_from_double(value);
    ex.multipliers[g] += r;
    for (std::size_t i = 0; i < ex.vars.size(); ++i)
      ex.delta[i] += r * ex.generators.vectors[g][i];
  }
  return ex;
}

EntropyExpr gamma_expr(const SuperpositionOrder& order,
                       const std::vector<SubsetLabel>& up_set) {
  if (!is_up_set(order, up_set))
    throw std::invalid_argument("gamma: {" + labels_str(up_set) +
                                "} is not an up-set");
  EntropyExpr e;
  SymbolSet group;
  for (const SubsetLabel& s : up_set) {
    SymbolSet parents;
    for (const SubsetLabel& p : order.strict_up_set_of(s))
      parents.push_back(Symbol::u(p));
    parents = sym_set(parents);
    e += EntropyExpr::entropy(sym_union(parents, {Symbol::u(s)}));
    e -= EntropyExpr::entropy(parents);
    group.push_back(Symbol::u(s));
  }
  e -= EntropyExpr::entropy(sym_set(group));
  return e;
}

double gamma_value(const JointDistribution& target,
                   const SuperpositionOrder& order,
                   const std::vector<SubsetLabel>& up_set) {
  return target.evaluate(gamma_expr(order, up_set));
}

GammaTable gamma_table(const JointDistribution& target,
                       const SuperpositionOrder& order) {
  GammaTable table;
  table.up_sets = enumerate_up_sets(order);
  table.values.reserve(table.up_sets.members.size());
  for (const auto& g : table.up_sets.members)
    table.values.push_back(gamma_value(target, order, g));
  return table;
}

InequalitySystem covering_region(const JointDistribution& target,
                                 const SuperpositionOrder& order) {
  InequalitySystem sys;
  for (const SubsetLabel& s : order.family.labels)
    sys.vars.push_back(Var::cover_rate(s));
  for (const Var& v : sys.vars) sys.add_nonneg(v, "nonnegativity");
  LatticeFamily lat = enumerate_up_sets(order);
  for (const auto& g : lat.members) {
    if (g.empty()) continue;
    double gamma = gamma_value(target, order, g);
    if (gamma <= 0.0) continue;  // implied by r >= 0
    std::vector<std::pair<Var, Rat>> lhs;
    for (const SubsetLabel& s : g) lhs.emplace_back(Var::cover_rate(s), Rat(-1));
    sys.add_row(lhs, EntropyExpr::from_constant(-rat_from_double(gamma)),
                "covering up-set {" + labels_str(g) + "}");
  }
  return sys;
}

InequalitySystem binning_system(
    const ProblemSpec& spec,
    const std::vector<std::pair<SubsetLabel, SubsetLabel>>* split_pairs,
    bool tilde_dominates_hat) {
  if (spec.with_time_sharing)
    throw std::invalid_argument("binning requires constant time sharing");
  auto pairs = resolve_split_pairs(spec, split_pairs);
  InequalitySystem sys;
  for (const SubsetLabel& s : spec.messages.labels)
    sys.vars.push_back(Var::rate(s));
  for (const auto& p : pairs)
    sys.vars.push_back(Var::split(p.first, p.second));
  for (const SubsetLabel& s : spec.labels().labels)
    sys.vars.push_back(Var::rate_tilde(s));

  for (const SubsetLabel& s : spec.messages.labels) {
    std::vector<std::pair<Var, Rat>> lhs = {{Var::rate(s), Rat(1)}};
    for (const auto& p : pairs)
      if (p.first == s) lhs.emplace_back(Var::split(p.first, p.second), Rat(-1));
    sys.add_equality(lhs, EntropyExpr{}, "R_" + s.str() + " split");
  }
  for (const auto& p : pairs)
    sys.add_nonneg(Var::split(p.first, p.second), "split nonnegativity");

  // covering excess on every nonempty up-set: reconstructed rates (split
  // sums) may trail the codebook rates by no less than the deficiency
  LatticeFamily up = enumerate_up_sets(spec.order);
  for (const auto& g : up.members) {
    if (g.empty()) continue;
    std::vector<std::pair<Var, Rat>> lhs;
    for (const SubsetLabel& s : g) {
      lhs.emplace_back(Var::rate_tilde(s), Rat(-1));
      for (const auto& p : pairs)
        if (p.second == s) lhs.emplace_back(Var::split(p.first, p.second), Rat(1));
    }
    sys.add_row(lhs, gamma_expr(spec.order, g) * Rat(-1),
                "binning up-set {" + labels_str(g) + "}");
  }

  for (const SubsetLabel& s : spec.labels().labels)
    sys.add_nonneg(Var::rate_tilde(s), "nonnegativity");
  for (int j = 1; j <= spec.labels().K; ++j)
    for (const ReceiverRow& r : receiver_rows(spec, j, false)) {
      std::vector<std::pair<Var, Rat>> lhs;
      for (const SubsetLabel& s : r.decode_set)
        lhs.emplace_back(Var::rate_tilde(s), Rat(1));
      sys.add_row(lhs, r.rhs, r.note, /*rhs_nonneg=*/true);
    }

  if (tilde_dominates_hat) {
    for (const SubsetLabel& s : spec.labels().labels) {
      std::vector<std::pair<Var, Rat>> lhs = {{Var::rate_tilde(s), Rat(-1)}};
      for (const auto& p : pairs)
        if (p.second == s) lhs.emplace_back(Var::split(p.first, p.second), Rat(1));
      sys.add_row(lhs, EntropyExpr{},
                  "codebook rate covers reconstructed rate for " + s.str());
    }
  }
  return sys;
}

namespace {

SubsetLabel lbl(std::initializer_list<int> members) {
  return SubsetLabel::from_members(std::vector<int>(members));
}

}  // namespace

InequalitySystem known_region(const std::string& name) {
  InequalitySystem sys;
  SymbolSet q = {Symbol::q()};
  if (name == "korner_marton") {
    SubsetLabel s1 = lbl({1}), s12 = lbl({1, 2});
    Symbol u1 = Symbol::u(s1), u12 = Symbol::u(s12);
    sys.vars = {Var::rate(s1), Var::rate(s12)};
    for (const Var& v : sys.vars) sys.add_nonneg(v, "nonnegativity");
    sys.add_row({{Var::rate(s12), Rat(1)}},
                mutual_information_expr({u12}, {Symbol::y(2)}),
                "common rate at the weak receiver", true);
    sys.add_row({{Var::rate(s1), Rat(1)}},
                mutual_information_expr({u1}, {Symbol::y(1)}, {u12}),
                "private rate on top of the common layer", true);
    // the X = U_1 substitution and the chain from U_12 through U_1 to Y_1
    // make I(U_1,U_12;Y_1) the displayed sum-rate bound I(X;Y_1)
    sys.add_row({{Var::rate(s1), Rat(1)}, {Var::rate(s12), Rat(1)}},
                mutual_information_expr({u1, u12}, {Symbol::y(1)}),
                "sum rate at the strong receiver", true);
    return sys;
  }
  if (name == "cover") {
    SubsetLabel s1 = lbl({1}), s2 = lbl({2}), s12 = lbl({1, 2});
    Symbol u1 = Symbol::u(s1), u2 = Symbol::u(s2), u12 = Symbol::u(s12);
    sys.vars = {Var::rate(s1), Var::rate(s2), Var::rate(s12)};
    for (const Var& v : sys.vars) sys.add_nonneg(v, "nonnegativity");
    sys.add_row({{Var::rate(s1), Rat(1)}},
                mutual_information_expr({u1}, {u12, Symbol::y(1)}, q),
                "receiver 1 private", true);
    sys.add_row({{Var::rate(s12), Rat(1)}},
                mutual_information_expr({u12}, {u1, Symbol::y(1)}, q),
                "receiver 1 common", true);
    sys.add_row({{Var::rate(s1), Rat(1)}, {Var::rate(s12), Rat(1)}},
                mutual_information_expr({u1, u12}, {Symbol::y(1)}, q),
                "receiver 1 sum", true);
    sys.add_row({{Var::rate(s2), Rat(1)}},
                mutual_information_expr({u2}, {u12, Symbol::y(2)}, q),
                "receiver 2 private", true);
    sys.add_row({{Var::rate(s12), Rat(1)}},
                mutual_information_expr({u12}, {u2, Symbol::y(2)}, q),
                "receiver 2 common", true);
    sys.add_row({{Var::rate(s2), Rat(1)}, {Var::rate(s12), Rat(1)}},
                mutual_information_expr({u2, u12}, {Symbol::y(2)}, q),
                "receiver 2 sum", true);
    return sys;
  }
  if (name == "two_user_fm") {
    SubsetLabel s1 = lbl({1}), s2 = lbl({2}), s12 = lbl({1, 2});
    Symbol u1 = Symbol::u(s1), u2 = Symbol::u(s2), u12 = Symbol::u(s12);
    sys.vars = {Var::rate(s1), Var::rate(s2), Var::rate(s12)};
    for (const Var& v : sys.vars) sys.add_nonneg(v, "nonnegativity");
    sys.add_row({{Var::rate(s1), Rat(1)}, {Var::rate(s12), Rat(1)}},
                mutual_information_expr({u1, u12}, {Symbol::y(1)}, q),
                "receiver 1 sum", true);
    sys.add_row({{Var::rate(s2), Rat(1)}, {Var::rate(s12), Rat(1)}},
                mutual_information_expr({u2, u12}, {Symbol::y(2)}, q),
                "receiver 2 sum", true);
    sys.add_row(
        {{Var::rate(s1), Rat(1)}, {Var::rate(s2), Rat(1)}, {Var::rate(s12), Rat(1)}},
        mutual_information_expr({u2, u12}, {Symbol::y(2)}, q) +
            mutual_information_expr({u1}, {Symbol::y(1)}, sym_union({u12}, q)),
        "total, common layer at receiver 2", true);
    sys.add_row(
        {{Var::rate(s1), Rat(1)}, {Var::rate(s2), Rat(1)}, {Var::rate(s12), Rat(1)}},
        mutual_information_expr({u2}, {Symbol::y(2)}, sym_union({u12}, q)) +
            mutual_information_expr({u1, u12}, {Symbol::y(1)}, q),
        "total, common layer at receiver 1", true);
    return sys;
  }
  if (name == "nair_elgamal") {
    SubsetLabel s1 = lbl({1}), s13 = lbl({1, 3}), s123 = lbl({1, 2, 3});
    Symbol u13 = Symbol::u(s13), u123 = Symbol::u(s123), x = Symbol::x();
    sys.vars = {Var::rate(s1), Var::rate(s123)};
    for (const Var& v : sys.vars) sys.add_nonneg(v, "nonnegativity");
    sys.add_row({{Var::rate(s123), Rat(1)}},
                mutual_information_expr({u123}, {Symbol::y(2)}),
                "common rate at receiver 2", true);
    sys.add_row({{Var::rate(s123), Rat(1)}},
                mutual_information_expr({u13}, {Symbol::y(3)}),
                "common rate at receiver 3", true);
    sys.add_row({{Var::rate(s1), Rat(1)}},
                mutual_information_expr({x}, {Symbol::y(1)}, {u123}),
                "private rate above the common layer", true);
    sys.add_row({{Var::rate(s1), Rat(1)}, {Var::rate(s123), Rat(1)}},
                mutual_information_expr({u13}, {Symbol::y(3)}) +
                    mutual_information_expr({x}, {Symbol::y(1)}, {u13}),
                "sum rate through the middle layer", true);
    sys.add_row({{Var::rate(s1), Rat(1)}},
                mutual_information_expr({x}, {Symbol::y(1)}, {u13}) +
                    mutual_information_expr({u13}, {Symbol::y(3)}, {u123}),
                "private rate, middle layer credited at receiver 3", true);
    return sys;
  }
  throw std::invalid_argument("unknown region name: " + name);
}

}  // namespace groupcast
