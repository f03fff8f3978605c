#include "groupcast/demos.hpp"

#include <set>

namespace groupcast {

EntropyAssignment assignment_from_distribution(
    const JointDistribution& dist, const std::vector<SymbolSet>& sets) {
  std::map<SymbolSet, double, SymbolSetLess> values;
  for (const SymbolSet& s : sets) values[s] = dist.entropy(s);
  return EntropyAssignment::from_doubles(values);
}

std::vector<SymbolSet> referenced_sets(const InequalitySystem& a,
                                       const InequalitySystem& b) {
  std::set<SymbolSet, SymbolSetLess> all;
  for (const SymbolSet& s : a.referenced_symbol_sets()) all.insert(s);
  for (const SymbolSet& s : b.referenced_symbol_sets()) all.insert(s);
  return {all.begin(), all.end()};
}

std::vector<std::array<Rat, 2>> polygon_vertices(const InequalitySystem& sys) {
  if (sys.vars.size() != 2)
    throw std::invalid_argument("vertex enumeration needs two variables");
  for (const Inequality& row : sys.rows)
    if (!row.rhs.is_constant())
      throw std::invalid_argument("vertex enumeration needs constant rhs");

  std::set<std::array<Rat, 2>> found;
  const auto& rows = sys.rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const Rat a1 = rows[i].coeffs[0], b1 = rows[i].coeffs[1];
      const Rat a2 = rows[j].coeffs[0], b2 = rows[j].coeffs[1];
      const Rat det = a1 * b2 - a2 * b1;
      if (det == 0) continue;
      const Rat c1 = rows[i].rhs.constant, c2 = rows[j].rhs.constant;
      const Rat x = (c1 * b2 - c2 * b1) / det;
      const Rat y = (a1 * c2 - a2 * c1) / det;
      bool feasible = true;
      for (const Inequality& row : rows)
        if (row.coeffs[0] * x + row.coeffs[1] * y > row.rhs.constant) {
          feasible = false;
          break;
        }
      if (feasible) found.insert({x, y});
    }
  }
  return {found.begin(), found.end()};
}

namespace demos {

namespace {

SubsetLabel lab(std::initializer_list<int> members) {
  return SubsetLabel::from_members(std::vector<int>(members));
}

StochMat bsc(double flip) {
  return {{1.0 - flip, flip}, {flip, 1.0 - flip}};
}

// W(y1,y2|x) = w1(y1 | bit1(x)) * w2(y2 | bit2(x)); the bit extractors are
// passed in because the demos differ in how x encodes the pair.
TabularBC two_output_bc(int x_size, const StochMat& w1, const StochMat& w2,
                        int (*bit1)(int), int (*bit2)(int)) {
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(x_size) * 4);
  for (int x = 0; x < x_size; ++x)
    for (int y1 = 0; y1 < 2; ++y1)
      for (int y2 = 0; y2 < 2; ++y2)
        w.push_back(w1[bit1(x)][y1] * w2[bit2(x)][y2]);
  return TabularBC::make(x_size, {2, 2}, std::move(w));
}

// Multiset equality of rows as (coeffs, rhs), notes ignored.
bool same_rows(InequalitySystem a, InequalitySystem b) {
  if (!(a.vars == b.vars)) return false;
  a.normalize();
  a.sort_rows();
  b.normalize();
  b.sort_rows();
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    if (a.rows[i].coeffs != b.rows[i].coeffs ||
        !(a.rows[i].rhs == b.rows[i].rhs))
      return false;
  return true;
}

EquivalenceReport compare_regions(InequalitySystem built,
                                  InequalitySystem reference,
                                  const JointDistribution& dist) {
  EquivalenceReport rep;
  rep.assignment =
      assignment_from_distribution(dist, referenced_sets(built, reference));
  RegionCompare cmp = region_equal(built, reference, rep.assignment, 1e-9);
  rep.equal = cmp.equal;
  rep.detail = cmp.detail;
  rep.built = std::move(built);
  rep.reference = std::move(reference);
  return rep;
}

}  // namespace

CombinationNetwork combination3_network() {
  return CombinationNetwork::make(3, {{lab({1}), 1},
                                      {lab({2}), 2},
                                      {lab({3}), 3},
                                      {lab({1, 2}), 5},
                                      {lab({1, 3}), 7},
                                      {lab({2, 3}), 11},
                                      {lab({1, 2, 3}), 13}});
}

BuildRequest combination3_request() {
  BuildRequest req;
  MessageIndexFamily fam = MessageIndexFamily::full(3);
  req.spec = ProblemSpec::make(fam, SuperpositionOrder::inclusion(fam), false);
  req.construction = "split";
  return req;
}

Combination3Report run_combination3() {
  BuildRequest req = combination3_request();
  InequalitySystem sys = split_rate_system(req.spec);
  EntropyAssignment assign = combination_assignment(
      combination3_network(), req.spec.labels(), sys.referenced_symbol_sets());
  InequalitySystem bound = bind_assignment(sys, assign);

  FmOptions opts;
  opts.exact_prune_each_step = true;
  InequalitySystem projected = fm_eliminate(bound, split_vars(bound), opts);
  Combination3Report rep;
  rep.system = remove_redundant_exact(projected);
  for (std::size_t r = 0; r < rep.system.rows.size(); ++r)
    if (!rep.system.row_is_nonneg_bound(static_cast<int>(r)))
      rep.inequality_count++;
  return rep;
}

AdmissibleSpec two_user_instance() {
  AdmissibleSpec spec;
  MessageIndexFamily fam =
      MessageIndexFamily::make(2, {lab({1}), lab({2}), lab({1, 2})});
  spec.order = SuperpositionOrder::inclusion(fam);
  spec.q_pmf = {0.5, 0.5};
  spec.u_sizes = {2, 2, 2};
  spec.conditionals = {
      // p(u_1 | q, u_12)
      {0.75, 0.25, 0.25, 0.75, 0.625, 0.375, 0.375, 0.625},
      // p(u_2 | q, u_12)
      {0.875, 0.125, 0.5, 0.5, 0.25, 0.75, 0.625, 0.375},
      // p(u_12 | q)
      {0.5, 0.5, 0.375, 0.625},
  };
  spec.x_size = 2;
  for (int q = 0; q < 2; ++q)
    for (int u1 = 0; u1 < 2; ++u1)
      for (int u2 = 0; u2 < 2; ++u2)
        for (int u12 = 0; u12 < 2; ++u12)
          spec.input_map.push_back((q + u1 + u2 + u12) % 2);
  return bind_channel(std::move(spec),
                      two_output_bc(
                          2, bsc(0.125), bsc(0.25), [](int x) { return x; },
                          [](int x) { return x; }));
}

EquivalenceReport run_two_user() {
  AdmissibleSpec inst = two_user_instance();
  ProblemSpec spec = ProblemSpec::make(inst.order.family, inst.order, true);
  InequalitySystem sys = split_rate_system(spec);
  InequalitySystem projected = fm_eliminate(sys, split_vars(sys));
  return compare_regions(std::move(projected), known_region("two_user_fm"),
                         assemble_joint(inst));
}

AdmissibleSpec cover_instance() {
  AdmissibleSpec spec;
  MessageIndexFamily fam =
      MessageIndexFamily::make(2, {lab({1}), lab({2}), lab({1, 2})});
  spec.order = SuperpositionOrder::discrete(fam);
  spec.q_pmf = {0.5, 0.5};
  spec.u_sizes = {2, 2, 2};
  spec.conditionals = {
      // p(u_1 | q)
      {0.75, 0.25, 0.375, 0.625},
      // p(u_2 | q)
      {0.625, 0.375, 0.25, 0.75},
      // p(u_12 | q)
      {0.5, 0.5, 0.875, 0.125},
  };
  spec.x_size = 4;
  for (int q = 0; q < 2; ++q)
    for (int u1 = 0; u1 < 2; ++u1)
      for (int u2 = 0; u2 < 2; ++u2)
        for (int u12 = 0; u12 < 2; ++u12)
          spec.input_map.push_back(2 * (u1 ^ u12) + (u2 ^ u12));
  return bind_channel(std::move(spec),
                      two_output_bc(
                          4, bsc(0.125), bsc(0.1875),
                          [](int x) { return x >> 1; },
                          [](int x) { return x & 1; }));
}

EquivalenceReport run_cover() {
  AdmissibleSpec inst = cover_instance();
  // No rate splitting: the region is the receivers' intersection itself.
  ProblemSpec spec = ProblemSpec::make(inst.order.family, inst.order, true);
  InequalitySystem built = receivers_intersection(spec, Var::Kind::Rate);
  return compare_regions(std::move(built), known_region("cover"),
                         assemble_joint(inst));
}

AdmissibleSpec korner_marton_instance() {
  AdmissibleSpec spec;
  MessageIndexFamily fam = MessageIndexFamily::make(2, {lab({1}), lab({1, 2})});
  spec.order = SuperpositionOrder::inclusion(fam);
  spec.q_pmf = {1.0};
  spec.u_sizes = {2, 2};
  spec.conditionals = {
      // p(u_1 | u_12): the input rides the private label
      {0.875, 0.125, 0.25, 0.75},
      // p(u_12)
      {0.5, 0.5},
  };
  spec.x_size = 2;
  for (int u1 = 0; u1 < 2; ++u1)
    for (int u12 = 0; u12 < 2; ++u12) {
      spec.input_map.push_back(u1);
      (void)u12;
    }
  return bind_channel(std::move(spec),
                      two_output_bc(
                          2, bsc(0.0625), bsc(0.3125), [](int x) { return x; },
                          [](int x) { return x; }));
}

EquivalenceReport run_korner_marton() {
  AdmissibleSpec inst = korner_marton_instance();
  ProblemSpec spec = ProblemSpec::make(inst.order.family, inst.order, false);
  InequalitySystem built = receivers_intersection(spec, Var::Kind::Rate);
  InequalitySystem reference = known_region("korner_marton");
  bool syntactic = same_rows(built, reference);
  EquivalenceReport rep = compare_regions(std::move(built),
                                          std::move(reference),
                                          assemble_joint(inst));
  rep.detail = std::string("row sets ") +
               (syntactic ? "match" : "differ") + "; " + rep.detail;
  rep.equal = rep.equal && syntactic;
  return rep;
}

AdmissibleSpec nair_elgamal_instance() {
  AdmissibleSpec spec;
  MessageIndexFamily fam =
      MessageIndexFamily::make(3, {lab({1}), lab({1, 3}), lab({1, 2, 3})});
  spec.order = SuperpositionOrder::explicit_pairs(
      fam, {{lab({1}), lab({1, 3})}, {lab({1, 3}), lab({1, 2, 3})}});
  spec.q_pmf = {1.0};
  spec.u_sizes = {2, 2, 2};
  spec.conditionals = {
      // p(u_1 | u_13, u_123): a chain, so the top label is ignored
      {0.8125, 0.1875, 0.8125, 0.1875, 0.1875, 0.8125, 0.1875, 0.8125},
      // p(u_13 | u_123)
      {0.75, 0.25, 0.25, 0.75},
      // p(u_123)
      {0.5, 0.5},
  };
  spec.x_size = 2;
  for (int u1 = 0; u1 < 2; ++u1)
    for (int u13 = 0; u13 < 2; ++u13)
      for (int u123 = 0; u123 < 2; ++u123) {
        spec.input_map.push_back(u1);
        (void)u13;
        (void)u123;
      }
  return bind_channel(
      std::move(spec),
      degraded_pair_bc(bsc(0.0625), bsc(0.1875), bsc(0.125)));
}

NairElGamalReport run_nair_elgamal() {
  AdmissibleSpec inst = nair_elgamal_instance();
  JointDistribution dist = assemble_joint(inst);
  const SubsetLabel l1 = lab({1}), l13 = lab({1, 3}), l123 = lab({1, 2, 3});

  NairElGamalReport rep;

  // The receiver bounds over the full chain family.
  ProblemSpec full = ProblemSpec::make(inst.order.family, inst.order, false);
  rep.receiver_rows = receivers_intersection(full, Var::Kind::Rate);

  InequalitySystem expected;
  expected.vars = {Var::rate(l1), Var::rate(l13), Var::rate(l123)};
  expected.add_nonneg(Var::rate(l1));
  expected.add_nonneg(Var::rate(l13));
  expected.add_nonneg(Var::rate(l123));
  expected.add_row({{Var::rate(l1), 1}},
                   receiver_mi_expr({l1}, 1, {l13, l123}, false), "", true);
  expected.add_row({{Var::rate(l1), 1}, {Var::rate(l13), 1}},
                   receiver_mi_expr({l1, l13}, 1, {l123}, false), "", true);
  expected.add_row(
      {{Var::rate(l1), 1}, {Var::rate(l13), 1}, {Var::rate(l123), 1}},
      receiver_mi_expr({l1, l13, l123}, 1, {}, false), "", true);
  expected.add_row({{Var::rate(l123), 1}},
                   receiver_mi_expr({l123}, 2, {}, false), "", true);
  expected.add_row({{Var::rate(l13), 1}},
                   receiver_mi_expr({l13}, 3, {l123}, false), "", true);
  expected.add_row({{Var::rate(l13), 1}, {Var::rate(l123), 1}},
                   receiver_mi_expr({l13, l123}, 3, {}, false), "", true);
  rep.rows_match = same_rows(rep.receiver_rows, expected);

  // Project the restricted-split system onto (R_1, R_123).
  MessageIndexFamily messages = MessageIndexFamily::make(3, {l1, l123});
  ProblemSpec spec = ProblemSpec::make(messages, inst.order, false);
  std::vector<std::pair<SubsetLabel, SubsetLabel>> pairs = {
      {l1, l1}, {l1, l13}, {l123, l123}};
  InequalitySystem sys = split_rate_system(spec, &pairs);

  InequalitySystem reference = known_region("nair_elgamal");
  EntropyAssignment assign =
      assignment_from_distribution(dist, referenced_sets(sys, reference));
  FmOptions opts;
  opts.exact_prune_each_step = true;
  InequalitySystem bound = bind_assignment(sys, assign);
  rep.projected = remove_redundant_exact(
      fm_eliminate(bound, split_vars(bound), opts));

  std::vector<std::array<Rat, 2>> verts = polygon_vertices(rep.projected);
  rep.vertices_ok = !verts.empty();
  for (const auto& v : verts) {
    std::string why;
    std::vector<double> point = {rat_to_double(v[0]), rat_to_double(v[1])};
    if (!evaluate_point(reference, assign, point, 1e-9, &why)) {
      rep.vertices_ok = false;
      rep.detail = "vertex (" + rat_str(v[0]) + ", " + rat_str(v[1]) +
                   ") escapes the reference: " + why;
      break;
    }
  }
  if (rep.detail.empty()) {
    rep.detail = "receiver rows " +
                 std::string(rep.rows_match ? "match" : "differ") + "; " +
                 std::to_string(verts.size()) +
                 " projected vertices inside the reference region";
  }
  return rep;
}

JointDistribution marton_instance() {
  const SubsetLabel l1 = lab({1}), l2 = lab({2});
  VariableUniverse u = VariableUniverse::make(
      {Symbol::u(l1), Symbol::u(l2), Symbol::x(), Symbol::y(1), Symbol::y(2)},
      {2, 2, 4, 2, 2});
  JointDistribution dist = JointDistribution::zeros(std::move(u));
  const double pu[2][2] = {{0.375, 0.125}, {0.125, 0.375}};
  StochMat b1 = bsc(0.0625), b2 = bsc(0.125);
  for (int u1 = 0; u1 < 2; ++u1)
    for (int u2 = 0; u2 < 2; ++u2)
      for (int y1 = 0; y1 < 2; ++y1)
        for (int y2 = 0; y2 < 2; ++y2)
          dist.at({u1, u2, 2 * u1 + u2, y1, y2}) =
              pu[u1][u2] * b1[u1][y1] * b2[u2][y2];
  dist.finish();
  return dist;
}

InequalitySystem marton_reference() {
  const SubsetLabel l1 = lab({1}), l2 = lab({2});
  const SymbolSet u1 = sym_set({Symbol::u(l1)}), u2 = sym_set({Symbol::u(l2)});
  const SymbolSet y1 = sym_set({Symbol::y(1)}), y2 = sym_set({Symbol::y(2)});
  InequalitySystem sys;
  sys.vars = {Var::rate(l1), Var::rate(l2)};
  sys.add_nonneg(Var::rate(l1));
  sys.add_nonneg(Var::rate(l2));
  sys.add_row({{Var::rate(l1), 1}}, mutual_information_expr(u1, y1),
              "private bound, receiver 1", true);
  sys.add_row({{Var::rate(l2), 1}}, mutual_information_expr(u2, y2),
              "private bound, receiver 2", true);
  sys.add_row({{Var::rate(l1), 1}, {Var::rate(l2), 1}},
              mutual_information_expr(u1, y1) +
                  mutual_information_expr(u2, y2) -
                  mutual_information_expr(u1, u2),
              "sum bound less the pairing cost");
  return sys;
}

EquivalenceReport run_marton() {
  JointDistribution dist = marton_instance();
  MessageIndexFamily fam = MessageIndexFamily::make(2, {lab({1}), lab({2})});
  ProblemSpec spec =
      ProblemSpec::make(fam, SuperpositionOrder::discrete(fam), false);
  InequalitySystem sys = binning_system(spec);
  std::vector<Var> elim = split_vars(sys);
  for (const Var& v : sys.vars)
    if (v.kind == Var::Kind::RateTilde) elim.push_back(v);
  InequalitySystem projected = fm_eliminate(sys, elim);
  return compare_regions(std::move(projected), marton_reference(), dist);
}

CoveringExperiment covering_pair_experiment(int n, std::uint64_t seed) {
  const SubsetLabel l1 = lab({1}), l2 = lab({2});
  MessageIndexFamily fam = MessageIndexFamily::make(2, {l1, l2});
  CoveringExperiment exp;
  exp.order = SuperpositionOrder::discrete(fam);
  exp.target = JointDistribution::make(
      VariableUniverse::make({Symbol::u(l1), Symbol::u(l2)}, {2, 2}),
      {0.3, 0.2, 0.2, 0.3});
  const double gamma = gamma_value(exp.target, exp.order, {l1, l2});
  exp.rates = {0.5 * (gamma + 0.2), 0.5 * (gamma + 0.2)};
  exp.n = n;
  exp.eps = 0.125;
  exp.trials = 500;
  exp.seed = seed;
  return exp;
}

}  // namespace demos
}  // namespace groupcast
