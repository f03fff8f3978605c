#include <doctest.h>

#include "groupcast/demos.hpp"
#include "groupcast/regions.hpp"
#include "random_instances.hpp"

using namespace groupcast;
using testgen::lab;

namespace {

// Row whose coefficient vector places exactly the given entries (zero
// elsewhere); -1 if no row matches.
int find_row(const InequalitySystem& sys,
             const std::vector<std::pair<Var, Rat>>& lhs) {
  std::vector<Rat> want(sys.vars.size(), Rat(0));
  for (const auto& [v, c] : lhs) {
    int i = sys.var_index(v);
    if (i < 0) return -1;
    want[static_cast<std::size_t>(i)] = c;
  }
  for (std::size_t r = 0; r < sys.rows.size(); ++r)
    if (sys.rows[r].coeffs == want) return static_cast<int>(r);
  return -1;
}

ProblemSpec two_user_spec(bool with_time_sharing = true) {
  return ProblemSpec::make(MessageIndexFamily::full(2),
                           SuperpositionOrder::inclusion(MessageIndexFamily::full(2)),
                           with_time_sharing);
}

}  // namespace

TEST_CASE("receiver polyhedron rows follow the window's down-sets") {
  ProblemSpec spec = two_user_spec();
  SubsetLabel l1 = lab({1}), l2 = lab({2}), l12 = lab({1, 2});

  InequalitySystem sys = receiver_polyhedron(spec, 1, Var::Kind::Rate);
  CHECK(sys.vars.size() == 3);
  for (const Var& v : sys.vars) CHECK(v.kind == Var::Kind::Rate);
  // window {1,12} is a chain, so the nonempty down-sets are {1} and {1,12}
  CHECK(sys.rows.size() == 5);  // 3 nonneg + 2 decode rows

  int private_row = find_row(sys, {{Var::rate(l1), Rat(1)}});
  REQUIRE(private_row >= 0);
  CHECK(sys.rows[private_row].rhs == receiver_mi_expr({l1}, 1, {l12}, true));
  CHECK(sys.rows[private_row].note.find("receiver 1") != std::string::npos);
  CHECK(sys.rows[private_row].rhs_nonneg);

  int full_row = find_row(sys, {{Var::rate(l1), Rat(1)}, {Var::rate(l12), Rat(1)}});
  REQUIRE(full_row >= 0);
  CHECK(sys.rows[full_row].rhs == receiver_mi_expr({l1, l12}, 1, {}, true));

  // R_2 never decodes at receiver 1, only its nonnegativity row mentions it
  CHECK(find_row(sys, {{Var::rate(l2), Rat(1)}}) == -1);

  // time sharing off drops Q from the conditioning
  InequalitySystem bare = receiver_polyhedron(two_user_spec(false), 1, Var::Kind::Rate);
  int bare_row = find_row(bare, {{Var::rate(l1), Rat(1)}});
  REQUIRE(bare_row >= 0);
  CHECK(bare.rows[bare_row].rhs == receiver_mi_expr({l1}, 1, {l12}, false));
  CHECK(bare.rows[bare_row].rhs != sys.rows[private_row].rhs);

  // default variable flavor is the reconstructed rate
  CHECK(receiver_polyhedron(spec, 1).vars[0].kind == Var::Kind::RateHat);

  CHECK_THROWS_AS(receiver_polyhedron(spec, 0), std::invalid_argument);
  CHECK_THROWS_AS(receiver_polyhedron(spec, 3), std::invalid_argument);
}

TEST_CASE("all-subsets rows bound each subset at its down-closure") {
  ProblemSpec spec = two_user_spec();
  SubsetLabel l1 = lab({1}), l12 = lab({1, 2});

  InequalitySystem all = receiver_polyhedron(spec, 1, Var::Kind::Rate, true);
  CHECK(all.rows.size() == 6);  // 3 nonneg + one row per nonempty subset of {1,12}

  // {12} alone is not a down-set; its bound is taken at the closure {1,12}
  int common_row = find_row(all, {{Var::rate(l12), Rat(1)}});
  REQUIRE(common_row >= 0);
  CHECK(all.rows[common_row].rhs == receiver_mi_expr({l1, l12}, 1, {}, true));
  CHECK(all.rows[common_row].note.find("closes to") != std::string::npos);

  // both variants cut out the same region on a concrete instance
  testgen::Instance inst = testgen::random_two_user(7);
  InequalitySystem down = receivers_intersection(inst.spec, Var::Kind::Rate, false);
  InequalitySystem wide = receivers_intersection(inst.spec, Var::Kind::Rate, true);
  CHECK(wide.rows.size() > down.rows.size());
  EntropyAssignment assign =
      assignment_from_distribution(inst.joint, referenced_sets(down, wide));
  RegionCompare cmp = region_equal(down, wide, assign, 1e-9);
  CHECK(cmp.equal);

  // a window past 20 labels would need over a million subset rows
  std::vector<SubsetLabel> big;
  for (std::uint32_t m = 0; m < 21; ++m)
    big.push_back(SubsetLabel(1u | (m << 1)));
  ProblemSpec huge = ProblemSpec::make(
      MessageIndexFamily::make(6, big),
      SuperpositionOrder::discrete(MessageIndexFamily::make(6, big)), true);
  CHECK_THROWS_AS(receiver_polyhedron(huge, 1, Var::Kind::Rate, true),
                  ResourceLimitError);
}

TEST_CASE("partial families give per-receiver row counts from the windows") {
  SubsetLabel l1 = lab({1}), l13 = lab({1, 3}), l123 = lab({1, 2, 3});
  MessageIndexFamily fam = MessageIndexFamily::make(3, {l1, l13, l123});
  ProblemSpec spec = ProblemSpec::make(
      MessageIndexFamily::make(3, {l1, l123}),
      SuperpositionOrder::inclusion(fam), false);

  // chain 1 < 13 < 123: windows are suffixes, down-set counts equal sizes
  CHECK(receiver_polyhedron(spec, 1, Var::Kind::Rate).rows.size() == 3 + 3);
  CHECK(receiver_polyhedron(spec, 2, Var::Kind::Rate).rows.size() == 3 + 1);
  CHECK(receiver_polyhedron(spec, 3, Var::Kind::Rate).rows.size() == 3 + 2);
  CHECK(receivers_intersection(spec, Var::Kind::Rate).rows.size() == 3 + 6);

  // a receiver outside every label keeps only nonnegativity
  MessageIndexFamily narrow = MessageIndexFamily::make(3, {l1, l13});
  ProblemSpec gap = ProblemSpec::make(
      narrow, SuperpositionOrder::inclusion(narrow), false);
  CHECK(receiver_polyhedron(gap, 2, Var::Kind::Rate).rows.size() == 2);
}

TEST_CASE("problem specs validate their label families") {
  MessageIndexFamily two = MessageIndexFamily::full(2);
  CHECK_THROWS_AS(
      ProblemSpec::make(two, SuperpositionOrder::inclusion(MessageIndexFamily::full(3)),
                        true),
      std::invalid_argument);
  MessageIndexFamily outside = MessageIndexFamily::make(2, {lab({1, 2})});
  MessageIndexFamily inside = MessageIndexFamily::make(2, {lab({1})});
  CHECK_THROWS_AS(ProblemSpec::make(outside, SuperpositionOrder::discrete(inside), true),
                  std::invalid_argument);
}

TEST_CASE("legal split pairs enumerate message-into-label containments") {
  MessageIndexFamily full = MessageIndexFamily::full(2);
  auto pairs = legal_split_pairs(full, full);
  REQUIRE(pairs.size() == 5);
  SubsetLabel l1 = lab({1}), l2 = lab({2}), l12 = lab({1, 2});
  std::vector<std::pair<SubsetLabel, SubsetLabel>> want = {
      {l1, l1}, {l2, l2}, {l1, l12}, {l2, l12}, {l12, l12}};
  std::sort(want.begin(), want.end(), LabelPairLess{});
  CHECK(pairs == want);

  auto narrow = legal_split_pairs(MessageIndexFamily::make(2, {l1}), full);
  REQUIRE(narrow.size() == 2);
  CHECK(narrow[0] == std::pair{l1, l1});
  CHECK(narrow[1] == std::pair{l1, l12});
}

TEST_CASE("split system conserves each message rate across its splits") {
  ProblemSpec spec = two_user_spec();
  SubsetLabel l1 = lab({1}), l12 = lab({1, 2});
  InequalitySystem sys = split_rate_system(spec);

  CHECK(sys.vars.size() == 8);  // 3 rates + 5 splits
  CHECK(split_vars(sys).size() == 5);

  int conservation = 0;
  for (const Inequality& row : sys.rows)
    if (row.note == "R_1 split") ++conservation;
  CHECK(conservation == 2);  // equality stored as a complementary row pair

  // receiver 1 decoding {1} sees only the split staying on label 1
  int private_row = find_row(sys, {{Var::split(l1, l1), Rat(1)}});
  REQUIRE(private_row >= 0);
  CHECK(sys.rows[private_row].rhs == receiver_mi_expr({l1}, 1, {l12}, true));

  // decoding the whole window collects every split arriving inside it
  int full_row = find_row(sys, {{Var::split(l1, l1), Rat(1)},
                                {Var::split(l1, l12), Rat(1)},
                                {Var::split(lab({2}), l12), Rat(1)},
                                {Var::split(l12, l12), Rat(1)}});
  REQUIRE(full_row >= 0);
  CHECK(sys.rows[full_row].rhs == receiver_mi_expr({l1, l12}, 1, {}, true));

  // restricting the split set rejects pairs outside the legal list
  std::vector<std::pair<SubsetLabel, SubsetLabel>> bad = {{l12, l1}};
  CHECK_THROWS_AS(split_rate_system(spec, &bad), std::invalid_argument);
  std::vector<std::pair<SubsetLabel, SubsetLabel>> ok = {{l1, l1}, {l12, l12}};
  CHECK(split_rate_system(spec, &ok).vars.size() == 5);  // 3 rates + 2 splits
}

TEST_CASE("split projection lands on the two-user hand system") {
  testgen::Instance inst = testgen::random_two_user(7);
  InequalitySystem sys = split_rate_system(inst.spec);
  InequalitySystem proj = fm_eliminate(sys, split_vars(sys));
  for (const Var& v : proj.vars) CHECK(v.kind == Var::Kind::Rate);
  CHECK(proj.vars.size() == 3);

  InequalitySystem hand = known_region("two_user_fm");
  EntropyAssignment assign =
      assignment_from_distribution(inst.joint, referenced_sets(proj, hand));
  RegionCompare cmp = region_equal(proj, hand, assign, 1e-9);
  CHECK(cmp.equal);
}

TEST_CASE("exchange generators carry one unit transfer per strict pair") {
  ProblemSpec spec = two_user_spec();
  ConeGenerators gens = exchange_cone_generators(spec);
  SubsetLabel l1 = lab({1}), l2 = lab({2}), l12 = lab({1, 2});
  REQUIRE(gens.pairs.size() == 2);  // identity splits move nothing
  CHECK(gens.vars.size() == 3);
  CHECK(gens.pairs[0] == std::pair{l1, l12});
  CHECK(gens.pairs[1] == std::pair{l2, l12});
  CHECK(gens.vectors[0] == std::vector<Rat>{Rat(1), Rat(0), Rat(-1)});
  CHECK(gens.vectors[1] == std::vector<Rat>{Rat(0), Rat(1), Rat(-1)});

  // no message strictly inside another label, no generators
  MessageIndexFamily singles = MessageIndexFamily::make(2, {l1, l2});
  ProblemSpec flat = ProblemSpec::make(
      singles, SuperpositionOrder::discrete(singles), true);
  CHECK(exchange_cone_generators(flat).pairs.empty());
}

TEST_CASE("split maps certify their exchange vector over the cone") {
  MessageIndexFamily full = MessageIndexFamily::full(2);
  SubsetLabel l1 = lab({1}), l2 = lab({2}), l12 = lab({1, 2});
  SplitRateMap splits;
  splits[{l1, l12}] = 0.25;
  splits[{l2, l12}] = 0.5;
  splits[{l1, l1}] = 0.375;  // stays in place, no transfer

  ExchangeVector ex = split_to_exchange(splits, full, full);
  CHECK(ex.delta == std::vector<Rat>{Rat(1, 4), Rat(1, 2), Rat(-3, 4)});
  CHECK(ex.multipliers == std::vector<Rat>{Rat(1, 4), Rat(1, 2)});

  // the certificate reassembles the transfer from the generators
  std::vector<Rat> rebuilt(ex.vars.size(), Rat(0));
  for (std::size_t g = 0; g < ex.multipliers.size(); ++g)
    for (std::size_t i = 0; i < rebuilt.size(); ++i)
      rebuilt[i] += ex.multipliers[g] * ex.generators.vectors[g][i];
  CHECK(rebuilt == ex.delta);

  SplitRateMap illegal;
  illegal[{l12, l1}] = 0.1;
  CHECK_THROWS_AS(split_to_exchange(illegal, full, full), std::invalid_argument);
  SplitRateMap negative;
  negative[{l1, l12}] = -0.1;
  CHECK_THROWS_AS(split_to_exchange(negative, full, full), std::invalid_argument);
}

TEST_CASE("split elimination and the cone sum describe the same region") {
  auto check_routes = [](const ProblemSpec& spec, const JointDistribution& joint) {
    InequalitySystem sys = split_rate_system(spec);
    InequalitySystem proj = fm_eliminate(sys, split_vars(sys));
    InequalitySystem cone = minkowski_form_system(spec);
    REQUIRE(proj.vars == cone.vars);
    EntropyAssignment assign =
        assignment_from_distribution(joint, referenced_sets(proj, cone));
    RegionCompare cmp = region_equal(proj, cone, assign, 1e-9);
    CHECK_MESSAGE(cmp.equal, cmp.detail);
  };

  testgen::Instance a = testgen::random_instance(5, 2, 3, true);
  check_routes(a.spec, a.joint);
  testgen::Instance b = testgen::random_instance(9, 3, 4, false);
  check_routes(b.spec, b.joint);

  // a message relabeled onto a strictly larger label only
  SubsetLabel l1 = lab({1}), l12 = lab({1, 2});
  MessageIndexFamily labels = MessageIndexFamily::make(2, {l1, l12});
  ProblemSpec chain = ProblemSpec::make(MessageIndexFamily::make(2, {l1}),
                                        SuperpositionOrder::inclusion(labels), true);
  check_routes(chain, testgen::random_two_user(13).joint);
}

TEST_CASE("covering deficiency vanishes on chains and is mutual information on a pair") {
  SubsetLabel l1 = lab({1}), l2 = lab({2}), l12 = lab({1, 2});
  MessageIndexFamily nested = MessageIndexFamily::make(2, {l1, l12});
  SuperpositionOrder chain = SuperpositionOrder::inclusion(nested);

  CHECK(gamma_expr(chain, {l12}).is_zero());
  CHECK(gamma_expr(chain, {l1, l12}).is_zero());
  // {1} alone is not an up-set of the chain
  CHECK_THROWS_AS(gamma_expr(chain, {l1}), std::invalid_argument);

  MessageIndexFamily pair = MessageIndexFamily::make(2, {l1, l2});
  SuperpositionOrder discrete = SuperpositionOrder::discrete(pair);
  CHECK(gamma_expr(discrete, {l1}).is_zero());
  CHECK(gamma_expr(discrete, {l1, l2}) ==
        mutual_information_expr({Symbol::u(l1)}, {Symbol::u(l2)}));

  JointDistribution joint = testgen::random_pair_channel(5);
  double gamma = gamma_value(joint, discrete, {l1, l2});
  double mi = joint.evaluate(
      mutual_information_expr({Symbol::u(l1)}, {Symbol::u(l2)}));
  CHECK(gamma == doctest::Approx(mi).epsilon(1e-12));

  GammaTable table = gamma_table(joint, discrete);
  REQUIRE(table.up_sets.members.size() == 4);
  CHECK(table.values[0] == doctest::Approx(0.0));
  CHECK(table.values[1] == doctest::Approx(0.0));
  CHECK(table.values[2] == doctest::Approx(0.0));
  CHECK(table.values[3] == doctest::Approx(gamma));
}

TEST_CASE("covering region keeps only up-sets with positive deficiency") {
  SubsetLabel l1 = lab({1}), l2 = lab({2});
  SuperpositionOrder discrete =
      SuperpositionOrder::discrete(MessageIndexFamily::make(2, {l1, l2}));
  JointDistribution joint = testgen::random_pair_channel(11);
  double gamma = gamma_value(joint, discrete, {l1, l2});
  REQUIRE(gamma > 1e-3);  // the seeded pair is visibly dependent

  InequalitySystem sys = covering_region(joint, discrete);
  CHECK(sys.vars.size() == 2);
  for (const Var& v : sys.vars) CHECK(v.kind == Var::Kind::CoverRate);
  REQUIRE(sys.rows.size() == 3);  // 2 nonneg + the joint up-set

  int joint_row =
      find_row(sys, {{Var::cover_rate(l1), Rat(-1)}, {Var::cover_rate(l2), Rat(-1)}});
  REQUIRE(joint_row >= 0);
  CHECK(sys.rows[joint_row].note.find("covering") != std::string::npos);
  CHECK(sys.rows[joint_row].rhs.terms.empty());

  EntropyAssignment empty;
  CHECK(evaluate_point(sys, empty, {gamma + 1e-9, 0.0}, 1e-9));
  CHECK(!evaluate_point(sys, empty, {gamma / 4, gamma / 4}, 1e-9));

  // on a chain every deficiency vanishes, leaving nonnegativity alone
  testgen::Instance degraded = testgen::random_degraded_chain(3);
  InequalitySystem trivial = covering_region(degraded.joint, degraded.spec.order);
  CHECK(trivial.rows.size() == trivial.vars.size());
}

TEST_CASE("binning system ties codebook rates to splits through the deficiency") {
  SubsetLabel l1 = lab({1}), l2 = lab({2});
  MessageIndexFamily pair = MessageIndexFamily::make(2, {l1, l2});
  ProblemSpec spec =
      ProblemSpec::make(pair, SuperpositionOrder::discrete(pair), false);

  InequalitySystem sys = binning_system(spec);
  CHECK(sys.vars.size() == 6);  // 2 rates + 2 identity splits + 2 codebook rates
  CHECK(sys.rows.size() == 13);

  // singleton up-sets have zero deficiency, their rows just order the rates
  int single = find_row(sys, {{Var::rate_tilde(l1), Rat(-1)},
                              {Var::split(l1, l1), Rat(1)}});
  REQUIRE(single >= 0);
  CHECK(sys.rows[single].rhs.is_zero());

  // the joint up-set charges the mutual information between the auxiliaries
  int joint_row = find_row(sys, {{Var::rate_tilde(l1), Rat(-1)},
                                 {Var::rate_tilde(l2), Rat(-1)},
                                 {Var::split(l1, l1), Rat(1)},
                                 {Var::split(l2, l2), Rat(1)}});
  REQUIRE(joint_row >= 0);
  CHECK(sys.rows[joint_row].rhs ==
        mutual_information_expr({Symbol::u(l1)}, {Symbol::u(l2)}) * Rat(-1));

  CHECK(binning_system(spec, nullptr, true).rows.size() == 15);

  ProblemSpec shared = ProblemSpec::make(pair, SuperpositionOrder::discrete(pair), true);
  CHECK_THROWS_AS(binning_system(shared), std::invalid_argument);
}

TEST_CASE("binning projection recovers the two-auxiliary hand region") {
  SubsetLabel l1 = lab({1}), l2 = lab({2});
  MessageIndexFamily pair = MessageIndexFamily::make(2, {l1, l2});
  ProblemSpec spec =
      ProblemSpec::make(pair, SuperpositionOrder::discrete(pair), false);

  InequalitySystem sys = binning_system(spec);
  std::vector<Var> drop;
  for (const Var& v : sys.vars)
    if (v.kind != Var::Kind::Rate) drop.push_back(v);
  InequalitySystem proj = fm_eliminate(sys, drop);
  REQUIRE(proj.vars.size() == 2);

  Symbol u1 = Symbol::u(l1), u2 = Symbol::u(l2);
  InequalitySystem hand;
  hand.vars = {Var::rate(l1), Var::rate(l2)};
  for (const Var& v : hand.vars) hand.add_nonneg(v, "nonnegativity");
  hand.add_row({{Var::rate(l1), Rat(1)}},
               mutual_information_expr({u1}, {Symbol::y(1)}),
               "first auxiliary at its receiver", true);
  hand.add_row({{Var::rate(l2), Rat(1)}},
               mutual_information_expr({u2}, {Symbol::y(2)}),
               "second auxiliary at its receiver", true);
  EntropyExpr sum = mutual_information_expr({u1}, {Symbol::y(1)});
  sum += mutual_information_expr({u2}, {Symbol::y(2)});
  sum -= mutual_information_expr({u1}, {u2});
  hand.add_row({{Var::rate(l1), Rat(1)}, {Var::rate(l2), Rat(1)}}, sum,
               "sum rate pays the dependence between the auxiliaries");

  JointDistribution joint = testgen::random_pair_channel(17);
  EntropyAssignment assign =
      assignment_from_distribution(joint, referenced_sets(proj, hand));
  RegionCompare cmp = region_equal(proj, hand, assign, 1e-9);
  CHECK_MESSAGE(cmp.equal, cmp.detail);
}

TEST_CASE("hand-transcribed regions expose their documented variables") {
  InequalitySystem km = known_region("korner_marton");
  REQUIRE(km.vars.size() == 2);
  CHECK(km.vars[0].name() == "R_1");
  CHECK(km.vars[1].name() == "R_12");
  CHECK(km.rows.size() == 5);
  bool weak = false;
  for (const Inequality& row : km.rows)
    if (row.note == "common rate at the weak receiver") weak = true;
  CHECK(weak);

  InequalitySystem cover = known_region("cover");
  CHECK(cover.vars.size() == 3);
  CHECK(cover.rows.size() == 9);

  InequalitySystem fm = known_region("two_user_fm");
  CHECK(fm.vars.size() == 3);
  CHECK(fm.rows.size() == 7);

  InequalitySystem ne = known_region("nair_elgamal");
  REQUIRE(ne.vars.size() == 2);
  CHECK(ne.vars[0].name() == "R_1");
  CHECK(ne.vars[1].name() == "R_123");
  CHECK(ne.rows.size() == 7);

  CHECK_THROWS_AS(known_region("three_user_fm"), std::invalid_argument);
}
