#include <doctest.h>

#include "groupcast/covering.hpp"
#include "random_instances.hpp"

using namespace groupcast;
using testgen::lab;

namespace {

// Perfectly correlated bits.
JointDistribution diagonal_pair() {
  VariableUniverse u = VariableUniverse::make(
      {Symbol::u(lab({1})), Symbol::u(lab({2}))}, {2, 2});
  return JointDistribution::make(u, {0.5, 0.0, 0.0, 0.5});
}

JointDistribution independent_pair() {
  VariableUniverse u = VariableUniverse::make(
      {Symbol::u(lab({1})), Symbol::u(lab({2}))}, {2, 2});
  return JointDistribution::make(u, {0.25, 0.25, 0.25, 0.25});
}

CoveringExperiment pair_experiment(std::uint64_t seed) {
  SubsetLabel l1 = lab({1}), l2 = lab({2});
  MessageIndexFamily fam = MessageIndexFamily::make(2, {l1, l2});
  CoveringExperiment exp;
  exp.order = SuperpositionOrder::discrete(fam);
  exp.target = testgen::random_pair_channel(11).marginal(
      sym_set({Symbol::u(l1), Symbol::u(l2)}));
  double gamma = gamma_value(exp.target, exp.order, {l1, l2});
  exp.rates = {(gamma + 0.2) / 2, (gamma + 0.2) / 2};
  exp.eps = 0.125;
  exp.seed = seed;
  return exp;
}

}  // namespace

TEST_CASE("joint typicality counts cells within the relative band") {
  JointDistribution diag = diagonal_pair();
  std::vector<int> a = {0, 1, 0, 1};
  std::vector<int> b = {0, 1, 0, 1};
  CHECK(jointly_typical({&a, &b}, diag, 0.1));

  // one off-diagonal letter lands mass on a zero cell
  std::vector<int> c = {0, 1, 0, 0};
  CHECK(!jointly_typical({&a, &c}, diag, 0.1));

  // a lopsided word misses the band even on the diagonal
  std::vector<int> heavy = {0, 0, 0, 1};
  CHECK(!jointly_typical({&heavy, &heavy}, diag, 0.1));
  // a wide band forgives the same imbalance
  CHECK(jointly_typical({&heavy, &heavy}, diag, 0.6));

  std::vector<int> short_word = {0, 1};
  CHECK_THROWS_AS(jointly_typical({&a, &short_word}, diag, 0.1),
                  std::invalid_argument);
  std::vector<int> wild = {0, 1, 0, 2};
  CHECK_THROWS_AS(jointly_typical({&a, &wild}, diag, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(jointly_typical({&a}, diag, 0.1), std::invalid_argument);
}

TEST_CASE("codeword counts are the quantized rates") {
  CoveringExperiment exp = pair_experiment(0);
  exp.n = 100;
  exp.rates = {0.035, 0.0};
  CHECK(exp.codebook_sizes() == std::vector<std::size_t>{4, 1});
  exp.n = 10;
  exp.rates = {0.3, 1.0};
  CHECK(exp.codebook_sizes() == std::vector<std::size_t>{3, 10});
  exp.n = 50;
  exp.rates = {0.5, 0.02};
  CHECK(exp.codebook_sizes() == std::vector<std::size_t>{25, 1});
}

TEST_CASE("experiments validate their fields") {
  CHECK_NOTHROW(pair_experiment(0).validate());

  CoveringExperiment exp = pair_experiment(0);
  exp.rates = {0.1};
  CHECK_THROWS_AS(exp.validate(), std::invalid_argument);
  exp = pair_experiment(0);
  exp.rates = {0.1, -0.1};
  CHECK_THROWS_AS(exp.validate(), std::invalid_argument);
  exp = pair_experiment(0);
  exp.n = 0;
  CHECK_THROWS_AS(exp.validate(), std::invalid_argument);
  exp = pair_experiment(0);
  exp.trials = 0;
  CHECK_THROWS_AS(exp.validate(), std::invalid_argument);
  exp = pair_experiment(0);
  exp.eps = 1.0;
  CHECK_THROWS_AS(exp.validate(), std::invalid_argument);
  exp = pair_experiment(0);
  exp.eps = 0.0;
  CHECK_THROWS_AS(exp.validate(), std::invalid_argument);

  // the target must range over exactly the family's auxiliaries
  exp = pair_experiment(0);
  exp.target = exp.target.marginal(sym_set({Symbol::u(lab({1}))}));
  CHECK_THROWS_AS(exp.validate(), std::invalid_argument);

  // the index tuple space is capped
  exp = pair_experiment(0);
  exp.n = 50;
  exp.trials = 1;
  exp.tuple_cap = 4;
  CHECK_THROWS_AS(run_covering(exp), ResourceLimitError);
}

TEST_CASE("identical seeds reproduce runs bit for bit") {
  CoveringExperiment exp = pair_experiment(5);
  exp.n = 60;
  exp.trials = 40;

  CoveringResult first = run_covering(exp);
  CoveringResult second = run_covering(exp);
  CHECK(first.successes == second.successes);
  CHECK(first.estimate == second.estimate);
  CHECK(first.half_width == second.half_width);
  CHECK(first.trials == 40);
  CHECK(first.estimate ==
        doctest::Approx(first.successes / 40.0).epsilon(1e-15));

  // distinct trials draw distinct codebooks from their own streams
  auto trial0 = draw_trial_codebooks(exp, 0);
  auto trial0_again = draw_trial_codebooks(exp, 0);
  auto trial1 = draw_trial_codebooks(exp, 1);
  CHECK(trial0 == trial0_again);
  CHECK(trial0 != trial1);
}

TEST_CASE("wilson interval matches the hand-computed half-width") {
  CoveringExperiment exp = pair_experiment(5);
  exp.n = 60;
  exp.trials = 100;
  CoveringResult res = run_covering(exp);
  if (res.successes == 50)
    CHECK(res.half_width == doctest::Approx(0.09617017140985284).epsilon(1e-12));
  // the width is maximal at an even split, so this bounds every outcome
  CHECK(res.half_width > 0.0);
  CHECK(res.half_width <= 0.09617017140985284 + 1e-12);

  // full success keeps a positive width
  CoveringExperiment sure = pair_experiment(5);
  sure.n = 60;
  sure.trials = 40;
  sure.rates = {1.2, 1.2};
  sure.tuple_cap = std::size_t{1} << 24;
  CoveringResult all = run_covering(sure);
  if (all.successes == 40)
    CHECK(all.half_width == doctest::Approx(0.04381226962519617).epsilon(1e-12));
}

TEST_CASE("codewords follow the target law along the superposition order") {
  // chain 1 < 12 with visibly correlated layers
  SubsetLabel l1 = lab({1}), l12 = lab({1, 2});
  MessageIndexFamily fam = MessageIndexFamily::make(2, {l1, l12});
  VariableUniverse u = VariableUniverse::make(
      {Symbol::u(l1), Symbol::u(l12)}, {2, 2});
  CoveringExperiment exp;
  exp.target = JointDistribution::make(u, {0.4, 0.1, 0.1, 0.4});
  exp.order = SuperpositionOrder::inclusion(fam);
  exp.seed = 21;
  exp.n = 20000;
  exp.rates = {0.0, 0.0};  // one codeword per label
  exp.trials = 1;

  auto books = draw_trial_codebooks(exp, 0);
  REQUIRE(books.size() == 2);
  REQUIRE(books[0].size() == 1);
  REQUIRE(books[1].size() == 1);
  const std::vector<int>& bottom = books[0].begin()->second;
  const std::vector<int>& top = books[1].begin()->second;
  REQUIRE(bottom.size() == 20000);
  REQUIRE(top.size() == 20000);

  // letterwise empirical joint stays within a few standard deviations
  double counts[2][2] = {};
  for (int t = 0; t < exp.n; ++t) counts[bottom[t]][top[t]] += 1.0;
  CHECK(counts[0][0] / exp.n == doctest::Approx(0.4).epsilon(0.05));
  CHECK(counts[0][1] / exp.n == doctest::Approx(0.1).epsilon(0.2));
  CHECK(counts[1][0] / exp.n == doctest::Approx(0.1).epsilon(0.2));
  CHECK(counts[1][1] / exp.n == doctest::Approx(0.4).epsilon(0.05));

  // two indices under the same ancestor draw independent words
  exp.n = 64;
  exp.rates = {2.0 / 64, 0.0};
  auto two = draw_trial_codebooks(exp, 0);
  REQUIRE(two[0].size() == 2);
  CHECK(two[0].at(0) != two[0].at(1));
  CHECK(two[1].size() == 1);
}

TEST_CASE("exhaustive search over flat codebooks finds a planted tuple") {
  JointDistribution flat = independent_pair();
  std::vector<int> balanced_a = {0, 0, 1, 1};
  std::vector<int> balanced_b = {0, 1, 0, 1};
  std::vector<int> stuck = {0, 0, 0, 0};

  // each balanced pair hits every cell exactly once
  CHECK(jointly_typical({&balanced_a, &balanced_b}, flat, 0.1));
  CHECK(!jointly_typical({&stuck, &balanced_b}, flat, 0.1));

  std::vector<std::vector<std::vector<int>>> books = {
      {stuck, balanced_a}, {stuck, balanced_b}};
  CHECK(exhaustive_joint_typicality(books, flat, 0.1));

  std::vector<std::vector<std::vector<int>>> hopeless = {{stuck}, {stuck}};
  CHECK(!exhaustive_joint_typicality(hopeless, flat, 0.1));

  std::vector<std::vector<std::vector<int>>> missing = {{stuck, balanced_a}, {}};
  CHECK(!exhaustive_joint_typicality(missing, flat, 0.1));

  std::vector<std::vector<std::vector<int>>> wide = {
      {stuck, stuck, stuck}, {stuck, stuck, stuck}};
  CHECK_THROWS_AS(exhaustive_joint_typicality(wide, flat, 0.1, 8),
                  ResourceLimitError);
  CHECK(!exhaustive_joint_typicality(wide, flat, 0.1, 9));
}

TEST_CASE("a jointly typical tuple is typical in every marginal") {
  // the prefilter discards a tuple only on a failed letter marginal, which
  // joint typicality at the same band already rules out
  JointDistribution flat = independent_pair();
  std::vector<int> balanced_a = {0, 0, 1, 1};
  std::vector<int> balanced_b = {0, 1, 0, 1};
  REQUIRE(jointly_typical({&balanced_a, &balanced_b}, flat, 0.1));
  JointDistribution m1 = flat.marginal(sym_set({Symbol::u(lab({1}))}));
  JointDistribution m2 = flat.marginal(sym_set({Symbol::u(lab({2}))}));
  CHECK(jointly_typical({&balanced_a}, m1, 0.1));
  CHECK(jointly_typical({&balanced_b}, m2, 0.1));
}

TEST_CASE("success climbs with blocklength at fixed interior rates") {
  CoveringExperiment small = pair_experiment(11);
  small.n = 40;
  small.trials = 60;
  CoveringExperiment big = pair_experiment(11);
  big.n = 120;
  big.trials = 60;

  CoveringResult at40 = run_covering(small);
  CoveringResult at120 = run_covering(big);
  CHECK(at120.successes >= at40.successes);
  CHECK(at120.estimate > 0.5);  // interior rates succeed at moderate length
}
