#include <doctest.h>

#include <random>

#include "groupcast/demos.hpp"
#include "groupcast/fm.hpp"
#include "groupcast/region_ops.hpp"
#include "groupcast/simplex.hpp"

using namespace groupcast;

namespace {

EntropyExpr cst(int num, int den = 1) {
  return EntropyExpr::from_constant(Rat(num, den));
}

// Numeric-rhs helper system over aux variables x_0..x_{n-1}.
InequalitySystem numeric_system(
    int nvars, const std::vector<std::pair<std::vector<int>, Rat>>& rows) {
  InequalitySystem sys;
  for (int i = 0; i < nvars; ++i) sys.vars.push_back(Var::aux(i));
  for (const auto& [coeffs, rhs] : rows) {
    std::vector<std::pair<Var, Rat>> lhs;
    for (int i = 0; i < nvars; ++i)
      if (coeffs[std::size_t(i)] != 0)
        lhs.emplace_back(Var::aux(i), Rat(coeffs[std::size_t(i)]));
    sys.add_row(lhs, EntropyExpr::from_constant(rhs), "");
  }
  return sys;
}

// LP membership test on the raw system, independent of evaluate_point.
bool lp_member(const InequalitySystem& sys, const std::vector<Rat>& point) {
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  for (const Inequality& row : sys.rows) {
    A.push_back(row.coeffs);
    b.push_back(row.rhs.constant);
  }
  // pin every coordinate with a pair of rows
  for (std::size_t i = 0; i < point.size(); ++i) {
    std::vector<Rat> up(point.size(), Rat(0)), down(point.size(), Rat(0));
    up[i] = 1;
    down[i] = -1;
    A.push_back(up);
    b.push_back(point[i]);
    A.push_back(down);
    b.push_back(-point[i]);
  }
  return lp::feasible_point(A, b, point.size()).status ==
         lp::Status::Optimal;
}

// Membership in the projection of sys onto the non-eliminated coordinates,
// decided by LP with the eliminated coordinates left free.
bool lp_member_projected(const InequalitySystem& sys,
                         const std::vector<int>& keep_cols,
                         const std::vector<Rat>& point) {
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  for (const Inequality& row : sys.rows) {
    A.push_back(row.coeffs);
    b.push_back(row.rhs.constant);
  }
  for (std::size_t k = 0; k < keep_cols.size(); ++k) {
    std::vector<Rat> up(sys.vars.size(), Rat(0)), down(sys.vars.size(), Rat(0));
    up[std::size_t(keep_cols[k])] = 1;
    down[std::size_t(keep_cols[k])] = -1;
    A.push_back(up);
    b.push_back(point[k]);
    A.push_back(down);
    b.push_back(-point[k]);
  }
  return lp::feasible_point(A, b, sys.vars.size()).status ==
         lp::Status::Optimal;
}

}  // namespace

TEST_CASE("pairing rows projects a variable out") {
  // x+y <= 2, x-y <= 0, y <= 3: eliminating y leaves x <= 1
  InequalitySystem sys = numeric_system(
      2, {{{1, 1}, Rat(2)}, {{1, -1}, Rat(0)}, {{0, 1}, Rat(3)}});
  InequalitySystem out = fm_eliminate(sys, {Var::aux(1)});
  REQUIRE(out.vars.size() == 1);
  REQUIRE(out.rows.size() == 1);
  REQUIRE(out.rows[0].coeffs[0] > 0);
  CHECK(out.rows[0].rhs.constant / out.rows[0].coeffs[0] == Rat(1));
}

TEST_CASE("equality rows substitute instead of pairing") {
  // R = r0 + r1, r0 <= 1, r1 <= 1/2, both nonnegative; eliminate the splits
  InequalitySystem sys;
  sys.vars = {Var::aux(0), Var::aux(1), Var::aux(2)};
  sys.add_equality({{Var::aux(0), 1}, {Var::aux(1), -1}, {Var::aux(2), -1}},
                   cst(0), "definition");
  sys.add_row({{Var::aux(1), 1}}, cst(1), "");
  sys.add_row({{Var::aux(2), 1}}, cst(1, 2), "");
  sys.add_nonneg(Var::aux(1));
  sys.add_nonneg(Var::aux(2));
  InequalitySystem out =
      fm_eliminate(sys, {Var::aux(1), Var::aux(2)});
  // projection: 0 <= R <= 3/2
  lp::Result hi = lp::maximize(
      [&] {
        std::vector<std::vector<Rat>> A;
        for (const auto& row : out.rows) A.push_back(row.coeffs);
        return A;
      }(),
      [&] {
        std::vector<Rat> b;
        for (const auto& row : out.rows) b.push_back(row.rhs.constant);
        return b;
      }(),
      {1});
  REQUIRE(hi.status == lp::Status::Optimal);
  CHECK(hi.value == Rat(3, 2));
  CHECK(lp_member(out, {Rat(0)}));
  CHECK(!lp_member(out, {Rat(-1, 4)}));
}

TEST_CASE("projection equals the LP shadow on a grid") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<int> coeff(-2, 2), rhs(0, 4);
  for (int trial = 0; trial < 12; ++trial) {
    CAPTURE(trial);
    std::vector<std::pair<std::vector<int>, Rat>> rows;
    for (int i = 0; i < 6; ++i)
      rows.push_back({{coeff(rng), coeff(rng), coeff(rng)}, Rat(rhs(rng))});
    // keep it bounded below to avoid an empty-looking shadow
    rows.push_back({{-1, 0, 0}, Rat(3)});
    rows.push_back({{0, -1, 0}, Rat(3)});
    rows.push_back({{0, 0, -1}, Rat(3)});
    InequalitySystem sys = numeric_system(3, rows);
    InequalitySystem projected = fm_eliminate(sys, {Var::aux(2)});
    REQUIRE(projected.vars.size() == 2);
    EntropyAssignment none;
    for (int xi = -3; xi <= 4; ++xi)
      for (int yi = -3; yi <= 4; ++yi) {
        std::vector<Rat> p = {Rat(xi), Rat(yi)};
        bool in_shadow = lp_member_projected(sys, {0, 1}, p);
        bool in_projection = lp_member(projected, p);
        CAPTURE(xi);
        CAPTURE(yi);
        CHECK(in_shadow == in_projection);
      }
  }
}

TEST_CASE("zero substitution keeps infeasibility visible") {
  // x0 - x1 <= -1 pinned at x1 = 0 forces x0 <= -1 alongside x0 >= 0
  InequalitySystem sys = numeric_system(2, {{{1, -1}, Rat(-1)}});
  sys.add_nonneg(Var::aux(0));
  InequalitySystem out = substitute_zero(sys, {Var::aux(1)});
  REQUIRE(out.vars.size() == 1);
  CHECK(!lp_member(out, {Rat(0)}));
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  for (const Inequality& row : out.rows) {
    A.push_back(row.coeffs);
    b.push_back(row.rhs.constant);
  }
  CHECK(lp::feasible_point(A, b, 1).status == lp::Status::Infeasible);
}

TEST_CASE("cone sum matches the interval oracle") {
  // unit square plus the cone spanned by (1,-1)
  InequalitySystem square = numeric_system(
      2, {{{1, 0}, Rat(1)}, {{0, 1}, Rat(1)}, {{-1, 0}, Rat(0)},
          {{0, -1}, Rat(0)}});
  InequalitySystem sum =
      minkowski_sum_with_cone(square, {{Rat(1), Rat(-1)}});
  for (int xi = -2; xi <= 4; ++xi)
    for (int yi = -2; yi <= 4; ++yi) {
      // (x,y) reachable iff some t >= 0 pulls it back into the square
      bool want = xi >= 0 && yi <= 1 && xi + yi >= 0 && xi + yi <= 2;
      CAPTURE(xi);
      CAPTURE(yi);
      CHECK(lp_member(sum, {Rat(xi), Rat(yi)}) == want);
    }
}

TEST_CASE("exact redundancy removal keeps a minimal description") {
  InequalitySystem sys = numeric_system(
      2, {{{1, 0}, Rat(1)}, {{1, 0}, Rat(2)}, {{0, 1}, Rat(1)},
          {{1, 1}, Rat(2)}, {{-1, 0}, Rat(0)}, {{0, -1}, Rat(0)}});
  InequalitySystem out = remove_redundant_exact(sys);
  CHECK(out.rows.size() == 4);  // the unit square
  for (int xi = -1; xi <= 2; ++xi)
    for (int yi = -1; yi <= 2; ++yi)
      CHECK(lp_member(out, {Rat(xi), Rat(yi)}) ==
            (xi >= 0 && xi <= 1 && yi >= 0 && yi <= 1));
}

TEST_CASE("region comparison finds witnesses") {
  EntropyAssignment none;
  InequalitySystem unit = numeric_system(
      2, {{{1, 0}, Rat(1)}, {{0, 1}, Rat(1)}, {{-1, 0}, Rat(0)},
          {{0, -1}, Rat(0)}});
  InequalitySystem padded = numeric_system(
      2, {{{1, 0}, Rat(1)}, {{0, 1}, Rat(1)}, {{1, 1}, Rat(2)},
          {{-1, 0}, Rat(0)}, {{0, -1}, Rat(0)}});
  RegionCompare same = region_equal(unit, padded, none, 1e-9);
  CHECK(same.equal);

  InequalitySystem bigger = numeric_system(
      2, {{{1, 0}, Rat(2)}, {{0, 1}, Rat(1)}, {{-1, 0}, Rat(0)},
          {{0, -1}, Rat(0)}});
  RegionCompare diff = region_equal(unit, bigger, none, 1e-9);
  CHECK(!diff.equal);
  REQUIRE(diff.witness.has_value());
  // the witness lives in the bigger region and breaks a row of the smaller
  CHECK(!diff.witness_in_first);
  CHECK(lp_member(bigger, *diff.witness));
  CHECK(!lp_member(unit, *diff.witness));
}

TEST_CASE("point evaluation respects the tolerance") {
  InequalitySystem sys = numeric_system(1, {{{1}, Rat(1)}});
  EntropyAssignment none;
  std::string why;
  CHECK(evaluate_point(sys, none, {1.0 + 1e-12}, 1e-9));
  CHECK(!evaluate_point(sys, none, {1.0 + 1e-6}, 1e-9, &why));
  CHECK(!why.empty());
}

TEST_CASE("binding an assignment turns entropies into numbers") {
  InequalitySystem sys;
  sys.vars = {Var::aux(0)};
  SymbolSet x = sym_set({Symbol::x()});
  sys.add_row({{Var::aux(0), 1}}, EntropyExpr::entropy(x), "");
  EntropyAssignment assign;
  assign.values[x] = Rat(3, 2);
  InequalitySystem bound = bind_assignment(sys, assign);
  CHECK(bound.rows[0].rhs.is_constant());
  CHECK(bound.rows[0].rhs.constant == Rat(3, 2));
  EntropyAssignment empty;
  CHECK_THROWS_AS(bind_assignment(sys, empty), std::invalid_argument);
}

TEST_CASE("polygon vertices of the unit square") {
  InequalitySystem square = numeric_system(
      2, {{{1, 0}, Rat(1)}, {{0, 1}, Rat(1)}, {{-1, 0}, Rat(0)},
          {{0, -1}, Rat(0)}});
  std::vector<std::array<Rat, 2>> verts = polygon_vertices(square);
  REQUIRE(verts.size() == 4);
  for (const auto& v : verts)
    CHECK((v[0] == 0 || v[0] == 1));
}
