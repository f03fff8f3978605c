#include <doctest.h>

#include <optional>
#include <random>

#include "groupcast/simplex.hpp"

using namespace groupcast;

namespace {

bool satisfies(const std::vector<std::vector<Rat>>& A,
               const std::vector<Rat>& b, const std::vector<Rat>& p) {
  for (std::size_t i = 0; i < A.size(); ++i) {
    Rat lhs = 0;
    for (std::size_t j = 0; j < p.size(); ++j) lhs += A[i][j] * p[j];
    if (lhs > b[i]) return false;
  }
  return true;
}

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

// Independent 2-variable oracle: intersect every row pair exactly, keep the
// feasible vertices, maximize over them.  Valid for bounded feasible sets.
std::optional<Rat> vertex_oracle(const std::vector<std::vector<Rat>>& A,
                                 const std::vector<Rat>& b,
                                 const std::vector<Rat>& c) {
  std::optional<Rat> best;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = i + 1; j < A.size(); ++j) {
      Rat det = A[i][0] * A[j][1] - A[i][1] * A[j][0];
      if (det == 0) continue;
      std::vector<Rat> p = {(b[i] * A[j][1] - A[i][1] * b[j]) / det,
                            (A[i][0] * b[j] - b[i] * A[j][0]) / det};
      if (!satisfies(A, b, p)) continue;
      Rat v = dot(c, p);
      if (!best || v > *best) best = v;
    }
  return best;
}

}  // namespace

TEST_CASE("box maximum sits at the corner") {
  std::vector<std::vector<Rat>> A = {
      {1, 0}, {0, 1}, {Rat(-1), 0}, {0, Rat(-1)}};
  std::vector<Rat> b = {1, 2, 0, 0};
  lp::Result r = lp::maximize(A, b, {1, 1});
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.value == Rat(3));
  CHECK(r.point == std::vector<Rat>{1, 2});
}

TEST_CASE("fractional vertex is exact") {
  std::vector<std::vector<Rat>> A = {
      {1, 1}, {1, 0}, {Rat(-1), 0}, {0, Rat(-1)}};
  std::vector<Rat> b = {Rat(5, 2), Rat(3, 2), 0, 0};
  lp::Result r = lp::maximize(A, b, {3, 2});
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.value == Rat(13, 2));
  CHECK(dot({3, 2}, r.point) == Rat(13, 2));
  CHECK(satisfies(A, b, r.point));
}

TEST_CASE("unbounded direction comes with a certificate") {
  // only y is capped; x runs free
  std::vector<std::vector<Rat>> A = {{0, 1}, {0, Rat(-1)}};
  std::vector<Rat> b = {1, 0};
  lp::Result r = lp::maximize(A, b, {1, 0});
  REQUIRE(r.status == lp::Status::Unbounded);
  CHECK(satisfies(A, b, r.point));
  REQUIRE(r.ray.size() == 2);
  CHECK(dot({1, 0}, r.ray) > 0);
  // the ray stays feasible: A ray <= 0
  for (std::size_t i = 0; i < A.size(); ++i) CHECK(dot(A[i], r.ray) <= 0);
}

TEST_CASE("empty polyhedron reports infeasible") {
  std::vector<std::vector<Rat>> A = {{1}, {Rat(-1)}};
  std::vector<Rat> b = {Rat(-1), 0};
  CHECK(lp::maximize(A, b, {1}).status == lp::Status::Infeasible);
  CHECK(lp::feasible_point(A, b, 1).status == lp::Status::Infeasible);
}

TEST_CASE("degenerate ties terminate") {
  std::vector<std::vector<Rat>> A = {
      {1, 0}, {0, 1}, {1, 1}, {Rat(-1), 0}, {0, Rat(-1)}};
  std::vector<Rat> b = {1, 1, 2, 0, 0};
  lp::Result r = lp::maximize(A, b, {1, 1});
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.value == Rat(2));
}

TEST_CASE("equality via opposing rows") {
  std::vector<std::vector<Rat>> A = {{1, 1}, {Rat(-1), Rat(-1)}, {0, Rat(-1)}};
  std::vector<Rat> b = {1, Rat(-1), 0};
  lp::Result r = lp::maximize(A, b, {1, 0});
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.value == Rat(1));
}

TEST_CASE("random bounded systems match the vertex oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coeff(-3, 3), rhs(-2, 6), rows(2, 6);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::vector<Rat>> A = {
        {1, 0}, {0, 1}, {Rat(-1), 0}, {0, Rat(-1)}};
    std::vector<Rat> b = {4, 4, 4, 4};
    int extra = rows(rng);
    for (int i = 0; i < extra; ++i) {
      A.push_back({coeff(rng), coeff(rng)});
      b.push_back(rhs(rng));
    }
    std::vector<Rat> c = {coeff(rng), coeff(rng)};
    CAPTURE(trial);
    lp::Result r = lp::maximize(A, b, c);
    std::optional<Rat> want = vertex_oracle(A, b, c);
    if (!want) {
      CHECK(r.status == lp::Status::Infeasible);
      continue;
    }
    REQUIRE(r.status == lp::Status::Optimal);
    CHECK(r.value == *want);
    CHECK(satisfies(A, b, r.point));
    CHECK(dot(c, r.point) == r.value);
  }
}

TEST_CASE("feasible point satisfies every row") {
  std::vector<std::vector<Rat>> A = {{2, 1}, {Rat(-1), 2}, {0, Rat(-1)}};
  std::vector<Rat> b = {3, 1, 0};
  lp::Result r = lp::feasible_point(A, b, 2);
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(satisfies(A, b, r.point));
}
