#include <gtest/gtest.h>

#include <random>

#include "sdl/lp.hpp"

using namespace sdl;

namespace {

using Terms = std::vector<std::pair<std::size_t, Rational>>;

// max c.x over x >= 0, A x <= b in two variables by enumerating all vertices:
// intersections of pairs among the constraint and axis lines.
std::optional<Rational> vertex_oracle(const std::vector<std::array<Rational, 3>>& rows, Rational c0, Rational c1) {
  std::vector<std::array<Rational, 3>> lines = rows;
  lines.push_back({Rational(-1), Rational(0), Rational(0)});
  lines.push_back({Rational(0), Rational(-1), Rational(0)});
  std::optional<Rational> best;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& a = lines[i];
      const auto& b = lines[j];
      Rational det = a[0] * b[1] - a[1] * b[0];
      if (det == 0) continue;
      Rational x = (a[2] * b[1] - a[1] * b[2]) / det;
      Rational y = (a[0] * b[2] - a[2] * b[0]) / det;
      bool feasible = x >= 0 && y >= 0;
      for (const auto& r : rows) feasible = feasible && r[0] * x + r[1] * y <= r[2];
      if (!feasible) continue;
      Rational v = c0 * x + c1 * y;
      if (!best || v > *best) best = v;
    }
  return best;
}

}  // namespace

TEST(Lp, SmallOptimumWithDual) {
  LpProblem<Rational> p;
  p.add_var("x");
  p.add_row({{0, Rational(1)}}, Sense::Le, Rational(1, 2));
  p.objective = {{0, Rational(1)}};
  auto r = lp_solve(p);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_EQ(r.value, Rational(1, 2));
  EXPECT_EQ(r.dual[0], Rational(1));
  EXPECT_TRUE(verify_certificate(p, r).ok);
}

TEST(Lp, InfeasibleHasFarkasCertificate) {
  LpProblem<Rational> p;
  p.add_var("x");
  p.add_row({{0, Rational(1)}}, Sense::Le, Rational(0));
  p.add_row({{0, Rational(1)}}, Sense::Ge, Rational(1));
  auto r = lp_solve(p);
  ASSERT_EQ(r.status, LpStatus::Infeasible);
  EXPECT_TRUE(verify_certificate(p, r).ok);
  // y^T b < 0 with y sign-feasible, checked by hand
  Rational yb = r.dual[0] * Rational(0) + r.dual[1] * Rational(1);
  EXPECT_LT(yb, Rational(0));
}

TEST(Lp, Unbounded) {
  LpProblem<Rational> p;
  p.add_var("x");
  p.add_var("y");
  p.add_row({{0, Rational(1)}, {1, Rational(-1)}}, Sense::Le, Rational(1));
  p.objective = {{0, Rational(1)}};
  EXPECT_EQ(lp_solve(p).status, LpStatus::Unbounded);
}

TEST(Lp, EqualityAndMinimize) {
  LpProblem<Rational> p;
  p.add_var("x");
  p.add_var("y");
  p.add_row({{0, Rational(1)}, {1, Rational(1)}}, Sense::Eq, Rational(1));
  p.add_row({{0, Rational(1)}}, Sense::Ge, Rational(1, 3));
  p.objective = {{0, Rational(2)}, {1, Rational(1)}};
  p.maximize = false;
  auto r = lp_solve(p);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_EQ(r.value, Rational(4, 3));
  EXPECT_TRUE(verify_certificate(p, r).ok);
}

// Beale's cycling example terminates under every pivot rule setting.
TEST(Lp, DegenerateExampleTerminates) {
  LpProblem<Rational> p;
  for (int i = 0; i < 4; ++i) p.add_var("x" + std::to_string(i));
  p.add_row({{0, Rational(1, 4)}, {1, Rational(-8)}, {2, Rational(-1)}, {3, Rational(9)}}, Sense::Le, Rational(0));
  p.add_row({{0, Rational(1, 2)}, {1, Rational(-12)}, {2, Rational(-1, 2)}, {3, Rational(3)}}, Sense::Le, Rational(0));
  p.add_row({{2, Rational(1)}}, Sense::Le, Rational(1));
  p.objective = {{0, Rational(3, 4)}, {1, Rational(-20)}, {2, Rational(1, 2)}, {3, Rational(-6)}};
  LpOptions lex, bland;
  bland.degenerate_streak_for_bland = 0;
  auto a = lp_solve(p, lex);
  auto b = lp_solve(p, bland);
  ASSERT_EQ(a.status, LpStatus::Optimal);
  ASSERT_EQ(b.status, LpStatus::Optimal);
  EXPECT_EQ(a.value, Rational(5, 4));
  EXPECT_EQ(a.value, b.value);
  EXPECT_TRUE(verify_certificate(p, a).ok);
  EXPECT_TRUE(verify_certificate(p, b).ok);
}

TEST(LpProperty, RandomTwoVariableProgramsMatchVertexEnumeration) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> coef(-5, 9), rhs(1, 20), obj(-3, 6);
  for (int it = 0; it < 150; ++it) {
    std::vector<std::array<Rational, 3>> rows;
    LpProblem<Rational> p;
    p.add_var("x");
    p.add_var("y");
    std::size_t m = 2 + rng() % 4;
    for (std::size_t k = 0; k < m; ++k) {
      Rational a(coef(rng)), b(coef(rng)), c(rhs(rng));
      rows.push_back({a, b, c});
      p.add_row({{0, a}, {1, b}}, Sense::Le, c);
    }
    // keep the region bounded
    rows.push_back({Rational(1), Rational(1), Rational(30)});
    p.add_row({{0, Rational(1)}, {1, Rational(1)}}, Sense::Le, Rational(30));
    Rational c0(obj(rng)), c1(obj(rng));
    p.objective = {{0, c0}, {1, c1}};
    auto r = lp_solve(p);
    auto oracle = vertex_oracle(rows, c0, c1);
    ASSERT_TRUE(oracle.has_value());
    ASSERT_EQ(r.status, LpStatus::Optimal);
    EXPECT_EQ(r.value, *oracle);
    EXPECT_TRUE(verify_certificate(p, r).ok);
  }
}

// Programs past guide_min_rows take the float-guided start; the exact answer is unchanged.
TEST(Lp, FloatGuideAgreesWithColdStart) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> coef(0, 6);
  LpProblem<Rational> p;
  const std::size_t n = 60, m = 240;
  for (std::size_t j = 0; j < n; ++j) p.add_var("v" + std::to_string(j));
  for (std::size_t i = 0; i < m; ++i) {
    Terms t;
    for (std::size_t j = 0; j < n; ++j)
      if (rng() % 5 == 0) t.emplace_back(j, Rational(coef(rng) + 1));
    if (t.empty()) t.emplace_back(i % n, Rational(1));
    p.add_row(t, Sense::Le, Rational(10 + static_cast<int>(rng() % 30)));
  }
  for (std::size_t j = 0; j < n; ++j) p.objective.emplace_back(j, Rational(1 + static_cast<int>(rng() % 4)));
  LpOptions guided, cold;
  cold.float_guide = false;
  auto a = lp_solve(p, guided);
  auto b = lp_solve(p, cold);
  ASSERT_EQ(a.status, LpStatus::Optimal);
  EXPECT_TRUE(a.float_guided);
  EXPECT_FALSE(b.float_guided);
  EXPECT_EQ(a.value, b.value);
  EXPECT_TRUE(verify_certificate(p, a).ok);
}

TEST(Lp, DoubleMode) {
  LpProblem<double> p;
  p.add_var("x");
  p.add_var("y");
  p.add_row({{0, 1.0}, {1, 2.0}}, Sense::Le, 4.0);
  p.add_row({{0, 3.0}, {1, 1.0}}, Sense::Le, 6.0);
  p.objective = {{0, 1.0}, {1, 1.0}};
  auto r = lp_solve(p);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.value, 2.8, 1e-12);
  EXPECT_TRUE(verify_certificate(p, r).ok);
}

TEST(Lp, VariableCap) {
  LpProblem<Rational> p;
  for (int i = 0; i < 5; ++i) p.add_var("x");
  LpOptions opt;
  opt.max_vars = 4;
  EXPECT_THROW(lp_solve(p, opt), std::invalid_argument);
}
