#include <gtest/gtest.h>

#include <cmath>

#include "sdl/behaviors.hpp"
#include "sdl/quantum.hpp"

using namespace sdl;

TEST(Operators, PauliAlgebra) {
  CMat x = pauli("sx"), y = pauli("sy"), z = pauli("sz");
  EXPECT_TRUE(is_involution(x));
  EXPECT_TRUE(is_hermitian(y));
  EXPECT_FALSE(commute(x, z));
  EXPECT_TRUE(is_zero(CMat(x * y - z * Cx::i())));
  EXPECT_TRUE(commute(kron(x, x), kron(z, z)));
  EXPECT_EQ(scalar_sign(CMat(kron(x, x) * kron(y, y) * kron(z, z))), -1);
}

TEST(Operators, MagicSquareSolution) {
  auto ops = magic_square_operator_solution();
  const std::size_t rows[3][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
  for (auto& r : rows) EXPECT_EQ(scalar_sign(CMat(ops[r[0]] * ops[r[1]] * ops[r[2]])), 1);
  for (std::size_t c = 0; c < 3; ++c) {
    CMat p = ops[c] * ops[3 + c] * ops[6 + c];
    EXPECT_EQ(scalar_sign(p), c == 2 ? -1 : 1);
  }
  for (std::size_t i = 0; i < 9; ++i) EXPECT_TRUE(is_involution(ops[i]));
}

TEST(Operators, PentagramSolution) {
  auto pg = pentagram_operator_solution();
  for (std::size_t k = 0; k < 5; ++k) {
    const auto& l = pg.lines[k];
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a + 1; b < 4; ++b) EXPECT_TRUE(commute(l[a], l[b]));
    EXPECT_EQ(scalar_sign(CMat(l[0] * l[1] * l[2] * l[3])), k == 0 ? -1 : 1);
  }
}

TEST(States, NormalizedExactly) {
  EXPECT_EQ(inner(mes_state(4), mes_state(4)), Cx(1));
  EXPECT_EQ(inner(ghz_state(3), ghz_state(3)), Cx(1));
}

TEST(Strategies, PseudoTelepathyValues) {
  auto ms = compact_square_game(magic_square_system(), 3, "ms");
  auto b = behavior_from_strategy(ms, magic_square_strategy());
  EXPECT_TRUE(check_behavior(b).ok());
  EXPECT_EQ(game_value(ms, b), Q2(1));
  auto gc = ghz_cube_game();
  EXPECT_EQ(vertex_value(gc, ghz_cube_strategy()), Q2(1));
  EXPECT_EQ(game_value(gc, behavior_from_strategy(gc, ghz_cube_strategy())), Q2(1));
}

TEST(Strategies, TsirelsonPoint) {
  auto g = chsh_game();
  auto b = behavior_from_strategy(g, tsirelson_chsh_strategy());
  EXPECT_TRUE(check_behavior(b).ok());
  // cos^2(pi/8) = 1/2 + sqrt2/4
  EXPECT_EQ(game_value(g, b), Q2(Rational(1, 2), Rational(1, 4)));
  EXPECT_NEAR(to_double(game_value(g, b)), std::pow(std::cos(M_PI / 8), 2), 1e-15);
}

TEST(Strategies, SdlMagicSquareFamilyIsDeterministicAndAveragesToTarget) {
  auto g = sdlmsq_game();
  auto target = to_q2(sdlmsq_behavior());
  EXPECT_EQ(game_value(g, target), Q2(1));
  for (std::size_t m = 1; m <= 4; m += 3)
    for (std::size_t n = 1; n <= 4; n += 2) {
      Behavior<Q2> acc(g.scenario);
      for (std::size_t i = 1; i <= 32; ++i) {
        auto s = sdlmsq_pd_strategy(m, n, i);
        EXPECT_NO_THROW(validate_strategy(g, s));
        EXPECT_TRUE(deterministic_on(s, {m - 1, n - 1}));
        auto part = behavior_from_strategy(g, s);
        EXPECT_EQ(game_value(g, part), Q2(1));
        acc.p += part.p;
      }
      acc.p /= Q2(32);
      EXPECT_TRUE(acc.p == target.p) << m << "," << n;
    }
}

TEST(Strategies, SdlMagicStarFamily) {
  auto g = sdlmstar_game();
  auto target = to_q2(sdlmstar_behavior());
  Behavior<Q2> acc(g.scenario);
  for (std::size_t i = 1; i <= 16; ++i) acc.p += behavior_from_strategy(g, sdlmstar_pd_strategy(2, i)).p;
  acc.p /= Q2(16);
  EXPECT_TRUE(acc.p == target.p);
}

TEST(Strategies, LiftedGhzAllPdStrategies) {
  auto lg = lifted_ghz_game();
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t c = 0; c < 3; ++c) {
        auto s = lifted_ghz_pd_strategy({a, b, c});
        EXPECT_EQ(vertex_value(lg, s), Q2(1));
        EXPECT_TRUE(deterministic_on(s, {a, b, c}));
      }
}

TEST(Strategies, LiftedChsh) {
  const Q2 expected = Q2(Rational(16, 18), Rational(1, 18));  // (16 + sqrt2) / 18
  std::size_t ok = 0;
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t v = 0; v < 6; ++v) {
      LiftedChshReport r;
      try {
        r = lifted_chsh_strategy(j, v);
      } catch (const std::invalid_argument&) {
        continue;
      }
      if (!r.ok) continue;
      ++ok;
      EXPECT_TRUE(r.relations_hold);
      EXPECT_EQ(r.value, expected);
      EXPECT_NEAR(to_double(r.value), (16 + std::sqrt(2.0)) / 18, 1e-12);
    }
  // six tuples pair a constraint with a variable outside it and have no such strategy
  EXPECT_EQ(ok, 12u);
}
