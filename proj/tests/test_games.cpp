#include <gtest/gtest.h>

#include "sdl/games.hpp"
#include "sdl/quantum.hpp"

using namespace sdl;

namespace {

// Independent oracle: enumerate every deterministic strategy of every player.
Rational full_enumeration(const NonlocalGame& g) {
  const Scenario& sc = *g.scenario;
  std::vector<std::pair<std::size_t, std::size_t>> slots;  // (player, input)
  for (std::size_t i = 0; i < sc.players(); ++i)
    for (std::size_t x = 0; x < sc.inputs(i).size(); ++x) slots.emplace_back(i, x);
  DeterministicStrategy s(sc.players());
  for (std::size_t i = 0; i < sc.players(); ++i) s[i].assign(sc.inputs(i).size(), 0);
  Rational best(-1);
  while (true) {
    Rational v(0);
    for (std::size_t t = 0; t < sc.num_tuples(); ++t) {
      const auto& x = sc.tuples()[t];
      OutputTuple a(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) a[i] = s[i][x[i]];
      if (g.wins(t, sc.encode(t, a))) v += g.pi[t];
    }
    if (v > best) best = v;
    std::size_t k = 0;
    for (; k < slots.size(); ++k) {
      auto [i, x] = slots[k];
      if (++s[i][x] < sc.num_outputs(i, x)) break;
      s[i][x] = 0;
    }
    if (k == slots.size()) break;
  }
  return best;
}

}  // namespace

TEST(Games, ChshTable) {
  auto g = chsh_game();
  EXPECT_NO_THROW(validate_game(g));
  const Scenario& sc = *g.scenario;
  for (std::size_t t = 0; t < 4; ++t) {
    EXPECT_EQ(g.pi[t], Rational(1, 4));
    const auto& x = sc.tuples()[t];
    for (std::size_t k = 0; k < 4; ++k) {
      auto a = sc.decode(t, k);
      EXPECT_EQ(g.wins(t, k), ((a[0] ^ a[1]) == (x[0] & x[1])));
    }
  }
}

TEST(Games, ClassicalValuesAgainstFullEnumeration) {
  for (auto g : {chsh_game(), compact_square_game(magic_square_system(), 3, "ms"), mermin_ghz_game(), ghz_cube_game()}) {
    auto cv = classical_value(g);
    EXPECT_EQ(cv.value, full_enumeration(g)) << g.name;
    EXPECT_EQ(strategy_value(g, cv.witness), cv.value) << g.name;
  }
}

TEST(Games, ClassicalValuesOfCatalog) {
  EXPECT_EQ(classical_value(chsh_game()).value, Rational(3, 4));
  EXPECT_EQ(classical_value(ghz_cube_game()).value, Rational(7, 8));
  EXPECT_EQ(classical_value(mermin_ghz_game()).value, Rational(3, 4));
  EXPECT_EQ(classical_value(compact_square_game(magic_square_system(), 3, "ms")).value, Rational(8, 9));
  EXPECT_EQ(classical_value(sdlmsq_game()).value, Rational(15, 16));
  EXPECT_EQ(classical_value(lifted_chsh_game()).value, Rational(17, 18));
}

TEST(Games, Gf2RouteMatchesEnumeration) {
  for (auto g : {ghz_cube_game(), compact_square_game(magic_square_system(), 3, "ms"), sdlmsq_game()}) {
    ASSERT_TRUE(gf2_route_applies(g)) << g.name;
    EXPECT_EQ(classical_value_gf2(g).value, classical_value_enumeration(g).value) << g.name;
  }
  auto lg = lifted_ghz_game();
  ASSERT_TRUE(gf2_route_applies(lg));
  auto cv = classical_value_gf2(lg);
  EXPECT_EQ(cv.value, Rational(26, 27));
  EXPECT_EQ(cv.method, "gf2-coset");
}

TEST(Games, BlcsGameCorrespondence) {
  auto g = blcs_to_game(chsh_system(), "chsh_blcs");
  EXPECT_EQ(g.scenario->inputs(0).size(), 2u);
  EXPECT_EQ(g.scenario->inputs(1).size(), 2u);
  for (std::size_t x = 0; x < 2; ++x) EXPECT_EQ(g.scenario->num_outputs(0, x), 2u);
  EXPECT_EQ(classical_value(g).value, Rational(3, 4));
  Blcs back = binary_game_to_blcs(chsh_game());
  EXPECT_EQ(system_parity(back), -1);
  EXPECT_FALSE(has_classical_solution(back).found);
}

TEST(Games, ValidateRejectsBadDistribution) {
  auto g = chsh_game();
  g.pi[0] = Rational(1, 2);
  EXPECT_THROW(validate_game(g), std::invalid_argument);
}

TEST(Games, GameValueOfDeterministicBehavior) {
  auto g = chsh_game();
  auto b = deterministic_behavior(g.scenario, {{0, 0}, {0, 0}});
  EXPECT_EQ(game_value(g, b), Rational(3, 4));
}
