#include <gtest/gtest.h>

#include "sdl/lifting.hpp"
#include "sdl/quantum.hpp"

using namespace sdl;

TEST(Protocol1, MagicSquare) {
  auto r = protocol1(magic_square_system());
  EXPECT_EQ(r.lifted.num_variables(), 34u);
  EXPECT_EQ(r.lifted.num_constraints(), 7u);
  EXPECT_EQ(r.parity, -1);
  EXPECT_EQ(system_parity(r.lifted), -1);
  EXPECT_TRUE(r.degrees_even);
  for (auto d : degrees(r.lifted)) EXPECT_EQ(d % 2, 0u);
  EXPECT_FALSE(r.reductions.empty());
  for (const auto& red : r.reductions) {
    EXPECT_TRUE(red.consistent) << red.label;
    EXPECT_TRUE(red.isomorphic) << red.label;
    // independent recheck of the stored witness
    EXPECT_TRUE(is_isomorphic(red.reduced, magic_square_system()).found) << red.label;
  }
  EXPECT_TRUE(r.all_reductions_ok());
}

TEST(Protocol3, ChshMatchesLiftedArrangement) {
  auto r = protocol3(chsh_system());
  EXPECT_TRUE(is_arrangement(r.lifted));
  EXPECT_EQ(system_parity(r.lifted), -1);
  EXPECT_TRUE(is_isomorphic(r.lifted, lifted_chsh_system()).found);
  EXPECT_TRUE(r.all_reductions_ok());
}

TEST(Protocol3, RequiresArrangement) {
  Blcs not_arr({"a", "b"}, std::vector<std::pair<std::vector<std::string>, int>>{{{"a", "b"}, -1}});
  EXPECT_THROW(protocol3(not_arr), std::invalid_argument);
}

TEST(Protocol2, MerminGhz) {
  auto r = protocol2(mermin_ghz_game());
  EXPECT_FALSE(r.io_partition.empty());
  EXPECT_TRUE(r.all_reductions_ok());
  EXPECT_EQ(system_parity(r.lifted), r.parity);
}

TEST(Lifted, CatalogSystems) {
  Blcs sq = sdl_magic_square();
  EXPECT_EQ(sq.num_variables(), 16u);
  EXPECT_EQ(sq.num_constraints(), 8u);
  EXPECT_EQ(system_parity(sq), -1);
  EXPECT_TRUE(is_arrangement(sq));
  EXPECT_FALSE(arkhipov_realizable(sq));
  Blcs st = sdl_magic_star();
  EXPECT_TRUE(is_arrangement(st));
  EXPECT_EQ(system_parity(st), -1);
}

TEST(Lifted, IntersectionGraphs) {
  // square: rows x columns meet pairwise; star: every pair of lines meets
  EXPECT_TRUE(is_complete_bipartite(intersection_graph(sdl_magic_square()), 4, 4));
  EXPECT_TRUE(is_complete(intersection_graph(sdl_magic_star())));
}

TEST(SdLifting, GhzCube) {
  auto gc = ghz_cube_game();
  auto lg = lifted_ghz_game();
  auto rep = check_sd_lifting(
      gc, lg, [&](std::size_t t) { return std::vector<QuantumStrategy>{lifted_ghz_pd_strategy(lg.scenario->tuples()[t])}; },
      Q2(1));
  EXPECT_TRUE(rep.ok()) << rep.failure;
  EXPECT_EQ(rep.strategies_checked, 27u);
}

TEST(SdLifting, DetectsWrongStrategy) {
  auto gc = ghz_cube_game();
  auto lg = lifted_ghz_game();
  // the strategy for one fixed tuple is not deterministic elsewhere
  auto rep = check_sd_lifting(
      gc, lg, [&](std::size_t) { return std::vector<QuantumStrategy>{lifted_ghz_pd_strategy({0, 0, 0})}; }, Q2(1));
  EXPECT_FALSE(rep.ok());
  EXPECT_FALSE(rep.failure.empty());
}
