#include <gtest/gtest.h>

#include "sdl/catalog.hpp"
#include "sdl/io.hpp"

using namespace sdl;

TEST(Io, BlcsRoundTrip) {
  for (const auto& name : builtin_system_names()) {
    Blcs s = builtin_system(name);
    Json j = blcs_to_json(s);
    EXPECT_EQ(blcs_from_json(parse_json(dump(j))), s) << name;
  }
}

TEST(Io, BlcsFormat) {
  Json j = blcs_to_json(chsh_system());
  EXPECT_EQ(j["variables"].size(), 2u);
  EXPECT_EQ(j["constraints"][1]["parity"], -1);
  EXPECT_EQ(dump(j), dump(blcs_to_json(chsh_system())));
}

TEST(Io, MalformedInput) {
  EXPECT_THROW(parse_json("{"), ParseError);
  EXPECT_THROW(blcs_from_json(parse_json(R"({"variables": ["a"]})")), ParseError);
  EXPECT_THROW(blcs_from_json(parse_json(R"({"variables": ["a"], "constraints": [{"vars": ["b"], "parity": 1}]})")),
               ParseError);
  EXPECT_THROW(behavior_from_json(parse_json(R"({"table": []})")), ParseError);
  EXPECT_THROW(game_from_json(parse_json(R"({"predicate": {"builtin": "nosuch"}})")), ParseError);
}

TEST(Io, GameTableRoundTrip) {
  auto g = chsh_game();
  Json j = game_to_json(g, true);
  auto back = game_from_json(parse_json(dump(j)));
  EXPECT_TRUE(*back.scenario == *g.scenario);
  EXPECT_EQ(back.pi, g.pi);
  EXPECT_EQ(back.win, g.win);
  EXPECT_EQ(classical_value(back).value, Rational(3, 4));
  // builtin reference form
  auto ref = game_from_json(game_to_json(builtin_game("sdl_magic_square")));
  EXPECT_EQ(ref.name, "sdl_magic_square");
}

TEST(Io, BehaviorRoundTripExact) {
  for (const auto& name : {"tsirelson_chsh", "sdl_magic_square_behavior", "pr_box"}) {
    auto nb = builtin_behavior(name);
    auto back = behavior_from_json(parse_json(dump(behavior_to_json(nb.behavior))));
    EXPECT_TRUE(*back.scenario == *nb.behavior.scenario) << name;
    EXPECT_TRUE(back.p == nb.behavior.p) << name;
  }
}

TEST(Io, DecompositionRoundTrip) {
  auto target = sdlmsq_behavior();
  auto d = sdlmsq_decomposition(2, 3);
  Json j = decomposition_to_json(d, *target.scenario);
  auto back = decomposition_from_json(parse_json(dump(j)), target.scenario);
  EXPECT_EQ(back.target, d.target);
  EXPECT_EQ(back.weights, d.weights);
  EXPECT_EQ(back.outcomes, d.outcomes);
  EXPECT_TRUE(verify_decomposition(target, back).ok());
}

TEST(Io, StrategyRoundTrip) {
  for (const auto& name : builtin_strategy_names()) {
    auto s = builtin_strategy(name);
    auto back = strategy_from_json(parse_json(dump(strategy_to_json(s))));
    EXPECT_EQ(back.dims, s.dims) << name;
    EXPECT_TRUE(back.state == s.state) << name;
    auto g = builtin_game(name == "tsirelson_chsh" ? "chsh" : name);
    EXPECT_TRUE(behavior_from_strategy(g, back).p == behavior_from_strategy(g, s).p) << name;
  }
}

TEST(Io, LpDocument) {
  LpProblem<Rational> p;
  p.add_var("x");
  p.add_row({{0, Rational(1)}}, Sense::Le, Rational(1, 2));
  p.objective = {{0, Rational(1)}};
  Json j = lp_to_json(p);
  EXPECT_EQ(j["rows"][0]["rhs"], "1/2");
  EXPECT_EQ(j["rows"][0]["sense"], "<=");
  Json r = lp_result_to_json(lp_solve(p));
  EXPECT_EQ(r["value"], "1/2");
  EXPECT_EQ(r["status"], to_string(LpStatus::Optimal));
}

TEST(Catalog, UnknownNames) {
  EXPECT_THROW(builtin_system("nosuch"), UnknownBuiltin);
  EXPECT_THROW(builtin_game("nosuch"), UnknownBuiltin);
  EXPECT_THROW(builtin_behavior("nosuch"), UnknownBuiltin);
  EXPECT_FALSE(builtin_decomposition("tsirelson_chsh", {0, 0}).has_value());
}

TEST(Catalog, StarDecompositionAtEveryVertexOfAnEdge) {
  auto target = sdlmstar_behavior();
  auto g = sdlmstar_game();
  const auto& edge = g.hypergraph->edges[0].at(2).vertices;
  for (auto v : edge) {
    auto d = builtin_decomposition("sdl_magic_star_behavior", {2, v});
    ASSERT_TRUE(d.has_value());
    EXPECT_TRUE(verify_decomposition(target, *d).ok());
    EXPECT_EQ(guessing_certificate(target, {2, v}, *d), Rational(1));
  }
}
