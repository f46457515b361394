#include "sdl/catalog.hpp"

#include <algorithm>

#include "sdl/lifting.hpp"

namespace sdl {

std::vector<std::string> builtin_system_names() {
  return {"magic_square", "magic_star", "sdl_magic_square", "sdl_magic_star",
          "chsh",         "lifted_chsh", "ghz_cube",        "lifted_ghz"};
}

std::vector<std::string> builtin_game_names() {
  auto out = builtin_system_names();
  out.push_back("mermin_ghz");
  return out;
}

std::vector<std::string> builtin_behavior_names() {
  return {"sdl_magic_square_behavior", "sdl_magic_star_behavior", "magic_square_behavior", "ghz_cube_behavior",
          "tsirelson_chsh", "pr_box", "chsh_local"};
}

std::vector<std::string> builtin_strategy_names() { return {"magic_square", "ghz_cube", "tsirelson_chsh"}; }

Blcs builtin_system(const std::string& name) {
  if (name == "magic_square") return magic_square_system();
  if (name == "magic_star") return magic_star_system();
  if (name == "sdl_magic_square") return sdl_magic_square();
  if (name == "sdl_magic_star") return sdl_magic_star();
  if (name == "chsh") return chsh_system();
  if (name == "lifted_chsh") return lifted_chsh_system();
  if (name == "ghz_cube") return hypergraph_system(ghz_cube_game());
  if (name == "lifted_ghz") return lifted_ghz_system();
  throw UnknownBuiltin("unknown builtin system: " + name);
}

namespace {

NonlocalGame builtin_game_unnamed(const std::string& name) {
  if (name == "magic_square") return compact_square_game(magic_square_system(), 3, "magic_square");
  if (name == "magic_star") return compact_star_game(magic_star_system(), "magic_star");
  if (name == "sdl_magic_square") return sdlmsq_game();
  if (name == "sdl_magic_star") return sdlmstar_game();
  if (name == "chsh") return chsh_game();
  if (name == "lifted_chsh") return lifted_chsh_game();
  if (name == "ghz_cube") return ghz_cube_game();
  if (name == "lifted_ghz") return lifted_ghz_game();
  if (name == "mermin_ghz") return mermin_ghz_game();
  throw UnknownBuiltin("unknown builtin game: " + name);
}

}  // namespace

NonlocalGame builtin_game(const std::string& name) {
  auto g = builtin_game_unnamed(name);
  g.name = name;
  return g;
}

NamedBehavior builtin_behavior(const std::string& name) {
  if (name == "sdl_magic_square_behavior") return {name, "sdl_magic_square", to_q2(sdlmsq_behavior())};
  if (name == "sdl_magic_star_behavior") return {name, "sdl_magic_star", to_q2(sdlmstar_behavior())};
  if (name == "magic_square_behavior")
    return {name, "magic_square", behavior_from_strategy(builtin_game("magic_square"), magic_square_strategy())};
  if (name == "ghz_cube_behavior") return {name, "ghz_cube", behavior_from_strategy(ghz_cube_game(), ghz_cube_strategy())};
  if (name == "tsirelson_chsh") return {name, "chsh", behavior_from_strategy(chsh_game(), tsirelson_chsh_strategy())};
  if (name == "pr_box" || name == "chsh_local") {
    auto g = chsh_game();
    Behavior<Q2> b(g.scenario);
    const Scenario& sc = *g.scenario;
    for (std::size_t t = 0; t < sc.num_tuples(); ++t)
      for (std::size_t k = 0; k < sc.block_size(t); ++k) {
        auto a = sc.decode(t, k);
        if (name == "pr_box") {
          if (g.wins(t, k)) b.at(t, k) = Q2(Rational(1, 2));
        } else if (a[0] == 0 && a[1] == 0) {
          b.at(t, k) = Q2(1);  // both parties always answer 0
        }
      }
    return {name, "chsh", b};
  }
  throw UnknownBuiltin("unknown builtin behavior: " + name);
}

QuantumStrategy builtin_strategy(const std::string& name) {
  if (name == "magic_square") return magic_square_strategy();
  if (name == "ghz_cube") return ghz_cube_strategy();
  if (name == "tsirelson_chsh") return tsirelson_chsh_strategy();
  throw UnknownBuiltin("unknown builtin strategy: " + name);
}

std::optional<PdDecomposition> builtin_decomposition(const std::string& behavior, const InputTuple& x) {
  if (x.size() != 2) return std::nullopt;
  if (behavior == "sdl_magic_square_behavior") {
    if (x[0] >= 4 || x[1] >= 4) return std::nullopt;
    return sdlmsq_decomposition(x[0] + 1, x[1] + 1);
  }
  if (behavior == "sdl_magic_star_behavior") {
    if (x[0] >= 6) return std::nullopt;
    auto g = sdlmstar_game();
    const auto& edge = g.hypergraph->edges[0].at(x[0]).vertices;
    if (std::find(edge.begin(), edge.end(), x[1]) == edge.end()) return std::nullopt;
    // the parts are deterministic on every vertex of the edge
    auto d = sdlmstar_decomposition(x[0] + 1);
    d.target = x;
    for (std::size_t p = 0; p < d.parts.size(); ++p) {
      auto o = deterministic_outcome(d.parts[p], x);
      if (!o) return std::nullopt;
      d.outcomes[p] = *o;
    }
    return d;
  }
  return std::nullopt;
}

}  // namespace sdl
