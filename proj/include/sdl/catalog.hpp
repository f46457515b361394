// Builtin systems, games, behaviors and strategies addressed by name.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdl/behaviors.hpp"
#include "sdl/blcs.hpp"
#include "sdl/games.hpp"
#include "sdl/quantum.hpp"

namespace sdl {

// Thrown for names the catalog does not know; the CLI maps it to a usage error.
struct UnknownBuiltin : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> builtin_system_names();
std::vector<std::string> builtin_game_names();
std::vector<std::string> builtin_behavior_names();
std::vector<std::string> builtin_strategy_names();

// "magic_square", "magic_star", "sdl_magic_square", "sdl_magic_star", "chsh",
// "lifted_chsh", "ghz_cube", "lifted_ghz".
Blcs builtin_system(const std::string& name);

// The system names above plus "mermin_ghz"; sdl_magic_square and sdl_magic_star
// are the compact row/column and edge/vertex games.
NonlocalGame builtin_game(const std::string& name);

struct NamedBehavior {
  std::string name;
  std::string game;  // builtin game the behavior lives on
  Behavior<Q2> behavior;
};

// "sdl_magic_square_behavior", "sdl_magic_star_behavior", "magic_square_behavior",
// "ghz_cube_behavior", "tsirelson_chsh", "pr_box", "chsh_local".
NamedBehavior builtin_behavior(const std::string& name);

// "magic_square", "ghz_cube", "tsirelson_chsh".
QuantumStrategy builtin_strategy(const std::string& name);

// Known decomposition of a builtin behavior at x, when one exists.
std::optional<PdDecomposition> builtin_decomposition(const std::string& behavior, const InputTuple& x);

}  // namespace sdl
