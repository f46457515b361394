// Non-local games: table-driven predicates, exact values, classical values.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sdl/behavior.hpp"
#include "sdl/blcs.hpp"
#include "sdl/field.hpp"
#include "sdl/scenario.hpp"

namespace sdl {

// Vertex structure of hypergraph games: each (player, input) is an edge whose
// outputs are +-1 assignments to the edge's vertices. The players win when, at
// every vertex common to all their edges, the product of their values is +1.
struct HyperEdge {
  std::vector<std::size_t> vertices;
  int parity = 0;  // +1 / -1, or 0 for no parity requirement
};

struct Hypergraph {
  std::vector<std::string> vertex_labels;
  std::vector<std::vector<HyperEdge>> edges;                               // [player][input]
  std::vector<std::vector<std::vector<std::vector<int>>>> assignments;     // [player][input][output] -> values on edge
};

// Alice-side two-body correlators required to have absolute value one.
struct PairCorrelatorConstraint {
  std::size_t player = 0;
  std::size_t input = 0;
  std::size_t slot_a = 0;
  std::size_t slot_b = 0;
};

struct NonlocalGame {
  std::string name;
  std::shared_ptr<const Scenario> scenario;
  std::vector<Rational> pi;          // per admissible input tuple
  // flat, aligned with behavior tables; left empty for hypergraph games too
  // large to tabulate, in which case wins() evaluates the vertex rule
  std::vector<std::uint8_t> win;
  std::optional<Hypergraph> hypergraph;
  std::vector<PairCorrelatorConstraint> side_constraints;

  bool wins(std::size_t t, std::size_t k) const {
    return win.empty() ? hypergraph_wins(t, scenario->decode(t, k)) : win[scenario->offset(t) + k] != 0;
  }
  bool hypergraph_wins(std::size_t t, const OutputTuple& a) const;
};

// Games whose dense table would exceed this many entries keep only the hypergraph.
inline constexpr std::size_t kMaxTabulatedPredicate = std::size_t{1} << 26;

void validate_game(const NonlocalGame& g);

template <class S>
S game_value(const NonlocalGame& g, const Behavior<S>& b) {
  if (!same_shape(*g.scenario, *b.scenario)) throw std::invalid_argument("game_value: shape mismatch");
  S total(0);
  for (std::size_t t = 0; t < g.scenario->num_tuples(); ++t) {
    S acc(0);
    const std::size_t off = g.scenario->offset(t);
    for (std::size_t k = 0; k < g.scenario->block_size(t); ++k)
      if (g.wins(t, k)) acc += b.p[static_cast<Eigen::Index>(off + k)];
    total += from_rational<S>(g.pi[t]) * acc;
  }
  return total;
}

// choice[player][input] = output index
using DeterministicStrategy = std::vector<std::vector<std::size_t>>;

struct ClassicalValue {
  Rational value;
  DeterministicStrategy witness;
  std::string method;  // "enumeration" or "gf2-coset"
  std::uint64_t strategies = 0;
};

Rational strategy_value(const NonlocalGame& g, const DeterministicStrategy& s);
ClassicalValue classical_value(const NonlocalGame& g, std::uint64_t cap = 1000000000ULL);
// Exhaustive over deterministic strategies of all but one player, best response for the last.
ClassicalValue classical_value_enumeration(const NonlocalGame& g, std::uint64_t cap = 1000000000ULL);
// Exact maximisation for hypergraph games via the affine image of the parity-respecting strategies.
ClassicalValue classical_value_gf2(const NonlocalGame& g);
bool gf2_route_applies(const NonlocalGame& g);

// Game builders.
NonlocalGame hypergraph_game(std::string name, std::vector<std::string> vertex_labels,
                             std::vector<std::vector<HyperEdge>> edges, std::vector<InputTuple> tuples,
                             std::vector<std::vector<std::string>> input_labels);
NonlocalGame blcs_to_game(const Blcs& s, std::string name = "blcs");
// Rows of the grid go to Alice, columns to Bob; the grid has rows.size() x cols.size() vertices.
NonlocalGame compact_square_game(const Blcs& grid, std::size_t rows, std::string name = "square");
NonlocalGame compact_star_game(const Blcs& edges, std::string name = "star");
NonlocalGame ghz_cube_game();
NonlocalGame lifted_ghz_game();
NonlocalGame chsh_game();
NonlocalGame mermin_ghz_game();

std::string assignment_label(const std::vector<int>& values);

Blcs binary_game_to_blcs(const NonlocalGame& g);

}  // namespace sdl
