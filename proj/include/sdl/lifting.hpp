// Symmetric deterministic lifting: the three constructions and the bespoke lifted systems.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sdl/blcs.hpp"
#include "sdl/field.hpp"
#include "sdl/games.hpp"

namespace sdl {

struct QuantumStrategy;

// A deterministic partial assignment and what it leaves behind.
struct LiftReduction {
  std::string label;        // e.g. "constraint 3 (case ii)" or "x_g = (1,3,2)"
  Assignment assignment;
  Blcs reduced;
  bool consistent = false;  // assigned constraints all satisfied
  bool isomorphic = false;  // reduced system isomorphic to the reference system
};

struct IoPartition {
  std::size_t player = 0;
  std::size_t input = 0;                // 0-based
  std::vector<std::size_t> same, flipped;  // bit indices j (0-based) in S and S'
};

struct LiftReport {
  std::string protocol;
  Blcs original;
  Blcs lifted;
  std::map<std::string, std::string> provenance;  // lifted variable -> role
  int parity = 0;
  bool degrees_even = false;
  bool uniform_degree = false;
  std::vector<IoPartition> io_partition;  // protocol 2 only
  std::vector<LiftReduction> reductions;

  bool all_reductions_ok() const;
};

// Requires lemma1_check(system).
LiftReport protocol1(const Blcs& system);
// Binary-outcome game whose correlator system has parity -1 and uniform even degree.
LiftReport protocol2(const NonlocalGame& game, std::size_t max_copies = 4096);
// Requires an arrangement with parity -1.
LiftReport protocol3(const Blcs& system);

// 4x4 grid, v(k,l) = v_{4(k-1)+l}; constraints r1..r4 then c1..c4, c4 has parity -1.
Blcs sdl_magic_square();
// Vertices u1..u15, edges s1..s6 (every two edges share one vertex), s2 has parity -1.
Blcs sdl_magic_star();
// Faces of the 3x3x3 grid as constraints (player-major), parities (+1, -1, +1).
Blcs lifted_ghz_system();
Blcs lifted_chsh_system();

// Parity-carrying edges of a hypergraph game as a constraint system over its vertices.
Blcs hypergraph_system(const NonlocalGame& g);

struct SdLiftingReport {
  bool symmetric = true;
  bool deterministic = true;
  bool optimal = true;
  std::size_t strategies_checked = 0;
  std::string failure;  // first failing check with its input tuple
  bool ok() const { return symmetric && deterministic && optimal; }
};

// For every input tuple of the lifted game: the system left after fixing the
// constant answers on that tuple is isomorphic to the original system, and each
// supplied strategy is deterministic there and reaches claimed_value.
SdLiftingReport check_sd_lifting(const NonlocalGame& original, const NonlocalGame& lifted,
                                 const std::function<std::vector<QuantumStrategy>(std::size_t)>& family,
                                 const Q2& claimed_value);

}  // namespace sdl
