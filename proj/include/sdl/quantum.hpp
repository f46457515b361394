// Exact operator algebra over Q(i, sqrt 2) and the explicit quantum strategies.
#pragma once

#include <Eigen/Core>

#include <array>
#include <string>
#include <vector>

#include "sdl/behavior.hpp"
#include "sdl/field.hpp"
#include "sdl/games.hpp"

namespace sdl {

using CMat = Eigen::Matrix<Cx, Eigen::Dynamic, Eigen::Dynamic>;
using CVec = Eigen::Matrix<Cx, Eigen::Dynamic, 1>;

Cx inv_sqrt2();
CMat identity(std::size_t d);
// "id", "sx", "sy", "sz"
CMat pauli(const std::string& name);
CMat kron(const CMat& a, const CMat& b);
CMat tensor(const std::vector<CMat>& factors);
CMat adjoint(const CMat& m);
bool is_zero(const CMat& m);
bool is_hermitian(const CMat& m);
bool is_involution(const CMat& m);
bool commute(const CMat& a, const CMat& b);
// Returns +1 / -1 when m = +-I, 0 otherwise.
int scalar_sign(const CMat& m);

CVec mes_state(std::size_t d);
CVec ghz_state(std::size_t n);
Cx inner(const CVec& a, const CVec& b);

// One output position: a constant +-1 or a +-1-valued observable.
struct Slot {
  int constant = 0;  // nonzero for constant slots
  CMat op;

  static Slot fixed(int v) { return Slot{v, CMat()}; }
  static Slot observable(CMat m) { return Slot{0, std::move(m)}; }
  bool is_constant() const { return constant != 0; }
  Slot negated() const { return constant ? fixed(-constant) : observable(-op); }
  Slot transposed() const { return constant ? *this : observable(op.transpose()); }
};

enum class StateKind { MaximallyEntangled, Generic };

struct QuantumStrategy {
  std::string label;
  std::vector<std::size_t> dims;  // local dimension per player
  CVec state;
  StateKind kind = StateKind::Generic;
  std::vector<std::vector<std::vector<Slot>>> slots;  // [player][input][slot]
};

// +-1 values that output a of (player, input) assigns to its slots.
std::vector<int> output_values(const NonlocalGame& g, std::size_t player, std::size_t x, std::size_t a);

// Throws std::invalid_argument naming the first violated structural requirement.
void validate_strategy(const NonlocalGame& g, const QuantumStrategy& s);
bool deterministic_on(const QuantumStrategy& s, const InputTuple& x);

Behavior<Q2> behavior_from_strategy(const NonlocalGame& g, const QuantumStrategy& s);
// Winning probability of a hypergraph game whose input tuples share at most one
// vertex, from the single-vertex correlators; needs no dense table.
Q2 vertex_value(const NonlocalGame& g, const QuantumStrategy& s);
// <psi| (x) ops |psi> with one operator per player
Cx expectation(const QuantumStrategy& s, const std::vector<CMat>& local_ops);

// Player-wise values on hypergraph vertices turned into per-input slot lists.
QuantumStrategy strategy_from_vertices(const NonlocalGame& g, std::string label, std::vector<std::size_t> dims,
                                       CVec state, StateKind kind,
                                       const std::vector<std::vector<Slot>>& per_player_vertex);

// Row-major 3x3 grid matching magic_square_system(): rows and the first two
// columns multiply to +I, the last column to -I.
std::array<CMat, 9> magic_square_operator_solution();
// Three-qubit pentagram: lines[k] lists four operators, line 0 multiplies to -I.
struct Pentagram {
  std::array<std::array<CMat, 4>, 5> lines;
};
Pentagram pentagram_operator_solution();

// Negate entries of ops (indexed like the variables of lines) so that each line
// product becomes parity[k] * I. Throws when the target is unreachable.
std::vector<Slot> fix_line_parities(std::vector<Slot> ops, const std::vector<std::vector<std::size_t>>& lines,
                                    const std::vector<int>& parity);
// Product of the slots of a line as a matrix (constants fold into the sign).
CMat line_product(const std::vector<Slot>& line, std::size_t dim);

NonlocalGame sdlmsq_game();
NonlocalGame sdlmstar_game();
NonlocalGame lifted_chsh_game();

// Strategy index i enumerates the gamma tuple in lexicographic order, + before -.
std::vector<int> gamma_tuple(std::size_t i, std::size_t bits);

QuantumStrategy magic_square_strategy();
QuantumStrategy sdlmsq_pd_strategy(std::size_t m, std::size_t n, std::size_t i);
QuantumStrategy sdlmstar_pd_strategy(std::size_t j, std::size_t i);
QuantumStrategy ghz_cube_strategy();
QuantumStrategy lifted_ghz_pd_strategy(const InputTuple& xstar);
QuantumStrategy tsirelson_chsh_strategy();

// Uniform over winning outputs: 1/32 and 1/16 respectively.
Behavior<Rational> sdlmsq_behavior();
Behavior<Rational> sdlmstar_behavior();

struct LiftedChshReport {
  QuantumStrategy strategy;
  std::vector<Cx> parity_expectations;                  // per Alice input
  std::vector<std::pair<Cx, Cx>> pair_correlators;      // per Alice input, (first pair, second pair)
  bool relations_hold = false;
  Q2 value;
  bool ok = false;
  std::string failure;
};
// x* = (Alice constraint index, Bob variable index); the variable must belong to the constraint.
LiftedChshReport lifted_chsh_strategy(std::size_t alice_input, std::size_t bob_input);

}  // namespace sdl
