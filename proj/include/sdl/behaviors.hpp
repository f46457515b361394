// Behavior checks, partially deterministic decompositions, guessing certificates
// and the convex-combination attack simulator.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sdl/behavior.hpp"
#include "sdl/games.hpp"

namespace sdl {

struct BehaviorReport {
  bool nonnegative = true;
  bool normalized = true;
  bool no_signaling = true;
  std::vector<std::string> violations;  // capped at a few dozen entries
  bool ok() const { return nonnegative && normalized && no_signaling; }
};

// Marginal consistency for every proper non-empty subset of players, compared
// across admissible tuples agreeing on that subset. Doubles use tolerance tol.
template <class S>
BehaviorReport check_behavior(const Behavior<S>& b, double tol = 1e-12);

struct PdDecomposition {
  InputTuple target;
  std::vector<Rational> weights;
  std::vector<Behavior<Rational>> parts;
  std::vector<OutputTuple> outcomes;  // declared deterministic outcome of each part at target
};

struct DecompositionReport {
  bool weights_ok = false;
  bool parts_deterministic = false;
  bool sums_match = false;
  Rational max_deviation;
  std::string failure;
  bool ok() const { return weights_ok && parts_deterministic && sums_match; }
};

DecompositionReport verify_decomposition(const Behavior<Rational>& target, const PdDecomposition& d);

// sum_i q_i max_a part_i(a | x*); throws when the decomposition does not verify.
Rational guessing_certificate(const Behavior<Rational>& target, const InputTuple& x, const PdDecomposition& d);

// Parts from the explicit partially deterministic strategies, 1-based indices.
PdDecomposition sdlmsq_decomposition(std::size_t m, std::size_t n);
// Target (s_j, first vertex of s_j); the parts are deterministic on every (s_j, y in s_j).
PdDecomposition sdlmstar_decomposition(std::size_t j);

// Outcome at x when b is deterministic there.
std::optional<OutputTuple> deterministic_outcome(const Behavior<Rational>& b, const InputTuple& x);

enum class LocalFraction { Zero, Inconclusive };
std::string to_string(LocalFraction f);
LocalFraction local_fraction_support_check(const NonlocalGame& g, const Behavior<Rational>& b);

// Seeded stream: std::mt19937_64, whose output sequence is fixed by the standard.
// Uniform doubles are (next() >> 11) * 2^-53 rather than a library distribution,
// so transcripts reproduce across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  // index drawn from cumulative weights (last entry is the total)
  std::size_t pick(const std::vector<double>& cumulative);

 private:
  std::mt19937_64 gen_;
};

struct AttackRound {
  std::uint64_t round = 0;
  bool test = false;
  std::size_t tuple = 0;
  OutputTuple outputs;
  std::size_t part = 0;
  OutputTuple guess;  // generation rounds only
  bool match = false;
};

struct AttackTranscript {
  std::uint64_t seed = 0;
  double gamma = 0;
  InputTuple target;
  std::vector<AttackRound> rounds;
  std::vector<std::uint64_t> tuple_counts;  // test rounds per input tuple
  std::vector<std::uint64_t> entry_counts;  // test rounds per behavior entry
  std::uint64_t generation_rounds = 0;
  std::uint64_t correct_guesses = 0;
  double guess_rate() const { return generation_rounds ? double(correct_guesses) / double(generation_rounds) : 1.0; }
};

// Type-(i) spot-checking: generation rounds use the target inputs, test rounds
// draw inputs from the game distribution; Eve's guess is the deterministic
// outcome of the sampled part.
AttackTranscript attack_simulate(const NonlocalGame& g, const Behavior<Rational>& target, const PdDecomposition& d,
                                 double gamma, std::uint64_t rounds, std::uint64_t seed);

struct BandCheck {
  std::size_t entries = 0;
  std::size_t within = 0;
  double worst_z = 0;
  double pass_rate() const { return entries ? double(within) / double(entries) : 1.0; }
  bool ok(double min_rate = 0.999) const { return pass_rate() >= min_rate; }
};
// Per-entry binomial bands |count - n p| <= k sqrt(n p (1 - p)); zero-variance entries must match exactly.
BandCheck band_check(const AttackTranscript& t, const Behavior<Rational>& target, double k = 4.0);

std::string transcript_csv(const AttackTranscript& t, const Scenario& sc);

}  // namespace sdl
