// No-signaling, local and partially deterministic polytopes as exact LPs.
#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "sdl/behavior.hpp"
#include "sdl/behaviors.hpp"
#include "sdl/lp.hpp"

namespace sdl {

// (m,2;m,2) with inputs "0".."m-1" and outputs "0","1".
std::shared_ptr<const Scenario> binary_bipartite_scenario(std::size_t inputs);

// Sub-scenario keeping the listed inputs of each player (full product); entries are copied.
Behavior<Rational> restrict_inputs(const Behavior<Rational>& b, const std::vector<std::vector<std::size_t>>& keep);

// All local deterministic behaviors; throws past cap.
std::vector<Behavior<Rational>> local_vertices(std::shared_ptr<const Scenario> sc, std::size_t cap = 4096);

struct LinearFunctional {
  std::string name;
  std::shared_ptr<const Scenario> scenario;
  Vec<Rational> coeff;
  Rational constant;

  template <class S>
  S operator()(const Behavior<S>& b) const {
    if (!same_shape(*scenario, *b.scenario)) throw std::invalid_argument("functional: shape mismatch");
    S v = from_rational<S>(constant);
    for (Eigen::Index k = 0; k < coeff.size(); ++k)
      if (coeff[k] != 0) v += from_rational<S>(coeff[k]) * b.p[k];
    return v;
  }
};

// "chsh": winning probability with uniform inputs 0,1 (needs two binary-output players).
// "i3322": Collins-Gisin form on outcome 0 in (3,2;3,2), marginals read at the other party's input 0.
LinearFunctional bell_functional(const std::string& name, std::shared_ptr<const Scenario> sc);
LinearFunctional functional_from_coefficients(std::string name, std::shared_ptr<const Scenario> sc, Vec<Rational> coeff,
                                              Rational constant = Rational(0));

struct ClassicalBound {
  Rational value;
  std::size_t vertices = 0;
  std::size_t argmax = 0;
};
ClassicalBound classical_bound(const LinearFunctional& f, std::size_t cap = 4096);

struct PdMembership {
  bool member = false;
  PdDecomposition decomposition;      // member
  Vec<Rational> separating;           // non-member: F(b) > 0, F <= 0 on PD_{k,l}
  bool certificate_verified = false;  // Farkas certificate or decomposition check
  std::size_t variables = 0;
  std::size_t constraints = 0;
};
// Two-player scenario; k, l are input indices of Alice and Bob.
PdMembership pd_membership(const Behavior<Rational>& b, std::size_t k, std::size_t l, const LpOptions& opt = {});

struct Thm3Row {
  std::string functional;
  Rational optimum;
  Rational classical;
  bool certificate_verified = false;
  std::size_t variables = 0;
  std::size_t constraints = 0;
  std::size_t pivots = 0;
  double seconds = 0;
  LpProblem<Rational> program;  // kept so the certificate can be re-checked
  std::vector<Rational> primal, dual;
  bool equal() const { return certificate_verified && optimum == classical; }
};

struct Thm3Report {
  std::vector<Thm3Row> rows;
  bool sanity_run = false;
  Rational ns_chsh;  // CHSH over the no-signaling set alone
  bool ns_certificate_verified = false;
  bool ok() const;
};

// max I over NS(3,2;3,2) intersected with all nine PD_{k,l}, for CHSH and I3322.
Thm3Report theorem3_verify(bool sanity = true, const LpOptions& opt = {});

template <class S>
struct LpBound {
  S value = S(0);
  bool certificate_verified = false;
  std::string method;  // "lp" or "certificate"
  std::size_t variables = 0;
  std::size_t constraints = 0;
};

// max total weight of local deterministic vertices with an NS-cone remainder.
template <class S>
LpBound<S> local_fraction_lp(const Behavior<S>& b, const LpOptions& opt = {});

// Guessing probability of the outputs at x by a no-signaling adversary. Over the
// variable cap a verified witness decomposition turns the LP into a primal/dual
// check: the witness is the primal and the dual is the trivial bound 1.
template <class S>
LpBound<S> ns_guessing_lp(const Behavior<S>& b, const InputTuple& x, const PdDecomposition* witness = nullptr,
                          const LpOptions& opt = {});

}  // namespace sdl
