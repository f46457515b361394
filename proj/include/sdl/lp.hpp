// Linear programs over x >= 0 with a tableau simplex and substitution-checked certificates.
#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sdl/field.hpp"

namespace sdl {

enum class Sense { Le, Ge, Eq };

template <class S>
struct LpRow {
  std::vector<std::pair<std::size_t, S>> coeffs;
  Sense sense = Sense::Eq;
  S rhs = S(0);
};

// All variables are non-negative; upper bounds go in as rows.
template <class S>
struct LpProblem {
  std::vector<std::string> var_names;
  std::vector<LpRow<S>> rows;
  std::vector<std::pair<std::size_t, S>> objective;
  bool maximize = true;

  std::size_t num_vars() const { return var_names.size(); }
  std::size_t add_var(std::string name) {
    var_names.push_back(std::move(name));
    return var_names.size() - 1;
  }
  void add_row(std::vector<std::pair<std::size_t, S>> coeffs, Sense sense, S rhs) {
    rows.push_back(LpRow<S>{std::move(coeffs), sense, std::move(rhs)});
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
std::string to_string(LpStatus s);

template <class S>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  S value = S(0);
  std::vector<S> x;
  // Optimal: dual multipliers with objective equality. Infeasible: Farkas multipliers.
  std::vector<S> dual;
  std::size_t pivots = 0;
  bool used_bland = false;
  bool float_guided = false;
};

template <class S>
struct CertificateCheck {
  bool ok = false;
  std::string failure;
  S max_residual = S(0);  // float mode only
};

struct LpOptions {
  std::size_t max_vars = 10000;
  // The lexicographic ratio test already guarantees termination; Bland's rule
  // takes over after this many consecutive degenerate pivots when set lower.
  std::size_t degenerate_streak_for_bland = static_cast<std::size_t>(-1);
  double tolerance = 1e-9;  // float mode
  // Exact programs with at least guide_min_rows rows start from the basis a
  // double-precision run ends in; results are still exact.
  bool float_guide = true;
  std::size_t guide_min_rows = 200;
  double guide_perturbation = 0;  // when positive, float-run lower bounds move down by [p, 2p)
};

template <class S>
LpResult<S> lp_solve(const LpProblem<S>& p, const LpOptions& opt = {});

// Checks the result against the problem by direct substitution: primal feasibility
// and dual feasibility with equal objectives for Optimal, the Farkas inequalities
// for Infeasible.
template <class S>
CertificateCheck<S> verify_certificate(const LpProblem<S>& p, const LpResult<S>& r, double tolerance = 1e-9);

// Same check for a primal/dual pair produced outside the solver.
template <class S>
CertificateCheck<S> verify_optimality_pair(const LpProblem<S>& p, const std::vector<S>& x, const std::vector<S>& y,
                                           double tolerance = 1e-9);

}  // namespace sdl
