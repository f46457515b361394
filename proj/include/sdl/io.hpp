// JSON interchange for systems, games, behaviors, decompositions, strategies,
// LP programs and reports. Rationals travel as strings ("1/32", "1/4+1/8*sqrt(2)").
#pragma once

#include <string>

#include <json.hpp>

#include "sdl/behaviors.hpp"
#include "sdl/blcs.hpp"
#include "sdl/games.hpp"
#include "sdl/lifting.hpp"
#include "sdl/lp.hpp"
#include "sdl/polytopes.hpp"
#include "sdl/quantum.hpp"

namespace sdl {

using Json = nlohmann::ordered_json;

// Malformed input text or document structure.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
// Canonical text: two-space indent, trailing newline.
std::string dump(const Json& j);

// {"variables": [...], "constraints": [{"vars": [...], "parity": 1|-1}]}
Json blcs_to_json(const Blcs& s);
Blcs blcs_from_json(const Json& j);

Json scenario_to_json(const Scenario& sc);
std::shared_ptr<const Scenario> scenario_from_json(const Json& j);

// Builtin games are written by reference unless tables are requested.
Json game_to_json(const NonlocalGame& g, bool force_table = false);
NonlocalGame game_from_json(const Json& j);

template <class S>
Json behavior_to_json(const Behavior<S>& b);
Behavior<Q2> behavior_from_json(const Json& j);

Json decomposition_to_json(const PdDecomposition& d, const Scenario& sc);
PdDecomposition decomposition_from_json(const Json& j, std::shared_ptr<const Scenario> sc);

// Operators of dimension 2^k (k <= 4) as sums of Pauli strings, otherwise as matrices.
Json strategy_to_json(const QuantumStrategy& s);
QuantumStrategy strategy_from_json(const Json& j);

Json lp_to_json(const LpProblem<Rational>& p);
Json lp_result_to_json(const LpResult<Rational>& r);

Json lift_report_to_json(const LiftReport& r);
Json thm3_to_json(const Thm3Report& r);

}  // namespace sdl
