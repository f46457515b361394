// sdlift: build, lift, evaluate and certify the systems, games and behaviors
// of the library from the command line.
//
// Exit codes: 0 pass, 1 failed verification, 2 usage error.
#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "sdl/behaviors.hpp"
#include "sdl/catalog.hpp"
#include "sdl/io.hpp"
#include "sdl/lifting.hpp"
#include "sdl/polytopes.hpp"

using namespace sdl;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string mode = "exact";
  double tol = 1e-9;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "text";
  std::uint64_t enum_cap = 1000000000ULL;
  std::size_t max_vars = 10000;

  bool exact() const { return mode == "exact"; }
};

struct Outcome {
  Json report;
  std::string text;
  std::string csv;  // only commands with tabular artifacts
  bool pass = true;
};

std::string render(const Rational& r, const RunConfig& cfg) {
  if (cfg.exact()) return to_string(r);
  std::ostringstream os;
  os << std::setprecision(15) << to_double(r);
  return os.str();
}

std::string render(const Q2& r, const RunConfig& cfg) {
  if (cfg.exact()) return to_string(r);
  std::ostringstream os;
  os << std::setprecision(15) << to_double(r);
  return os.str();
}

Json provenance(const std::string& command, const std::string& builtin, const RunConfig& cfg, bool seeded = false) {
  Json p{{"command", command}, {"builtin", builtin.empty() ? Json(nullptr) : Json(builtin)}, {"mode", cfg.mode}};
  if (!cfg.exact()) p["tol"] = cfg.tol;
  p["caps"] = Json{{"enumeration", cfg.enum_cap}, {"lp_variables", cfg.max_vars}};
  p["seed"] = seeded ? Json(cfg.seed) : Json(nullptr);
  return p;
}

bool is_file(const std::string& s) { return std::filesystem::is_regular_file(s); }

template <class T, class F>
T with_usage(F&& f) {
  try {
    return f();
  } catch (const UnknownBuiltin& e) {
    throw UsageError(e.what());
  }
}

struct LoadedSystem {
  Blcs system;
  std::string builtin;
};

LoadedSystem load_system(const std::string& target) {
  if (is_file(target)) return {blcs_from_json(read_json_file(target)), ""};
  return with_usage<LoadedSystem>([&] { return LoadedSystem{builtin_system(target), target}; });
}

struct LoadedGame {
  NonlocalGame game;
  std::string builtin;
};

LoadedGame load_game(const std::string& target) {
  if (is_file(target)) return {game_from_json(read_json_file(target)), ""};
  return with_usage<LoadedGame>([&] { return LoadedGame{builtin_game(target), target}; });
}

struct LoadedBehavior {
  Behavior<Q2> behavior;
  std::string builtin;  // empty for files
  std::string game;     // builtin game, when known
};

LoadedBehavior load_behavior(const std::string& target) {
  if (is_file(target)) return {behavior_from_json(read_json_file(target)), "", ""};
  return with_usage<LoadedBehavior>([&] {
    auto nb = builtin_behavior(target);
    return LoadedBehavior{std::move(nb.behavior), nb.name, nb.game};
  });
}

bool rational_entries(const Behavior<Q2>& b) {
  for (Eigen::Index k = 0; k < b.p.size(); ++k)
    if (b.p[k].sqrt2_part() != 0) return false;
  return true;
}

InputTuple parse_tuple(const Scenario& sc, const std::vector<std::string>& labels) {
  if (labels.size() != sc.players())
    throw UsageError("expected " + std::to_string(sc.players()) + " input labels, got " + std::to_string(labels.size()));
  InputTuple x(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    try {
      x[i] = sc.input_index(i, labels[i]);
    } catch (const std::exception&) {
      throw UsageError("player " + std::to_string(i) + " has no input '" + labels[i] + "'");
    }
  }
  if (!sc.tuple_index(x)) throw UsageError("input tuple is not admissible");
  return x;
}

Json tuple_json(const Scenario& sc, const InputTuple& x) {
  Json out = Json::array();
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(sc.inputs(i)[x[i]]);
  return out;
}

// ---- commands ----

Outcome cmd_build(const std::string& target, const RunConfig& cfg) {
  Outcome o;
  if (is_file(target)) {
    Json j = read_json_file(target);
    if (j.contains("predicate")) {
      auto g = game_from_json(j);
      o.report = Json{{"provenance", provenance("build", "", cfg)}, {"game", game_to_json(g)}};
      o.text = "game " + g.name + ": " + std::to_string(g.scenario->num_tuples()) + " input tuples\n";
      return o;
    }
  }
  auto [s, builtin] = load_system(target);
  o.report = Json{{"provenance", provenance("build", builtin, cfg)},
                  {"variables", s.num_variables()},
                  {"constraints", s.num_constraints()},
                  {"parity", system_parity(s)},
                  {"system", blcs_to_json(s)}};
  std::ostringstream os;
  os << s.num_variables() << " variables, " << s.num_constraints() << " constraints\n";
  for (std::size_t j = 0; j < s.num_constraints(); ++j) {
    auto vars = s.constraint_variables(j);
    for (std::size_t i = 0; i < vars.size(); ++i) os << (i ? " * " : "  ") << vars[i];
    os << " = " << (s.constraints()[j].parity > 0 ? "+1" : "-1") << "\n";
  }
  o.text = os.str();
  return o;
}

Outcome cmd_lift(int protocol, const std::string& target, const RunConfig& cfg) {
  Outcome o;
  LiftReport r;
  std::string builtin;
  if (protocol == 2) {
    auto lg = load_game(target);
    builtin = lg.builtin;
    r = protocol2(lg.game);
  } else {
    auto ls = load_system(target);
    builtin = ls.builtin;
    r = protocol == 1 ? protocol1(ls.system) : protocol3(ls.system);
  }
  o.report = lift_report_to_json(r);
  o.report["provenance"] = provenance("lift", builtin, cfg);
  o.pass = r.all_reductions_ok();
  std::size_t good = 0;
  for (const auto& red : r.reductions) good += red.consistent && red.isomorphic;
  std::ostringstream os;
  os << "protocol " << protocol << ": " << r.lifted.num_variables() << " variables, " << r.lifted.num_constraints()
     << " constraints, parity " << (r.parity > 0 ? "+1" : "-1") << ", degrees " << (r.degrees_even ? "even" : "not all even")
     << "\nreductions: " << good << "/" << r.reductions.size() << " isomorphic to the input "
     << (o.pass ? "✓" : "✗") << "\n";
  o.text = os.str();
  return o;
}

Outcome cmd_value(const std::string& target, bool classical, const std::string& behavior, const std::string& strategy,
                  const RunConfig& cfg) {
  Outcome o;
  auto [g, builtin] = load_game(target);
  o.report = Json{{"provenance", provenance("value", builtin, cfg)}, {"game", g.name}};
  if (!behavior.empty() || !strategy.empty()) {
    Behavior<Q2> b;
    if (!behavior.empty()) {
      b = load_behavior(behavior).behavior;
      if (!same_shape(*b.scenario, *g.scenario)) throw UsageError("behavior does not live on game " + g.name);
      auto check = check_behavior(b, cfg.tol);
      if (!check.ok()) throw std::runtime_error("behavior: " + (check.violations.empty() ? std::string("invalid") : check.violations[0]));
      o.report["behavior"] = behavior;
    } else {
      QuantumStrategy s = is_file(strategy) ? strategy_from_json(read_json_file(strategy))
                                            : with_usage<QuantumStrategy>([&] { return builtin_strategy(strategy); });
      b = behavior_from_strategy(g, s);
      o.report["strategy"] = s.label;
    }
    Q2 v = game_value(g, b);
    o.report["value"] = render(v, cfg);
    o.text = render(v, cfg) + "\n";
    return o;
  }
  (void)classical;  // classical is the default
  auto cv = classical_value(g, cfg.enum_cap);
  o.report["classical"] = render(cv.value, cfg);
  o.report["method"] = cv.method;
  o.report["strategies"] = cv.strategies;
  o.text = render(cv.value, cfg) + "\n";
  return o;
}

Outcome cmd_decompose(const std::string& target, const std::vector<std::string>& labels, const RunConfig& cfg) {
  Outcome o;
  auto lb = load_behavior(target);
  const Scenario& sc = *lb.behavior.scenario;
  InputTuple x = parse_tuple(sc, labels);
  if (!rational_entries(lb.behavior)) throw UsageError("decompose needs a behavior with rational entries");
  auto target_b = to_rational(lb.behavior);
  o.report = Json{{"provenance", provenance("decompose", lb.builtin, cfg)}, {"target", tuple_json(sc, x)}};

  std::optional<PdDecomposition> d;
  if (!lb.builtin.empty()) d = builtin_decomposition(lb.builtin, x);
  std::string method = "builtin";
  if (!d) {
    if (sc.players() != 2) throw UsageError("no stored decomposition and the LP route needs two players");
    LpOptions opt;
    opt.max_vars = cfg.max_vars;
    auto m = pd_membership(target_b, x[0], x[1], opt);
    o.report["variables"] = m.variables;
    o.report["constraints"] = m.constraints;
    if (!m.member) {
      Json f = Json::array();
      for (Eigen::Index k = 0; k < m.separating.size(); ++k) f.push_back(to_string(m.separating[k]));
      o.report["member"] = false;
      o.report["separating"] = f;
      o.report["certificate_verified"] = m.certificate_verified;
      o.pass = false;
      o.text = std::string("not in PD at this input pair; separating functional ") +
               (m.certificate_verified ? "verified" : "NOT verified") + "\n";
      return o;
    }
    d = m.decomposition;
    method = "lp";
  }
  auto rep = verify_decomposition(target_b, *d);
  Rational pg = guessing_certificate(target_b, x, *d);
  o.pass = rep.ok();
  o.report["method"] = method;
  o.report["member"] = true;
  o.report["verified"] = rep.ok();
  o.report["max_deviation"] = to_string(rep.max_deviation);
  o.report["guessing_certificate"] = render(pg, cfg);
  o.report["decomposition"] = decomposition_to_json(*d, sc);
  std::ostringstream os;
  os << d->parts.size() << " parts, deviation " << to_string(rep.max_deviation) << ", guessing certificate "
     << render(pg, cfg) << " " << (rep.ok() ? "✓" : "✗ " + rep.failure) << "\n";
  o.text = os.str();
  return o;
}

Outcome cmd_verify_thm3(bool sanity, const RunConfig& cfg) {
  Outcome o;
  LpOptions opt;
  opt.max_vars = cfg.max_vars;
  auto r = theorem3_verify(sanity, opt);
  o.report = thm3_to_json(r);
  o.report["provenance"] = provenance("verify-thm3", "", cfg);
  o.pass = r.ok();
  std::ostringstream os;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    if (i) os << "; ";
    if (row.functional == "chsh")
      os << "CHSH: " << render(row.optimum, cfg) << (row.equal() ? " = classical ✓" : " != classical ✗");
    else
      os << "I3322: bound " << (row.equal() ? "= classical ✓" : "!= classical ✗");
  }
  os << "\n";
  o.text = os.str();
  return o;
}

Outcome cmd_attack(const std::string& target, const std::vector<std::string>& labels, double gamma, std::uint64_t rounds,
                   const RunConfig& cfg) {
  Outcome o;
  auto lb = load_behavior(target);
  if (lb.game.empty()) throw UsageError("attack needs a builtin behavior with a known game");
  auto g = builtin_game(lb.game);
  InputTuple x = parse_tuple(*g.scenario, labels);
  auto d = builtin_decomposition(lb.builtin, x);
  if (!d) throw UsageError("no stored decomposition for " + lb.builtin + " at this input tuple");
  if (!(gamma > 0 && gamma <= 1)) throw UsageError("--gamma must lie in (0,1]");
  auto target_b = to_rational(lb.behavior);
  auto t = attack_simulate(g, target_b, *d, gamma, rounds, cfg.seed);
  auto band = band_check(t, target_b);
  o.pass = t.guess_rate() == 1.0 && band.ok();
  o.csv = transcript_csv(t, *g.scenario);
  o.report = Json{{"provenance", provenance("attack", lb.builtin, cfg, true)},
                  {"target", tuple_json(*g.scenario, x)},
                  {"gamma", gamma},
                  {"rounds", rounds},
                  {"generation_rounds", t.generation_rounds},
                  {"correct_guesses", t.correct_guesses},
                  {"guess_rate", t.guess_rate()},
                  {"band_entries", band.entries},
                  {"band_within", band.within},
                  {"band_pass_rate", band.pass_rate()},
                  {"worst_z", band.worst_z}};
  std::ostringstream os;
  os << "guess rate " << t.correct_guesses << "/" << t.generation_rounds << "; test statistics " << band.within << "/"
     << band.entries << " within 4 sigma " << (o.pass ? "✓" : "✗") << "\n";
  o.text = os.str();
  return o;
}

Outcome cmd_guess(const std::string& target, const std::vector<std::string>& labels, const std::string& adversary,
                  const RunConfig& cfg) {
  Outcome o;
  auto lb = load_behavior(target);
  const Scenario& sc = *lb.behavior.scenario;
  InputTuple x = parse_tuple(sc, labels);
  o.report = Json{{"provenance", provenance("guess", lb.builtin, cfg)},
                  {"target", tuple_json(sc, x)},
                  {"adversary", adversary}};
  std::optional<PdDecomposition> d;
  if (!lb.builtin.empty()) d = builtin_decomposition(lb.builtin, x);
  LpOptions opt;
  opt.max_vars = cfg.max_vars;

  if (adversary == "classical") {
    // a convex combination of behaviors deterministic at x
    if (rational_entries(lb.behavior)) {
      auto target_b = to_rational(lb.behavior);
      if (!d && sc.players() == 2) {
        auto m = pd_membership(target_b, x[0], x[1], opt);
        if (m.member) d = m.decomposition;
        else {
          o.report["bound"] = nullptr;
          o.report["member"] = false;
          o.report["certificate_verified"] = m.certificate_verified;
          o.pass = m.certificate_verified;
          o.text = std::string("< 1 (not in PD at this input pair") + (m.certificate_verified ? ", certified)\n" : ")\n");
          return o;
        }
      }
      if (d && verify_decomposition(target_b, *d).ok()) {
        Rational pg = guessing_certificate(target_b, x, *d);
        o.report["bound"] = render(pg, cfg);
        o.report["certified"] = true;
        o.text = render(pg, cfg) + " (certified)\n";
        return o;
      }
    }
    throw UsageError("the classical route needs rational entries or a stored decomposition");
  }
  if (adversary != "ns") throw UsageError("--adversary must be classical or ns");
  if (sc.players() != 2) throw UsageError("the no-signaling LP supports two players");
  std::string value, method;
  bool ok = false;
  if (rational_entries(lb.behavior)) {
    auto r = ns_guessing_lp(to_rational(lb.behavior), x, d ? &*d : nullptr, opt);
    value = render(r.value, cfg);
    method = r.method;
    ok = r.certificate_verified;
  } else {
    auto r = ns_guessing_lp(lb.behavior, x, nullptr, opt);
    value = render(r.value, cfg);
    method = r.method;
    ok = r.certificate_verified;
  }
  o.pass = ok;
  o.report["bound"] = value;
  o.report["method"] = method;
  o.report["certified"] = ok;
  o.text = value + (ok ? " (certified)\n" : " (certificate check failed)\n");
  return o;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void emit(const Outcome& o, const RunConfig& cfg) {
  if (cfg.format == "csv" && o.csv.empty()) throw UsageError("this command has no csv output");
  std::string artifact = cfg.format == "csv" ? o.csv : dump(o.report);
  if (!cfg.out.empty()) write_file(cfg.out, artifact);
  if (cfg.format == "text" || !cfg.out.empty())
    std::cout << o.text;
  else
    std::cout << artifact;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sdlift: symmetric deterministic liftings of nonlocal games"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  RunConfig cfg;
  app.add_option("--mode", cfg.mode, "arithmetic mode")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", cfg.tol, "tolerance in float mode")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for stochastic commands");
  app.add_option("--out", cfg.out, "write the report or transcript here");
  app.add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--enum-cap", cfg.enum_cap, "cap on enumerated deterministic strategies");
  app.add_option("--max-vars", cfg.max_vars, "cap on LP variables");

  std::string target;
  std::vector<std::string> labels;
  auto add_inputs = [&](CLI::App* c) {
    auto* x = c->add_option("--x", "input of player 1");
    auto* y = c->add_option("--y", "input of player 2");
    auto* z = c->add_option("--z", "input of player 3");
    (void)x;
    (void)y;
    (void)z;
  };

  auto* build = app.add_subcommand("build", "emit a builtin system or re-emit a file canonically");
  build->add_option("target", target, "builtin name or JSON file")->required();

  int protocol = 1;
  auto* lift = app.add_subcommand("lift", "apply a lifting protocol");
  lift->add_option("--protocol", protocol, "1, 2 or 3")->check(CLI::IsMember({1, 2, 3}))->required();
  lift->add_option("target", target, "system (protocols 1, 3) or game (protocol 2)")->required();

  bool classical = false;
  std::string behavior, strategy;
  auto* value = app.add_subcommand("value", "classical value, or the value of a behavior or strategy");
  value->add_option("game", target, "builtin game or JSON file")->required();
  auto* cflag = value->add_flag("--classical", classical, "classical value by enumeration");
  value->add_option("--behavior", behavior, "builtin behavior or JSON file")->excludes(cflag);
  value->add_option("--strategy", strategy, "builtin strategy or JSON file")->excludes(cflag);

  auto* decompose = app.add_subcommand("decompose", "partially deterministic decomposition at an input tuple");
  decompose->add_option("behavior", target)->required();
  add_inputs(decompose);

  bool no_sanity = false;
  auto* thm3 = app.add_subcommand("verify-thm3", "LP over the intersection of the partially deterministic polytopes");
  thm3->add_flag("--no-sanity", no_sanity, "skip the no-signaling CHSH check");

  double gamma = 0.1;
  std::uint64_t rounds = 100000;
  auto* attack = app.add_subcommand("attack", "simulate the convex combination attack");
  attack->add_option("behavior", target)->required();
  attack->add_option("--gamma", gamma, "test probability");
  attack->add_option("--rounds", rounds, "number of rounds");
  add_inputs(attack);

  std::string adversary = "classical";
  auto* guess = app.add_subcommand("guess", "guessing probability bound at an input tuple");
  guess->add_option("behavior", target)->required();
  guess->add_option("--adversary", adversary)->check(CLI::IsMember({"classical", "ns"}));
  add_inputs(guess);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto collect = [&](CLI::App* c) {
    for (const char* n : {"--x", "--y", "--z"}) {
      auto* opt = c->get_option(n);
      if (opt->count()) labels.push_back(opt->as<std::string>());
    }
  };

  try {
    Outcome o;
    if (*build) o = cmd_build(target, cfg);
    else if (*lift) o = cmd_lift(protocol, target, cfg);
    else if (*value) o = cmd_value(target, classical, behavior, strategy, cfg);
    else if (*decompose) collect(decompose), o = cmd_decompose(target, labels, cfg);
    else if (*thm3) o = cmd_verify_thm3(!no_sanity, cfg);
    else if (*attack) collect(attack), o = cmd_attack(target, labels, gamma, rounds, cfg);
    else if (*guess) collect(guess), o = cmd_guess(target, labels, adversary, cfg);
    emit(o, cfg);
    return o.pass ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "sdlift: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "sdlift: io: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "sdlift: " << e.what() << "\n";
    return 1;
  }
}
