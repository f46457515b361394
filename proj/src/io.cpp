#include "sdl/io.hpp"

#include <fstream>
#include <sstream>

#include "sdl/catalog.hpp"

namespace sdl {

namespace {

template <class T>
T required(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

std::string rat(const Rational& r) { return to_string(r); }

Rational parse_rat(const Json& j) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad rational: ") + e.what());
  }
}

Q2 parse_q2_json(const Json& j) {
  try {
    if (j.is_number_integer()) return Q2(Rational(j.get<long long>()));
    return parse_q2(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad Q(sqrt2) value: ") + e.what());
  }
}

std::string q2str(const Rational& r) { return to_string(r); }
std::string q2str(const Q2& r) { return to_string(r); }

Json labels(const Scenario& sc, std::size_t t, const OutputTuple* a) {
  Json out = Json::array();
  const auto& x = sc.tuples()[t];
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(a ? sc.outputs(i, x[i]).at((*a)[i]) : sc.inputs(i)[x[i]]);
  return out;
}

InputTuple parse_inputs(const Scenario& sc, const Json& j) {
  auto v = j.get<std::vector<std::string>>();
  if (v.size() != sc.players()) throw ParseError("input tuple has the wrong length");
  InputTuple x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) x[i] = sc.input_index(i, v[i]);
  return x;
}

std::pair<std::size_t, std::size_t> parse_entry(const Scenario& sc, const Json& e) {
  InputTuple x = parse_inputs(sc, e.at("x"));
  auto t = sc.tuple_index(x);
  if (!t) throw ParseError("input tuple is not admissible");
  auto a = e.at("a").get<std::vector<std::string>>();
  if (a.size() != sc.players()) throw ParseError("output tuple has the wrong length");
  OutputTuple o(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) o[i] = sc.output_index(i, x[i], a[i]);
  return {*t, sc.encode(*t, o)};
}

Json cx_to_json(const Cx& z) {
  if (z.imag() == Sqrt2Ext<SmallRational>()) return to_string(to_q2(z.real()));
  return Json{{"re", to_string(to_q2(z.real()))}, {"im", to_string(to_q2(z.imag()))}};
}

Sqrt2Ext<SmallRational> small_q2(const Q2& q) {
  auto small = [](const Rational& r) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    return SmallRational(numerator(r).convert_to<std::int64_t>(), denominator(r).convert_to<std::int64_t>());
  };
  return Sqrt2Ext<SmallRational>(small(q.rational_part()), small(q.sqrt2_part()));
}

Cx cx_from_json(const Json& j) {
  if (j.is_object()) return Cx(small_q2(parse_q2_json(j.at("re"))), small_q2(parse_q2_json(j.at("im"))));
  return Cx(small_q2(parse_q2_json(j)));
}

const char* kPauli[4] = {"id", "sx", "sy", "sz"};

Json operator_to_json(const CMat& op) {
  const auto d = static_cast<std::size_t>(op.rows());
  std::size_t k = 0;
  while ((std::size_t{1} << k) < d) ++k;
  if ((std::size_t{1} << k) == d && k >= 1 && k <= 4) {
    // c_P = tr(P op) / d over all Pauli strings
    Json terms = Json::array();
    std::size_t count = std::size_t{1} << (2 * k);
    for (std::size_t code = 0; code < count; ++code) {
      std::vector<CMat> factors;
      Json names = Json::array();
      for (std::size_t q = 0; q < k; ++q) {
        std::size_t p = (code >> (2 * (k - 1 - q))) & 3U;
        factors.push_back(pauli(kPauli[p]));
        names.push_back(kPauli[p]);
      }
      CMat P = tensor(factors);
      Cx tr;
      for (Eigen::Index r = 0; r < op.rows(); ++r)
        for (Eigen::Index c = 0; c < op.cols(); ++c)
          if (!P(r, c).is_zero() && !op(c, r).is_zero()) tr += P(r, c) * op(c, r);
      if (tr.is_zero()) continue;
      tr /= Cx(static_cast<int>(d));
      terms.push_back(Json{{"coeff", cx_to_json(tr)}, {"paulis", names}});
    }
    return Json{{"terms", terms}};
  }
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < op.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < op.cols(); ++c) row.push_back(cx_to_json(op(r, c)));
    rows.push_back(row);
  }
  return Json{{"matrix", rows}};
}

CMat operator_from_json(const Json& j) {
  if (j.contains("terms")) {
    CMat out;
    for (const auto& t : j.at("terms")) {
      std::vector<CMat> factors;
      for (const auto& n : t.at("paulis")) factors.push_back(pauli(n.get<std::string>()));
      CMat P = tensor(factors);
      Cx c = cx_from_json(t.at("coeff"));
      if (out.size() == 0) out = CMat::Zero(P.rows(), P.cols());
      out += P * c;
    }
    if (out.size() == 0) throw ParseError("operator without terms");
    return out;
  }
  const auto& rows = j.at("matrix");
  auto n = static_cast<Eigen::Index>(rows.size());
  CMat out = CMat::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (static_cast<Eigen::Index>(rows[r].size()) != n) throw ParseError("operator matrix is not square");
    for (Eigen::Index c = 0; c < n; ++c) out(r, c) = cx_from_json(rows[r][c]);
  }
  return out;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json blcs_to_json(const Blcs& s) {
  Json cons = Json::array();
  for (const auto& c : s.constraints()) {
    Json vars = Json::array();
    for (auto v : c.vars) vars.push_back(s.variables()[v]);
    cons.push_back(Json{{"vars", vars}, {"parity", c.parity}});
  }
  return Json{{"variables", s.variables()}, {"constraints", cons}};
}

Blcs blcs_from_json(const Json& j) {
  auto vars = required<std::vector<std::string>>(j, "variables");
  if (!j.contains("constraints") || !j.at("constraints").is_array()) throw ParseError("missing field 'constraints'");
  std::vector<std::pair<std::vector<std::string>, int>> cons;
  for (const auto& c : j.at("constraints")) cons.emplace_back(required<std::vector<std::string>>(c, "vars"), required<int>(c, "parity"));
  try {
    return Blcs(std::move(vars), cons);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid system: ") + e.what());
  }
}

Json scenario_to_json(const Scenario& sc) {
  Json inputs = Json::array(), outputs = Json::array();
  for (std::size_t i = 0; i < sc.players(); ++i) {
    inputs.push_back(sc.inputs(i));
    Json per = Json::array();
    for (std::size_t x = 0; x < sc.inputs(i).size(); ++x) per.push_back(sc.outputs(i, x));
    outputs.push_back(per);
  }
  Json out{{"inputs", inputs}, {"outputs", outputs}};
  if (!sc.full_product()) {
    Json tuples = Json::array();
    for (std::size_t t = 0; t < sc.num_tuples(); ++t) tuples.push_back(labels(sc, t, nullptr));
    out["tuples"] = tuples;
  }
  return out;
}

std::shared_ptr<const Scenario> scenario_from_json(const Json& j) {
  auto inputs = required<std::vector<std::vector<std::string>>>(j, "inputs");
  auto outputs = required<std::vector<std::vector<std::vector<std::string>>>>(j, "outputs");
  std::vector<InputTuple> tuples;
  try {
    if (j.contains("tuples")) {
      Scenario probe(inputs, outputs);
      for (const auto& t : j.at("tuples")) tuples.push_back(parse_inputs(probe, t));
    }
    return std::make_shared<const Scenario>(std::move(inputs), std::move(outputs), std::move(tuples));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid scenario: ") + e.what());
  }
}

Json game_to_json(const NonlocalGame& g, bool force_table) {
  const Scenario& sc = *g.scenario;
  Json out{{"name", g.name}};
  auto shape = scenario_to_json(sc);
  for (auto& [k, v] : shape.items()) out[k] = v;
  Json pi = Json::array();
  for (const auto& p : g.pi) pi.push_back(rat(p));
  out["pi"] = pi;
  const auto names = builtin_game_names();
  bool builtin = std::find(names.begin(), names.end(), g.name) != names.end();
  if (builtin && !force_table) {
    out["predicate"] = Json{{"builtin", g.name}};
    return out;
  }
  if (g.win.empty()) throw std::invalid_argument("game_to_json: predicate too large to tabulate");
  Json table = Json::array();
  for (std::size_t t = 0; t < sc.num_tuples(); ++t)
    for (std::size_t k = 0; k < sc.block_size(t); ++k)
      if (g.wins(t, k)) {
        auto a = sc.decode(t, k);
        table.push_back(Json{{"x", labels(sc, t, nullptr)}, {"a", labels(sc, t, &a)}});
      }
  out["predicate"] = Json{{"table", table}};
  return out;
}

NonlocalGame game_from_json(const Json& j) {
  if (!j.contains("predicate")) throw ParseError("missing field 'predicate'");
  const auto& pred = j.at("predicate");
  if (pred.contains("builtin")) {
    try {
      return builtin_game(pred.at("builtin").get<std::string>());
    } catch (const UnknownBuiltin& e) {
      throw ParseError(e.what());
    }
  }
  NonlocalGame g;
  g.name = j.value("name", std::string("game"));
  g.scenario = scenario_from_json(j);
  const Scenario& sc = *g.scenario;
  for (const auto& p : required<Json>(j, "pi")) g.pi.push_back(parse_rat(p));
  g.win.assign(sc.size(), 0);
  try {
    for (const auto& e : pred.at("table")) {
      auto [t, k] = parse_entry(sc, e);
      g.win[sc.offset(t) + k] = 1;
    }
    validate_game(g);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid game: ") + e.what());
  }
  return g;
}

template <class S>
Json behavior_to_json(const Behavior<S>& b) {
  const Scenario& sc = *b.scenario;
  Json table = Json::array();
  bool exact = true;
  for (std::size_t t = 0; t < sc.num_tuples(); ++t)
    for (std::size_t k = 0; k < sc.block_size(t); ++k) {
      const S& p = b.at(t, k);
      if (sign(p) == 0) continue;
      auto a = sc.decode(t, k);
      table.push_back(Json{{"x", labels(sc, t, nullptr)}, {"a", labels(sc, t, &a)}, {"p", q2str(p)}});
    }
  return Json{{"shape", scenario_to_json(sc)}, {"table", table}, {"exact", exact}};
}

template Json behavior_to_json(const Behavior<Rational>&);
template Json behavior_to_json(const Behavior<Q2>&);

Behavior<Q2> behavior_from_json(const Json& j) {
  auto sc = scenario_from_json(required<Json>(j, "shape"));
  Behavior<Q2> b(sc);
  try {
    for (const auto& e : required<Json>(j, "table")) {
      auto [t, k] = parse_entry(*sc, e);
      b.at(t, k) = parse_q2_json(e.at("p"));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid behavior: ") + e.what());
  }
  return b;
}

Json decomposition_to_json(const PdDecomposition& d, const Scenario& sc) {
  auto t = sc.tuple_index(d.target);
  if (!t) throw std::invalid_argument("decomposition target is not admissible");
  Json parts = Json::array();
  for (std::size_t i = 0; i < d.parts.size(); ++i) {
    const auto& o = d.outcomes[i];
    parts.push_back(Json{{"weight", rat(d.weights[i])},
                         {"outcome", labels(sc, *t, &o)},
                         {"behavior", behavior_to_json(d.parts[i])["table"]}});
  }
  return Json{{"target", labels(sc, *t, nullptr)}, {"parts", parts}};
}

PdDecomposition decomposition_from_json(const Json& j, std::shared_ptr<const Scenario> sc) {
  PdDecomposition d;
  try {
    d.target = parse_inputs(*sc, required<Json>(j, "target"));
    auto t = sc->tuple_index(d.target);
    if (!t) throw ParseError("decomposition target is not admissible");
    for (const auto& p : required<Json>(j, "parts")) {
      d.weights.push_back(parse_rat(p.at("weight")));
      auto out = p.at("outcome").get<std::vector<std::string>>();
      OutputTuple o(out.size());
      for (std::size_t i = 0; i < out.size(); ++i) o[i] = sc->output_index(i, d.target[i], out[i]);
      d.outcomes.push_back(o);
      Behavior<Rational> part(sc);
      for (const auto& e : p.at("behavior")) {
        auto [tt, k] = parse_entry(*sc, e);
        part.at(tt, k) = parse_rat(e.at("p"));
      }
      d.parts.push_back(std::move(part));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid decomposition: ") + e.what());
  }
  return d;
}

Json strategy_to_json(const QuantumStrategy& s) {
  Json state;
  std::size_t total = 1;
  for (auto d : s.dims) total *= d;
  if (s.kind == StateKind::MaximallyEntangled && s.dims.size() == 2) {
    state = "mes" + std::to_string(s.dims[0]);
  } else if (std::all_of(s.dims.begin(), s.dims.end(), [](std::size_t d) { return d == 2; }) && s.dims.size() >= 2 &&
             s.dims.size() <= 6 && s.state == ghz_state(s.dims.size())) {
    state = "ghz" + std::to_string(s.dims.size());
  } else {
    Json v = Json::array();
    for (Eigen::Index k = 0; k < s.state.size(); ++k) v.push_back(cx_to_json(s.state[k]));
    state = Json{{"vector", v}};
  }
  (void)total;
  Json players = Json::array();
  for (const auto& per : s.slots) {
    Json inputs = Json::array();
    for (const auto& slots : per) {
      Json list = Json::array();
      for (const auto& sl : slots) list.push_back(sl.is_constant() ? Json{{"const", sl.constant}} : operator_to_json(sl.op));
      inputs.push_back(list);
    }
    players.push_back(inputs);
  }
  return Json{{"label", s.label}, {"dims", s.dims}, {"state", state}, {"slots", players}};
}

QuantumStrategy strategy_from_json(const Json& j) {
  QuantumStrategy s;
  try {
    s.label = j.value("label", std::string("strategy"));
    s.dims = required<std::vector<std::size_t>>(j, "dims");
    const auto& st = required<Json>(j, "state");
    if (st.is_string()) {
      auto name = st.get<std::string>();
      if (name.rfind("mes", 0) == 0) {
        s.state = mes_state(std::stoul(name.substr(3)));
        s.kind = StateKind::MaximallyEntangled;
      } else if (name.rfind("ghz", 0) == 0) {
        s.state = ghz_state(std::stoul(name.substr(3)));
      } else {
        throw ParseError("unknown state specifier " + name);
      }
    } else {
      const auto& v = st.at("vector");
      s.state = CVec::Zero(static_cast<Eigen::Index>(v.size()));
      for (std::size_t k = 0; k < v.size(); ++k) s.state[static_cast<Eigen::Index>(k)] = cx_from_json(v[k]);
    }
    for (const auto& per : required<Json>(j, "slots")) {
      std::vector<std::vector<Slot>> inputs;
      for (const auto& slots : per) {
        std::vector<Slot> list;
        for (const auto& sl : slots)
          list.push_back(sl.contains("const") ? Slot::fixed(sl.at("const").get<int>()) : Slot::observable(operator_from_json(sl)));
        inputs.push_back(std::move(list));
      }
      s.slots.push_back(std::move(inputs));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid strategy: ") + e.what());
  }
  return s;
}

Json lp_to_json(const LpProblem<Rational>& p) {
  auto terms = [&](const std::vector<std::pair<std::size_t, Rational>>& t) {
    Json out = Json::array();
    for (const auto& [j, v] : t) out.push_back(Json::array({p.var_names.at(j), rat(v)}));
    return out;
  };
  Json rows = Json::array();
  for (const auto& r : p.rows) {
    const char* sense = r.sense == Sense::Le ? "<=" : (r.sense == Sense::Ge ? ">=" : "=");
    rows.push_back(Json{{"terms", terms(r.coeffs)}, {"sense", sense}, {"rhs", rat(r.rhs)}});
  }
  return Json{{"sense", p.maximize ? "max" : "min"},
              {"variables", p.var_names},
              {"objective", terms(p.objective)},
              {"rows", rows}};
}

Json lp_result_to_json(const LpResult<Rational>& r) {
  Json x = Json::array(), y = Json::array();
  for (const auto& v : r.x) x.push_back(rat(v));
  for (const auto& v : r.dual) y.push_back(rat(v));
  Json out{{"status", to_string(r.status)}, {"pivots", r.pivots}, {"primal", x}, {"dual", y}};
  if (r.status == LpStatus::Optimal) out["value"] = rat(r.value);
  return out;
}

Json lift_report_to_json(const LiftReport& r) {
  Json reductions = Json::array();
  for (const auto& red : r.reductions) {
    Json assignment = Json::object();
    for (const auto& [v, val] : red.assignment) assignment[v] = val;
    reductions.push_back(Json{{"label", red.label},
                              {"assignment", assignment},
                              {"consistent", red.consistent},
                              {"isomorphic", red.isomorphic}});
  }
  Json prov = Json::object();
  for (const auto& [k, v] : r.provenance) prov[k] = v;
  Json out{{"protocol", r.protocol},
           {"original", blcs_to_json(r.original)},
           {"lifted", blcs_to_json(r.lifted)},
           {"variables", r.lifted.num_variables()},
           {"constraints", r.lifted.num_constraints()},
           {"parity", r.parity},
           {"degrees_even", r.degrees_even},
           {"uniform_degree", r.uniform_degree},
           {"reductions_ok", r.all_reductions_ok()},
           {"provenance", prov},
           {"reductions", reductions}};
  if (!r.io_partition.empty()) {
    Json parts = Json::array();
    for (const auto& p : r.io_partition)
      parts.push_back(Json{{"player", p.player}, {"input", p.input}, {"same", p.same}, {"flipped", p.flipped}});
    out["io_partition"] = parts;
  }
  return out;
}

Json thm3_to_json(const Thm3Report& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json dual = Json::array();
    for (const auto& v : row.dual) dual.push_back(rat(v));
    Json obj = Json::array();
    for (const auto& [j, v] : row.program.objective) obj.push_back(Json::array({row.program.var_names.at(j), rat(v)}));
    rows.push_back(Json{{"functional", row.functional},
                        {"optimum", rat(row.optimum)},
                        {"classical", rat(row.classical)},
                        {"equal", row.equal()},
                        {"certificate_verified", row.certificate_verified},
                        {"variables", row.variables},
                        {"constraints", row.constraints},
                        {"objective", obj},
                        {"dual", dual}});
  }
  Json out{{"programs", rows}, {"ok", r.ok()}};
  if (r.sanity_run)
    out["no_signaling_chsh"] = Json{{"optimum", rat(r.ns_chsh)}, {"certificate_verified", r.ns_certificate_verified}};
  return out;
}

}  // namespace sdl
