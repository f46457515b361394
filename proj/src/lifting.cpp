#include "sdl/lifting.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "sdl/gf2.hpp"
#include "sdl/quantum.hpp"

namespace sdl {

bool LiftReport::all_reductions_ok() const {
  if (reductions.empty()) return false;
  for (const auto& r : reductions)
    if (!r.consistent || !r.isomorphic) return false;
  return true;
}

namespace {

void fill_flags(LiftReport& r) {
  r.parity = system_parity(r.lifted);
  auto deg = degrees(r.lifted);
  r.degrees_even = std::all_of(deg.begin(), deg.end(), [](std::size_t d) { return d % 2 == 0; });
  r.uniform_degree = std::all_of(deg.begin(), deg.end(), [&](std::size_t d) { return d == deg.front(); });
}

LiftReduction make_reduction(std::string label, const Blcs& lifted, Assignment a, const Blcs& reference) {
  LiftReduction out;
  out.label = std::move(label);
  auto red = reduce(lifted, a);
  out.assignment = std::move(a);
  out.consistent = red.consistent;
  out.reduced = std::move(red.system);
  out.isomorphic = out.consistent && is_isomorphic(out.reduced, reference).found;
  return out;
}

// name, or name followed by primes when taken
std::string unique_name(std::set<std::string>& taken, const std::string& base) {
  std::string name = base;
  while (taken.count(name)) name += "'";
  taken.insert(name);
  return name;
}

}  // namespace

LiftReport protocol1(const Blcs& s) {
  if (!lemma1_check(s)) throw std::invalid_argument("protocol1: input needs parity -1 and even degrees");
  const std::size_t p = s.num_variables(), q = s.num_constraints();
  std::vector<std::vector<std::size_t>> S(p);
  for (std::size_t j = 0; j < q; ++j)
    for (auto v : s.constraints()[j].vars) S[v].push_back(j);

  LiftReport r;
  r.protocol = "1";
  r.original = s;
  std::vector<std::string> vars = s.variables();
  std::set<std::string> taken(vars.begin(), vars.end());
  for (const auto& v : vars) r.provenance[v] = "V";
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> vprime;  // (i, j) -> index
  std::vector<std::size_t> vprime_list;
  for (std::size_t i = 0; i < p; ++i)
    for (auto j : S[i]) {
      auto name = unique_name(taken, s.variables()[i] + "," + std::to_string(j + 1));
      vprime[{i, j}] = vars.size();
      vprime_list.push_back(vars.size());
      r.provenance[name] = "V'";
      vars.push_back(name);
    }
  std::vector<std::size_t> u;
  for (std::size_t k = 0; k <= q; ++k) {
    auto name = unique_name(taken, "u" + std::to_string(k + 1));
    u.push_back(vars.size());
    r.provenance[name] = "U";
    vars.push_back(name);
  }
  std::vector<Constraint> cons;
  for (std::size_t j = 0; j < q; ++j) {
    const auto& c = s.constraints()[j];
    Constraint n{c.vars, c.parity};
    for (std::size_t i = 0; i < p; ++i) {
      if (!std::count(S[i].begin(), S[i].end(), j)) continue;
      for (auto k : S[i])
        if (k != j) n.vars.push_back(vprime[{i, k}]);
    }
    n.vars.push_back(u[j]);
    if (c.parity == -1) n.vars.push_back(u[q]);
    cons.push_back(std::move(n));
  }
  Constraint last{vprime_list, 1};
  last.vars.insert(last.vars.end(), u.begin(), u.end());
  cons.push_back(std::move(last));
  r.lifted = Blcs(vars, std::move(cons));
  fill_flags(r);

  // case (i)
  Assignment a;
  for (auto k : vprime_list) a[vars[k]] = 1;
  for (auto k : u) a[vars[k]] = 1;
  r.reductions.push_back(make_reduction("constraint " + std::to_string(q + 1) + " (case i)", r.lifted, a, s));
  // cases (ii) and (iii)
  for (std::size_t j = 0; j < q; ++j) {
    const int par = s.constraints()[j].parity;
    Assignment b;
    for (auto k : r.lifted.constraints()[j].vars) b[vars[k]] = 1;
    for (auto k : vprime_list) b[vars[k]] = 1;
    for (auto k : u) b[vars[k]] = 1;
    for (auto i : s.constraints()[j].vars) b.erase(vars[vprime[{i, j}]]);
    if (par == -1) {
      b[vars[u[q]]] = -1;
      for (std::size_t k = 0; k < q; ++k)
        if (k != j && s.constraints()[k].parity == -1) b[vars[u[k]]] = -1;
    }
    r.reductions.push_back(make_reduction(
        "constraint " + std::to_string(j + 1) + (par == 1 ? " (case ii)" : " (case iii)"), r.lifted, b, s));
  }
  return r;
}

LiftReport protocol3(const Blcs& s) {
  if (!is_arrangement(s) || system_parity(s) != -1)
    throw std::invalid_argument("protocol3: input must be an arrangement with parity -1");
  const std::size_t p = s.num_variables(), q = s.num_constraints();
  std::vector<std::vector<std::size_t>> S(p);
  for (std::size_t j = 0; j < q; ++j)
    for (auto v : s.constraints()[j].vars) S[v].push_back(j);

  LiftReport r;
  r.protocol = "3";
  r.original = s;
  std::vector<std::string> vars = s.variables();
  std::set<std::string> taken(vars.begin(), vars.end());
  for (const auto& v : vars) r.provenance[v] = "V";
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> vprime;
  std::vector<std::size_t> vprime_list;
  for (std::size_t i = 0; i < p; ++i)
    for (auto j : S[i]) {
      auto name = unique_name(taken, s.variables()[i] + "," + std::to_string(j + 1));
      vprime[{i, j}] = vars.size();
      vprime_list.push_back(vars.size());
      r.provenance[name] = "V'";
      vars.push_back(name);
    }
  std::vector<Constraint> cons;
  for (std::size_t j = 0; j < q; ++j) {
    const auto& c = s.constraints()[j];
    Constraint n{c.vars, c.parity};
    for (auto i : c.vars)
      for (auto k : S[i])
        if (k != j) n.vars.push_back(vprime[{i, k}]);
    cons.push_back(std::move(n));
  }
  cons.push_back(Constraint{vprime_list, 1});
  r.lifted = Blcs(vars, std::move(cons));
  fill_flags(r);

  Assignment a;
  for (auto k : vprime_list) a[vars[k]] = 1;
  r.reductions.push_back(make_reduction("constraint " + std::to_string(q + 1), r.lifted, a, s));
  for (std::size_t j = 0; j < q; ++j) {
    Assignment b;
    std::size_t first_vprime = vars.size();
    for (auto k : r.lifted.constraints()[j].vars) {
      b[vars[k]] = 1;
      if (k >= p && first_vprime == vars.size()) first_vprime = k;
    }
    // the -1 must sit on a V' variable so that constraint q+1 inherits the parity
    if (s.constraints()[j].parity == -1) b[vars[first_vprime]] = -1;
    r.reductions.push_back(make_reduction("constraint " + std::to_string(j + 1), r.lifted, b, s));
  }
  return r;
}

LiftReport protocol2(const NonlocalGame& game, std::size_t max_copies) {
  const Scenario& sc = *game.scenario;
  const std::size_t n = sc.players();
  const std::size_t m = sc.inputs(0).size();
  for (std::size_t i = 1; i < n; ++i)
    if (sc.inputs(i).size() != m) throw std::invalid_argument("protocol2: players need the same number of inputs");
  Blcs base = binary_game_to_blcs(game);
  auto deg = degrees(base);
  const std::size_t d = deg.front();
  if (d == 0 || d % 2 != 0 || !std::all_of(deg.begin(), deg.end(), [&](std::size_t x) { return x == d; }))
    throw std::invalid_argument("protocol2: correlator system needs a uniform even degree");
  if (system_parity(base) != -1) throw std::invalid_argument("protocol2: correlator system needs parity -1");
  std::size_t copies = 1;
  for (std::size_t i = 0; i < n; ++i) {
    copies *= m + 1;
    if (copies > max_copies) throw std::invalid_argument("protocol2: copy count over cap");
  }

  // step 1: occurrence numbering; base variable index is i * m + x
  struct Term {
    std::size_t i, x, j;
  };
  std::vector<std::vector<Term>> game_terms;
  std::vector<int> game_parity;
  std::vector<std::size_t> counter(n * m, 0);
  for (const auto& c : base.constraints()) {
    std::vector<Term> terms;
    for (auto v : c.vars) terms.push_back({v / m, v % m, counter[v]++});
    game_terms.push_back(std::move(terms));
    game_parity.push_back(c.parity);
  }
  // step 2: negate the first variable of each -1 constraint
  std::vector<std::vector<std::vector<bool>>> negated(n, std::vector<std::vector<bool>>(m + 1, std::vector<bool>(d, false)));
  std::vector<int> lifted_game_parity = game_parity;
  for (std::size_t c = 0; c < game_terms.size(); ++c) {
    if (game_parity[c] != -1) continue;
    const auto& t = game_terms[c].front();
    negated[t.i][t.x][t.j] = true;
    lifted_game_parity[c] = 1;
  }

  LiftReport r;
  r.protocol = "2";
  r.original = base;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x <= m; ++x) {
      IoPartition part{i, x, {}, {}};
      for (std::size_t j = 0; j < d; ++j) (negated[i][x][j] ? part.flipped : part.same).push_back(j);
      r.io_partition.push_back(std::move(part));
    }

  std::vector<InputTuple> tuples;
  {
    InputTuple x(n, 0);
    for (std::size_t g = 0; g < copies; ++g) {
      tuples.push_back(x);
      for (std::size_t i = n; i-- > 0;) {
        if (++x[i] <= m) break;
        x[i] = 0;
      }
    }
  }
  auto tuple_label = [&](const InputTuple& x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i] + 1);
    return s + ")";
  };

  // variables v(i,t)_{x,j} exist for x != (x_t)_i
  std::map<std::array<std::size_t, 4>, std::size_t> index;  // (i, t, x, j)
  std::vector<std::string> vars;
  for (std::size_t t = 0; t < copies; ++t)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t x = 0; x <= m; ++x) {
        if (x == tuples[t][i]) continue;
        for (std::size_t j = 0; j < d; ++j) {
          std::string name = "v(" + std::to_string(i + 1) + "," + std::to_string(t + 1) + ")_" + std::to_string(x + 1) +
                             "," + std::to_string(j + 1);
          index[{i, t, x, j}] = vars.size();
          r.provenance[name] = "copy " + std::to_string(t + 1) + " player " + std::to_string(i + 1) + " input " +
                               std::to_string(x + 1) + " bit " + std::to_string(j + 1);
          vars.push_back(std::move(name));
        }
      }
  auto f = [&](std::size_t t, std::size_t i, std::size_t x) { return x == tuples[t][i] ? m : x; };

  std::vector<Constraint> cons;
  // which constraint of the reference system each lifted constraint images, per copy role
  struct Origin {
    bool game = false;
    std::size_t copy = 0, index = 0;      // game constraints
    std::size_t i = 0, x = 0, j = 0, k = 0;  // IO constraints
  };
  std::vector<Origin> origin;
  for (std::size_t t = 0; t < copies; ++t)
    for (std::size_t c = 0; c < game_terms.size(); ++c) {
      Constraint con;
      con.parity = lifted_game_parity[c];
      for (const auto& term : game_terms[c]) con.vars.push_back(index.at({term.i, t, f(t, term.i, term.x), term.j}));
      cons.push_back(std::move(con));
      Origin o;
      o.game = true;
      o.copy = t;
      o.index = c;
      origin.push_back(o);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x <= m; ++x)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = j + 1; k < d; ++k) {
          Constraint con;
          con.parity = (negated[i][x][j] != negated[i][x][k]) ? -1 : 1;
          for (std::size_t t = 0; t < copies; ++t) {
            if (tuples[t][i] == x) continue;
            con.vars.push_back(index.at({i, t, x, j}));
            con.vars.push_back(index.at({i, t, x, k}));
          }
          cons.push_back(std::move(con));
          Origin o;
          o.i = i;
          o.x = x;
          o.j = j;
          o.k = k;
          origin.push_back(o);
        }
  r.lifted = Blcs(vars, std::move(cons));
  fill_flags(r);

  // reference system C_IO u C_G before negation, variables (i, x, j) with x < m
  std::vector<std::string> ref_vars;
  std::map<std::array<std::size_t, 3>, std::size_t> ref_index;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t j = 0; j < d; ++j) {
        ref_index[{i, x, j}] = ref_vars.size();
        ref_vars.push_back(base.variables()[i * m + x] + "," + std::to_string(j + 1));
      }
  std::vector<Constraint> ref_cons;
  for (std::size_t c = 0; c < game_terms.size(); ++c) {
    Constraint con;
    con.parity = game_parity[c];
    for (const auto& term : game_terms[c]) con.vars.push_back(ref_index.at({term.i, term.x, term.j}));
    ref_cons.push_back(std::move(con));
  }
  std::map<std::array<std::size_t, 4>, int> ref_io;  // (i, x, j, k) -> parity
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = j + 1; k < d; ++k) {
          ref_cons.push_back(Constraint{{ref_index.at({i, x, j}), ref_index.at({i, x, k})}, 1});
          ref_io[{i, x, j, k}] = 1;
        }
  Blcs reference(ref_vars, ref_cons);

  const std::size_t nv = vars.size();
  for (std::size_t g = 0; g < copies; ++g) {
    const auto& xg = tuples[g];
    bool all_new = std::all_of(xg.begin(), xg.end(), [&](std::size_t v) { return v == m; });
    Assignment a;
    if (all_new) {
      for (std::size_t v = 0; v < nv; ++v)
        if (r.provenance[vars[v]].rfind("copy " + std::to_string(g + 1) + " ", 0) != 0) a[vars[v]] = 1;
      r.reductions.push_back(make_reduction("x_g = " + tuple_label(xg) + " all +1", r.lifted, a, reference));
      continue;
    }
    // unknowns: one bit per lifted variable; off-copy bits are values, copy-g bits are sign flips
    std::vector<bool> in_g(nv, false);
    for (const auto& [key, v] : index)
      if (key[1] == g) in_g[v] = true;
    std::vector<BitVec> rows;
    std::vector<std::uint8_t> rhs;
    for (std::size_t c = 0; c < r.lifted.num_constraints(); ++c) {
      const auto& con = r.lifted.constraints()[c];
      BitVec row(nv);
      bool touches_g = false;
      for (auto v : con.vars) {
        row.flip(v);
        touches_g = touches_g || in_g[v];
      }
      int target = 1;  // parity of the imaged reference constraint
      const auto& o = origin[c];
      if (touches_g) {
        if (o.game) {
          target = game_parity[o.index];
        } else {
          std::size_t x = o.x == m ? xg[o.i] : o.x;
          target = ref_io.at({o.i, x, o.j, o.k});
        }
      }
      rows.push_back(std::move(row));
      std::uint8_t bit = static_cast<std::uint8_t>((con.parity == -1) ^ (target == -1));
      rhs.push_back(bit);
    }
    auto sol = gf2_solve(rows, rhs, nv);
    if (!sol.consistent) {
      LiftReduction fail;
      fail.label = "x_g = " + tuple_label(xg) + " (no deterministic repair)";
      r.reductions.push_back(std::move(fail));
      continue;
    }
    for (std::size_t v = 0; v < nv; ++v)
      if (!in_g[v]) a[vars[v]] = sol.particular.get(v) ? -1 : 1;
    r.reductions.push_back(make_reduction("x_g = " + tuple_label(xg), r.lifted, a, reference));
  }
  return r;
}

Blcs sdl_magic_square() {
  std::vector<std::string> v;
  for (int k = 1; k <= 16; ++k) v.push_back("v" + std::to_string(k));
  std::vector<Constraint> cons;
  for (std::size_t k = 0; k < 4; ++k) cons.push_back(Constraint{{4 * k, 4 * k + 1, 4 * k + 2, 4 * k + 3}, 1});
  for (std::size_t l = 0; l < 4; ++l) cons.push_back(Constraint{{l, 4 + l, 8 + l, 12 + l}, l == 3 ? -1 : 1});
  return Blcs(v, cons);
}

namespace {

// vertex u_k shared by edges s_a and s_b (1-based labels)
const std::vector<std::pair<int, int>>& star_pairs() {
  static const std::vector<std::pair<int, int>> pairs = {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 5}, {2, 3}, {2, 6},
                                                         {2, 4}, {3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6}};
  return pairs;
}

}  // namespace

Blcs sdl_magic_star() {
  std::vector<std::string> v;
  for (int k = 1; k <= 15; ++k) v.push_back("u" + std::to_string(k));
  std::vector<Constraint> cons(6);
  for (std::size_t k = 0; k < star_pairs().size(); ++k) {
    cons[static_cast<std::size_t>(star_pairs()[k].first - 1)].vars.push_back(k);
    cons[static_cast<std::size_t>(star_pairs()[k].second - 1)].vars.push_back(k);
  }
  for (std::size_t e = 0; e < 6; ++e) cons[e].parity = e == 1 ? -1 : 1;
  return Blcs(v, cons);
}

Blcs lifted_ghz_system() { return hypergraph_system(lifted_ghz_game()); }

Blcs lifted_chsh_system() { return protocol3(chsh_system()).lifted; }

Blcs hypergraph_system(const NonlocalGame& g) {
  if (!g.hypergraph) throw std::invalid_argument("hypergraph_system: game has no hypergraph");
  std::vector<Constraint> cons;
  for (const auto& player : g.hypergraph->edges)
    for (const auto& e : player)
      if (e.parity != 0) cons.push_back(Constraint{e.vertices, e.parity});
  return Blcs(g.hypergraph->vertex_labels, cons);
}

SdLiftingReport check_sd_lifting(const NonlocalGame& original, const NonlocalGame& lifted,
                                 const std::function<std::vector<QuantumStrategy>(std::size_t)>& family,
                                 const Q2& claimed_value) {
  if (!original.hypergraph || !lifted.hypergraph) throw std::invalid_argument("check_sd_lifting: hypergraph games required");
  SdLiftingReport rep;
  const Blcs reference = hypergraph_system(original);
  const auto& hg = *lifted.hypergraph;
  const Scenario& sc = *lifted.scenario;
  const std::size_t n = sc.players();
  auto where = [&](std::size_t t) {
    std::string s = "(";
    for (std::size_t i = 0; i < n; ++i) s += (i ? "," : "") + sc.inputs(i)[sc.tuples()[t][i]];
    return s + ")";
  };
  auto fail = [&](bool& flag, const std::string& msg) {
    flag = false;
    if (rep.failure.empty()) rep.failure = msg;
  };
  for (std::size_t t = 0; t < sc.num_tuples(); ++t) {
    const auto& xs = sc.tuples()[t];
    auto strategies = family(t);
    if (strategies.empty()) fail(rep.deterministic, "no strategy supplied for " + where(t));
    std::set<std::size_t> removed;
    for (std::size_t i = 0; i < n; ++i)
      for (auto v : hg.edges[i][xs[i]].vertices) removed.insert(v);
    for (std::size_t si = 0; si < strategies.size(); ++si) {
      const auto& s = strategies[si];
      ++rep.strategies_checked;
      if (!deterministic_on(s, xs)) fail(rep.deterministic, "strategy " + s.label + " not deterministic on " + where(t));
      if (vertex_value(lifted, s) != claimed_value) fail(rep.optimal, "strategy " + s.label + " misses the value on " + where(t));
      if (si != 0) continue;
      // symmetry: fix the constant answers touching the removed vertices
      std::vector<std::string> keep_labels;
      std::map<std::size_t, std::size_t> keep;
      for (std::size_t v = 0; v < hg.vertex_labels.size(); ++v)
        if (!removed.count(v)) {
          keep[v] = keep_labels.size();
          keep_labels.push_back(hg.vertex_labels[v]);
        }
      std::vector<Constraint> cons;
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i)
        for (std::size_t x = 0; x < hg.edges[i].size() && ok; ++x) {
          const auto& e = hg.edges[i][x];
          if (x == xs[i] || e.parity == 0) continue;
          Constraint c;
          c.parity = e.parity;
          for (std::size_t k = 0; k < e.vertices.size(); ++k) {
            auto v = e.vertices[k];
            if (keep.count(v)) {
              c.vars.push_back(keep[v]);
            } else if (s.slots[i][x][k].is_constant()) {
              c.parity *= s.slots[i][x][k].constant;
            } else {
              ok = false;
              break;
            }
          }
          if (!ok) break;
          if (c.vars.empty()) {
            if (c.parity != 1) ok = false;
            continue;
          }
          cons.push_back(std::move(c));
        }
      if (!ok) {
        fail(rep.symmetric, "answers on removed vertices are not constant for " + where(t));
        continue;
      }
      Blcs reduced(keep_labels, cons);
      if (!is_isomorphic(reduced, reference).found) fail(rep.symmetric, "reduced system not isomorphic for " + where(t));
    }
  }
  return rep;
}

}  // namespace sdl
