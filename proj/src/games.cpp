#include "sdl/games.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "sdl/gf2.hpp"

namespace sdl {

void validate_game(const NonlocalGame& g) {
  if (!g.scenario) throw std::invalid_argument("game without scenario");
  if (g.pi.size() != g.scenario->num_tuples()) throw std::invalid_argument("game: pi size mismatch");
  if (g.win.size() != g.scenario->size() && !(g.win.empty() && g.hypergraph))
    throw std::invalid_argument("game: predicate table size mismatch");
  Rational total = 0;
  for (const auto& x : g.pi) {
    if (x < 0) throw std::invalid_argument("game: negative input probability");
    total += x;
  }
  if (total != 1) throw std::invalid_argument("game: input distribution does not sum to 1");
}

std::string assignment_label(const std::vector<int>& values) {
  std::string s;
  for (int v : values) s.push_back(v == 1 ? '+' : '-');
  return s;
}

namespace {

std::vector<std::vector<int>> edge_alphabet(std::size_t n, int parity) {
  std::vector<std::vector<int>> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    std::vector<int> vals(n);
    int prod = 1;
    for (std::size_t k = 0; k < n; ++k) {
      vals[k] = ((code >> (n - 1 - k)) & 1U) ? -1 : 1;
      prod *= vals[k];
    }
    if (parity == 0 || prod == parity) out.push_back(std::move(vals));
  }
  return out;
}

std::int64_t to_i64(const Integer& z) {
  if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("value does not fit in 64 bits");
  return z.convert_to<std::int64_t>();
}

// Integer weights n_t with pi_t = n_t / den.
struct ScaledPi {
  std::vector<std::int64_t> weight;
  Integer den = 1;
};

ScaledPi scale_pi(const std::vector<Rational>& pi) {
  ScaledPi out;
  for (const auto& r : pi) out.den = boost::multiprecision::lcm(out.den, boost::multiprecision::denominator(r));
  for (const auto& r : pi) {
    Integer w = boost::multiprecision::numerator(r) * (out.den / boost::multiprecision::denominator(r));
    out.weight.push_back(to_i64(w));
  }
  return out;
}

bool lex_less(const DeterministicStrategy& a, const DeterministicStrategy& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t x = 0; x < a[i].size(); ++x)
      if (a[i][x] != b[i][x]) return a[i][x] < b[i][x];
  return false;
}

std::vector<std::size_t> common_vertices(const Hypergraph& hg, const InputTuple& x) {
  std::vector<std::size_t> common = hg.edges[0][x[0]].vertices;
  for (std::size_t i = 1; i < x.size(); ++i) {
    std::vector<std::size_t> next;
    const auto& vs = hg.edges[i][x[i]].vertices;
    std::set_intersection(common.begin(), common.end(), vs.begin(), vs.end(), std::back_inserter(next));
    common = std::move(next);
  }
  return common;
}

std::size_t slot_of(const HyperEdge& e, std::size_t v) {
  return static_cast<std::size_t>(std::lower_bound(e.vertices.begin(), e.vertices.end(), v) - e.vertices.begin());
}

}  // namespace

bool NonlocalGame::hypergraph_wins(std::size_t t, const OutputTuple& a) const {
  if (!hypergraph) throw std::logic_error("game has neither a predicate table nor a hypergraph");
  const auto& hg = *hypergraph;
  const auto& x = scenario->tuples()[t];
  for (auto v : common_vertices(hg, x)) {
    int prod = 1;
    for (std::size_t i = 0; i < x.size(); ++i) prod *= hg.assignments[i][x[i]][a[i]][slot_of(hg.edges[i][x[i]], v)];
    if (prod != 1) return false;
  }
  return true;
}

NonlocalGame hypergraph_game(std::string name, std::vector<std::string> vertex_labels,
                             std::vector<std::vector<HyperEdge>> edges, std::vector<InputTuple> tuples,
                             std::vector<std::vector<std::string>> input_labels) {
  const std::size_t n = edges.size();
  Hypergraph hg;
  hg.vertex_labels = std::move(vertex_labels);
  std::vector<std::vector<std::vector<std::string>>> outputs(n);
  hg.assignments.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& e : edges[i]) {
      std::sort(e.vertices.begin(), e.vertices.end());
      for (auto v : e.vertices)
        if (v >= hg.vertex_labels.size()) throw std::invalid_argument("hypergraph edge references unknown vertex");
      auto alph = edge_alphabet(e.vertices.size(), e.parity);
      std::vector<std::string> labels;
      for (const auto& a : alph) labels.push_back(assignment_label(a));
      outputs[i].push_back(std::move(labels));
      hg.assignments[i].push_back(std::move(alph));
    }
  }
  hg.edges = std::move(edges);

  NonlocalGame g;
  g.name = std::move(name);
  g.scenario = std::make_shared<Scenario>(std::move(input_labels), std::move(outputs), std::move(tuples));
  const Scenario& sc = *g.scenario;
  g.pi.assign(sc.num_tuples(), Rational(1, static_cast<long>(sc.num_tuples())));
  g.hypergraph = std::move(hg);
  if (sc.size() > kMaxTabulatedPredicate) return g;
  const auto& h = *g.hypergraph;
  g.win.assign(sc.size(), 0);
  for (std::size_t t = 0; t < sc.num_tuples(); ++t) {
    const auto& x = sc.tuples()[t];
    auto common = common_vertices(h, x);
    std::vector<std::vector<std::size_t>> slot(n);
    for (std::size_t i = 0; i < n; ++i)
      for (auto v : common) slot[i].push_back(slot_of(h.edges[i][x[i]], v));
    for (std::size_t k = 0; k < sc.block_size(t); ++k) {
      auto a = sc.decode(t, k);
      bool ok = true;
      for (std::size_t c = 0; c < common.size() && ok; ++c) {
        int prod = 1;
        for (std::size_t i = 0; i < n; ++i) prod *= h.assignments[i][x[i]][a[i]][slot[i][c]];
        ok = prod == 1;
      }
      g.win[sc.offset(t) + k] = ok ? 1 : 0;
    }
  }
  return g;
}

NonlocalGame blcs_to_game(const Blcs& s, std::string name) {
  std::vector<HyperEdge> alice, bob;
  std::vector<std::vector<std::string>> labels(2);
  for (std::size_t j = 0; j < s.num_constraints(); ++j) {
    alice.push_back(HyperEdge{s.constraints()[j].vars, s.constraints()[j].parity});
    labels[0].push_back(std::to_string(j + 1));
  }
  for (std::size_t v = 0; v < s.num_variables(); ++v) {
    bob.push_back(HyperEdge{{v}, 0});
    labels[1].push_back(s.variables()[v]);
  }
  return hypergraph_game(std::move(name), s.variables(), {alice, bob}, {}, std::move(labels));
}

NonlocalGame compact_square_game(const Blcs& grid, std::size_t rows, std::string name) {
  if (rows == 0 || rows >= grid.num_constraints()) throw std::invalid_argument("compact_square_game: bad row count");
  std::vector<HyperEdge> alice, bob;
  std::vector<std::vector<std::string>> labels(2);
  for (std::size_t j = 0; j < grid.num_constraints(); ++j) {
    HyperEdge e{grid.constraints()[j].vars, grid.constraints()[j].parity};
    if (j < rows) {
      alice.push_back(e);
      labels[0].push_back("r" + std::to_string(j + 1));
    } else {
      bob.push_back(e);
      labels[1].push_back("c" + std::to_string(j + 1 - rows));
    }
  }
  for (const auto& r : alice) {
    for (const auto& c : bob) {
      std::vector<std::size_t> common;
      std::set_intersection(r.vertices.begin(), r.vertices.end(), c.vertices.begin(), c.vertices.end(),
                            std::back_inserter(common));
      if (common.size() != 1) throw std::invalid_argument("compact_square_game: row/column pair must meet in one vertex");
    }
  }
  return hypergraph_game(std::move(name), grid.variables(), {alice, bob}, {}, std::move(labels));
}

NonlocalGame compact_star_game(const Blcs& edges, std::string name) {
  std::vector<HyperEdge> alice, bob;
  std::vector<std::vector<std::string>> labels(2);
  for (std::size_t j = 0; j < edges.num_constraints(); ++j) {
    alice.push_back(HyperEdge{edges.constraints()[j].vars, edges.constraints()[j].parity});
    labels[0].push_back("s" + std::to_string(j + 1));
  }
  auto deg = degrees(edges);
  for (std::size_t v = 0; v < edges.num_variables(); ++v) {
    if (deg[v] == 0) throw std::invalid_argument("compact_star_game: vertex outside every edge");
    bob.push_back(HyperEdge{{v}, 0});
    labels[1].push_back(edges.variables()[v]);
  }
  std::vector<InputTuple> tuples;
  for (std::size_t j = 0; j < edges.num_constraints(); ++j)
    for (auto v : edges.constraints()[j].vars) tuples.push_back({j, v});
  return hypergraph_game(std::move(name), edges.variables(), {alice, bob}, std::move(tuples), std::move(labels));
}

namespace {

NonlocalGame cube_game(std::size_t side, const std::vector<int>& parities, std::string name) {
  std::vector<std::string> vlabels;
  for (std::size_t a = 0; a < side; ++a)
    for (std::size_t b = 0; b < side; ++b)
      for (std::size_t c = 0; c < side; ++c) vlabels.push_back(std::to_string(a) + std::to_string(b) + std::to_string(c));
  std::vector<std::vector<HyperEdge>> edges(3);
  std::vector<std::vector<std::string>> labels(3);
  for (std::size_t player = 0; player < 3; ++player) {
    for (std::size_t face = 0; face < side; ++face) {
      HyperEdge e;
      e.parity = parities[face];
      for (std::size_t v = 0; v < vlabels.size(); ++v) {
        std::size_t coord[3] = {v / (side * side), (v / side) % side, v % side};
        if (coord[player] == face) e.vertices.push_back(v);
      }
      edges[player].push_back(std::move(e));
      labels[player].push_back(std::to_string(face));
    }
  }
  return hypergraph_game(std::move(name), std::move(vlabels), std::move(edges), {}, std::move(labels));
}

}  // namespace

NonlocalGame ghz_cube_game() { return cube_game(2, {1, -1}, "ghz_cube"); }
NonlocalGame lifted_ghz_game() { return cube_game(3, {1, -1, 1}, "lifted_ghz"); }

NonlocalGame chsh_game() {
  NonlocalGame g;
  g.name = "chsh";
  g.scenario = std::make_shared<Scenario>(std::vector<std::vector<std::string>>{{"0", "1"}, {"0", "1"}},
                                          std::vector<std::vector<std::vector<std::string>>>{
                                              {{"0", "1"}, {"0", "1"}}, {{"0", "1"}, {"0", "1"}}});
  const Scenario& sc = *g.scenario;
  g.pi.assign(4, Rational(1, 4));
  g.win.assign(sc.size(), 0);
  for (std::size_t t = 0; t < 4; ++t) {
    const auto& x = sc.tuples()[t];
    for (std::size_t k = 0; k < 4; ++k) {
      auto a = sc.decode(t, k);
      g.win[sc.offset(t) + k] = ((a[0] ^ a[1]) == (x[0] & x[1])) ? 1 : 0;
    }
  }
  return g;
}

NonlocalGame mermin_ghz_game() {
  NonlocalGame g;
  g.name = "mermin_ghz";
  std::vector<std::vector<std::string>> in(3, {"0", "1"});
  std::vector<std::vector<std::vector<std::string>>> out(3, {{"0", "1"}, {"0", "1"}});
  std::vector<InputTuple> tuples = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  g.scenario = std::make_shared<Scenario>(in, out, tuples);
  const Scenario& sc = *g.scenario;
  g.pi.assign(4, Rational(1, 4));
  g.win.assign(sc.size(), 0);
  for (std::size_t t = 0; t < 4; ++t) {
    const auto& x = sc.tuples()[t];
    std::size_t half = (x[0] + x[1] + x[2]) / 2;
    for (std::size_t k = 0; k < sc.block_size(t); ++k) {
      auto a = sc.decode(t, k);
      g.win[sc.offset(t) + k] = (((a[0] + a[1] + a[2]) % 2) == half % 2) ? 1 : 0;
    }
  }
  return g;
}

Rational strategy_value(const NonlocalGame& g, const DeterministicStrategy& s) {
  const Scenario& sc = *g.scenario;
  Rational v = 0;
  for (std::size_t t = 0; t < sc.num_tuples(); ++t) {
    OutputTuple a(sc.players());
    for (std::size_t i = 0; i < sc.players(); ++i) a[i] = s.at(i).at(sc.tuples()[t][i]);
    if (g.wins(t, sc.encode(t, a))) v += g.pi[t];
  }
  return v;
}

ClassicalValue classical_value_enumeration(const NonlocalGame& g, std::uint64_t cap) {
  validate_game(g);
  const Scenario& sc = *g.scenario;
  const std::size_t n = sc.players();
  // responder: player with most deterministic strategies (ties -> later player)
  std::vector<long double> count(n, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < sc.inputs(i).size(); ++x) count[i] *= static_cast<long double>(sc.num_outputs(i, x));
  std::size_t r = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (count[i] >= count[r]) r = i;
  long double enumerated = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (i != r) enumerated *= count[i];
  if (enumerated > static_cast<long double>(cap)) throw std::invalid_argument("classical_value: strategy cap exceeded");

  if (g.win.empty()) throw std::invalid_argument("classical_value: predicate not tabulated");
  ScaledPi w = scale_pi(g.pi);
  // strides of each player's output digit inside a block
  std::vector<std::vector<std::size_t>> stride(sc.num_tuples(), std::vector<std::size_t>(n, 1));
  for (std::size_t t = 0; t < sc.num_tuples(); ++t)
    for (std::size_t i = n - 1; i-- > 0;)
      stride[t][i] = stride[t][i + 1] * sc.num_outputs(i + 1, sc.tuples()[t][i + 1]);

  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    if (i != r)
      for (std::size_t x = 0; x < sc.inputs(i).size(); ++x) slots.emplace_back(i, x);

  DeterministicStrategy cur(n);
  for (std::size_t i = 0; i < n; ++i) cur[i].assign(sc.inputs(i).size(), 0);

  ClassicalValue best;
  std::int64_t best_score = -1;
  std::vector<std::vector<std::int64_t>> score(sc.inputs(r).size());
  for (std::size_t x = 0; x < sc.inputs(r).size(); ++x) score[x].assign(sc.num_outputs(r, x), 0);

  std::uint64_t examined = 0;
  while (true) {
    ++examined;
    for (auto& row : score) std::fill(row.begin(), row.end(), 0);
    for (std::size_t t = 0; t < sc.num_tuples(); ++t) {
      const auto& x = sc.tuples()[t];
      std::size_t base = sc.offset(t);
      for (std::size_t i = 0; i < n; ++i)
        if (i != r) base += cur[i][x[i]] * stride[t][i];
      auto& row = score[x[r]];
      for (std::size_t a = 0; a < row.size(); ++a)
        if (g.win[base + a * stride[t][r]]) row[a] += w.weight[t];
    }
    std::int64_t total = 0;
    for (std::size_t x = 0; x < score.size(); ++x) {
      std::size_t arg = 0;
      for (std::size_t a = 1; a < score[x].size(); ++a)
        if (score[x][a] > score[x][arg]) arg = a;
      cur[r][x] = arg;
      total += score[x][arg];
    }
    if (total > best_score || (total == best_score && lex_less(cur, best.witness))) {
      best_score = total;
      best.witness = cur;
    }
    // odometer over enumerated slots, last slot fastest
    std::size_t k = slots.size();
    bool done = true;
    while (k > 0) {
      --k;
      auto [i, x] = slots[k];
      if (++cur[i][x] < sc.num_outputs(i, x)) {
        done = false;
        break;
      }
      cur[i][x] = 0;
    }
    if (done) break;
  }
  best.value = Rational(Integer(best_score), w.den);
  best.method = "enumeration";
  best.strategies = examined;
  return best;
}

bool gf2_route_applies(const NonlocalGame& g) {
  if (!g.hypergraph) return false;
  const auto& hg = *g.hypergraph;
  const Scenario& sc = *g.scenario;
  for (const auto& x : sc.tuples()) {
    auto common = common_vertices(hg, x);
    if (common.size() > 1) return false;
  }
  return true;
}

ClassicalValue classical_value_gf2(const NonlocalGame& g) {
  validate_game(g);
  if (!gf2_route_applies(g)) throw std::invalid_argument("classical_value_gf2: not a single-vertex hypergraph game");
  const auto& hg = *g.hypergraph;
  const Scenario& sc = *g.scenario;
  const std::size_t n = sc.players();

  // one bit per (player, input, slot); bit set <=> value -1
  std::vector<std::vector<std::size_t>> first_bit(n);
  std::size_t nb = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& e : hg.edges[i]) {
      first_bit[i].push_back(nb);
      nb += e.vertices.size();
    }
  std::vector<BitVec> rows;
  std::vector<std::uint8_t> rhs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < hg.edges[i].size(); ++x) {
      const auto& e = hg.edges[i][x];
      if (e.parity == 0) continue;
      BitVec row(nb);
      for (std::size_t k = 0; k < e.vertices.size(); ++k) row.set(first_bit[i][x] + k);
      rows.push_back(std::move(row));
      rhs.push_back(e.parity == -1 ? 1 : 0);
    }
  auto base = gf2_solve(rows, rhs, nb);
  if (!base.consistent) throw std::invalid_argument("classical_value_gf2: parity requirements are contradictory");

  ScaledPi w = scale_pi(g.pi);
  std::int64_t constant = 0;
  std::vector<std::size_t> rel;   // tuples with a common vertex
  std::vector<BitVec> forms;      // L_t over the bits
  for (std::size_t t = 0; t < sc.num_tuples(); ++t) {
    const auto& x = sc.tuples()[t];
    auto common = common_vertices(hg, x);
    if (common.empty()) {
      constant += w.weight[t];
      continue;
    }
    BitVec form(nb);
    for (std::size_t i = 0; i < n; ++i) {
      form.flip(first_bit[i][x[i]] + slot_of(hg.edges[i][x[i]], common[0]));
    }
    rel.push_back(t);
    forms.push_back(std::move(form));
  }
  const std::size_t T = rel.size();
  const std::size_t r = base.nullspace.size();
  std::vector<std::uint8_t> w0(T);
  for (std::size_t t = 0; t < T; ++t) w0[t] = forms[t].dot(base.particular) ? 1 : 0;
  std::vector<BitVec> images;
  for (std::size_t j = 0; j < r; ++j) {
    BitVec img(T);
    for (std::size_t t = 0; t < T; ++t)
      if (forms[t].dot(base.nullspace[j])) img.set(t);
    images.push_back(std::move(img));
  }
  auto checks = gf2_solve(images, std::vector<std::uint8_t>(images.size(), 0), T).nullspace;
  const std::size_t k = checks.size();
  if (k > 20) throw std::invalid_argument("classical_value_gf2: syndrome space too large");
  std::vector<std::uint32_t> col(T, 0);
  std::uint32_t target = 0;
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t h = 0; h < k; ++h)
      if (checks[h].get(t)) col[t] |= (1U << h);
    if (w0[t]) target ^= col[t];
  }
  const std::size_t S = std::size_t{1} << k;
  const std::int64_t NEG = std::numeric_limits<std::int64_t>::min() / 4;
  std::vector<std::vector<std::int64_t>> dp(T + 1, std::vector<std::int64_t>(S, NEG));
  dp[0][0] = 0;
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t s = 0; s < S; ++s) {
      if (dp[t][s] == NEG) continue;
      dp[t + 1][s] = std::max(dp[t + 1][s], dp[t][s] + w.weight[rel[t]]);
      dp[t + 1][s ^ col[t]] = std::max(dp[t + 1][s ^ col[t]], dp[t][s]);
    }
  }
  if (dp[T][target] == NEG) throw std::logic_error("classical_value_gf2: unreachable syndrome");
  // recover the winning pattern w (1 = lose at tuple)
  std::vector<std::uint8_t> lose(T, 0);
  std::uint32_t s = target;
  for (std::size_t t = T; t-- > 0;) {
    if (dp[t][s] != NEG && dp[t][s] + w.weight[rel[t]] == dp[t + 1][s]) {
      lose[t] = 0;
    } else {
      lose[t] = 1;
      s ^= col[t];
    }
  }
  std::vector<BitVec> mrows;
  std::vector<std::uint8_t> mrhs;
  for (std::size_t t = 0; t < T; ++t) {
    BitVec row(r);
    for (std::size_t j = 0; j < r; ++j)
      if (images[j].get(t)) row.set(j);
    mrows.push_back(std::move(row));
    mrhs.push_back(static_cast<std::uint8_t>(lose[t] ^ w0[t]));
  }
  auto z = gf2_solve(mrows, mrhs, r);
  if (!z.consistent) throw std::logic_error("classical_value_gf2: pattern outside the affine image");
  BitVec y = base.particular;
  for (std::size_t j = 0; j < r; ++j)
    if (z.particular.get(j)) y ^= base.nullspace[j];

  ClassicalValue out;
  out.witness.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t x = 0; x < hg.edges[i].size(); ++x) {
      std::vector<int> vals;
      for (std::size_t kk = 0; kk < hg.edges[i][x].vertices.size(); ++kk) vals.push_back(y.get(first_bit[i][x] + kk) ? -1 : 1);
      const auto& alph = hg.assignments[i][x];
      auto it = std::find(alph.begin(), alph.end(), vals);
      if (it == alph.end()) throw std::logic_error("classical_value_gf2: assignment outside alphabet");
      out.witness[i].push_back(static_cast<std::size_t>(it - alph.begin()));
    }
  }
  out.value = Rational(Integer(dp[T][target] + constant), w.den);
  out.method = "gf2-coset";
  out.strategies = 0;
  if (strategy_value(g, out.witness) != out.value) throw std::logic_error("classical_value_gf2: witness mismatch");
  return out;
}

ClassicalValue classical_value(const NonlocalGame& g, std::uint64_t cap) {
  try {
    return classical_value_enumeration(g, cap);
  } catch (const std::invalid_argument&) {
    if (!gf2_route_applies(g)) throw;
  }
  return classical_value_gf2(g);
}

Blcs binary_game_to_blcs(const NonlocalGame& g) {
  validate_game(g);
  const Scenario& sc = *g.scenario;
  const std::size_t n = sc.players();
  if (n > 16) throw std::invalid_argument("binary_game_to_blcs: too many players");
  std::vector<std::string> vars;
  std::vector<std::vector<std::size_t>> var_index(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < sc.inputs(i).size(); ++x) {
      for (std::size_t xx = 0; xx < sc.inputs(i).size(); ++xx)
        if (sc.num_outputs(i, xx) != 2) throw std::invalid_argument("binary_game_to_blcs: non-binary alphabet");
      var_index[i].push_back(vars.size());
      vars.push_back("v" + std::to_string(i + 1) + "_" + sc.inputs(i)[x]);
    }
  std::vector<Constraint> cons;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1U << i)) members.push_back(i);
    // gamma(S, x_S) accumulated over tuples
    std::map<std::vector<std::size_t>, Rational> gamma;
    for (std::size_t t = 0; t < sc.num_tuples(); ++t) {
      const auto& x = sc.tuples()[t];
      std::vector<std::size_t> xs;
      for (auto i : members) xs.push_back(x[i]);
      std::int64_t acc = 0;
      for (std::size_t k = 0; k < sc.block_size(t); ++k) {
        if (!g.wins(t, k)) continue;
        auto a = sc.decode(t, k);
        int prod = 1;
        for (auto i : members) prod *= a[i] == 0 ? 1 : -1;
        acc += prod;
      }
      gamma[xs] += g.pi[t] * acc / Rational(std::int64_t{1} << n);
    }
    for (const auto& [xs, val] : gamma) {
      if (val == 0) continue;
      Constraint c;
      for (std::size_t m = 0; m < members.size(); ++m) c.vars.push_back(var_index[members[m]][xs[m]]);
      c.parity = val > 0 ? 1 : -1;
      cons.push_back(std::move(c));
    }
  }
  return Blcs(std::move(vars), std::move(cons));
}

}  // namespace sdl
