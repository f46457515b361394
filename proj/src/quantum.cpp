#include "sdl/quantum.hpp"

#include <algorithm>
#include <stdexcept>

#include "sdl/gf2.hpp"
#include "sdl/lifting.hpp"

namespace sdl {

using Real2 = Sqrt2Ext<SmallRational>;

Cx inv_sqrt2() { return Cx(Real2(SmallRational(0), SmallRational(1, 2))); }

CMat identity(std::size_t d) { return CMat::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)); }

CMat pauli(const std::string& name) {
  CMat m = CMat::Zero(2, 2);
  if (name == "id") {
    m(0, 0) = 1;
    m(1, 1) = 1;
  } else if (name == "sx") {
    m(0, 1) = 1;
    m(1, 0) = 1;
  } else if (name == "sy") {
    m(0, 1) = -Cx::i();
    m(1, 0) = Cx::i();
  } else if (name == "sz") {
    m(0, 0) = 1;
    m(1, 1) = -1;
  } else {
    throw std::invalid_argument("unknown Pauli operator '" + name + "'");
  }
  return m;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero())
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()).setZero();
      else
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  return out;
}

CMat tensor(const std::vector<CMat>& factors) {
  if (factors.empty()) throw std::invalid_argument("tensor: no factors");
  CMat out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  if (out.rows() > 64) throw std::invalid_argument("tensor: dimension above 64");
  return out;
}

CMat adjoint(const CMat& m) {
  CMat out(m.cols(), m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(j, i) = m(i, j).conj();
  return out;
}

bool is_zero(const CMat& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (!m.data()[i].is_zero()) return false;
  return true;
}

bool is_hermitian(const CMat& m) { return m.rows() == m.cols() && m == adjoint(m); }

bool is_involution(const CMat& m) { return m.rows() == m.cols() && CMat(m * m) == identity(static_cast<std::size_t>(m.rows())); }

bool commute(const CMat& a, const CMat& b) { return CMat(a * b) == CMat(b * a); }

int scalar_sign(const CMat& m) {
  const auto d = static_cast<std::size_t>(m.rows());
  if (m == identity(d)) return 1;
  if (m == CMat(-identity(d))) return -1;
  return 0;
}

namespace {

// 1/sqrt(d) when it lies in Q(sqrt 2)
Cx inv_sqrt(std::size_t d) {
  for (std::int64_t k = 1; k * k <= static_cast<std::int64_t>(d); ++k) {
    if (static_cast<std::size_t>(k * k) == d) return Cx(Real2(SmallRational(1, k)));
    if (static_cast<std::size_t>(2 * k * k) == d) return Cx(Real2(SmallRational(0), SmallRational(1, 2 * k)));
  }
  throw std::invalid_argument("unsupported dimension " + std::to_string(d) + ": 1/sqrt(d) is not in Q(sqrt 2)");
}

Q2 real_q2(const Cx& z) {
  if (!(z.imag() == Real2())) throw std::domain_error("expected a real value");
  return to_q2(z.real());
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

std::size_t total_dim(const QuantumStrategy& s) {
  std::size_t d = 1;
  for (auto k : s.dims) d *= k;
  return d;
}

// Slot as a matrix on its player's space.
CMat slot_matrix(const Slot& s, std::size_t dim) {
  if (s.is_constant()) return CMat(Cx(s.constant) * identity(dim));
  return s.op;
}

}  // namespace

CVec mes_state(std::size_t d) {
  if (d < 2) throw std::invalid_argument("mes_state: d must be at least 2");
  Cx c = inv_sqrt(d);
  CVec v = CVec::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t i = 0; i < d; ++i) v[static_cast<Eigen::Index>(i * d + i)] = c;
  return v;
}

CVec ghz_state(std::size_t n) {
  if (n < 2 || n > 6) throw std::invalid_argument("ghz_state: n must be in 2..6");
  CVec v = CVec::Zero(Eigen::Index{1} << n);
  v[0] = inv_sqrt2();
  v[(Eigen::Index{1} << n) - 1] = inv_sqrt2();
  return v;
}

Cx inner(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner: size mismatch");
  Cx acc;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) acc += a[i].conj() * b[i];
  return acc;
}

std::vector<int> output_values(const NonlocalGame& g, std::size_t player, std::size_t x, std::size_t a) {
  if (g.hypergraph) return g.hypergraph->assignments.at(player).at(x).at(a);
  if (g.scenario->num_outputs(player, x) != 2) throw std::invalid_argument("output_values: non-binary output without a hypergraph");
  return {a == 0 ? 1 : -1};
}

CMat line_product(const std::vector<Slot>& line, std::size_t dim) {
  CMat m = identity(dim);
  int sign = 1;
  for (const auto& s : line) {
    if (s.is_constant())
      sign *= s.constant;
    else
      m = m * s.op;
  }
  return sign == 1 ? m : CMat(-m);
}

void validate_strategy(const NonlocalGame& g, const QuantumStrategy& s) {
  const Scenario& sc = *g.scenario;
  const std::size_t n = sc.players();
  if (s.dims.size() != n || s.slots.size() != n) throw std::invalid_argument("strategy: player count mismatch");
  if (static_cast<std::size_t>(s.state.size()) != total_dim(s)) throw std::invalid_argument("strategy: state dimension mismatch");
  if (!(inner(s.state, s.state) == Cx(1))) throw std::invalid_argument("strategy: state not normalized");
  if (s.kind == StateKind::MaximallyEntangled &&
      (n != 2 || s.dims[0] != s.dims[1] || s.state != mes_state(s.dims[0])))
    throw std::invalid_argument("strategy: state is not the maximally entangled state");
  for (std::size_t i = 0; i < n; ++i) {
    if (s.slots[i].size() != sc.inputs(i).size())
      throw std::invalid_argument("strategy: input count mismatch for player " + std::to_string(i + 1));
    for (std::size_t x = 0; x < s.slots[i].size(); ++x) {
      const auto& slots = s.slots[i][x];
      const std::string where = "player " + std::to_string(i + 1) + " input " + sc.inputs(i)[x];
      if (slots.size() != output_values(g, i, x, 0).size()) throw std::invalid_argument("strategy: slot count mismatch at " + where);
      for (std::size_t k = 0; k < slots.size(); ++k) {
        const auto& sl = slots[k];
        if (sl.is_constant()) {
          if (sl.constant != 1 && sl.constant != -1) throw std::invalid_argument("strategy: constant not +-1 at " + where);
          continue;
        }
        if (static_cast<std::size_t>(sl.op.rows()) != s.dims[i] || sl.op.cols() != sl.op.rows())
          throw std::invalid_argument("strategy: operator dimension mismatch at " + where);
        if (!is_hermitian(sl.op) || !is_involution(sl.op))
          throw std::invalid_argument("strategy: operator is not a +-1 observable at " + where);
        for (std::size_t l = 0; l < k; ++l)
          if (!slots[l].is_constant() && !commute(sl.op, slots[l].op))
            throw std::invalid_argument("strategy: operators do not commute at " + where);
      }
      if (g.hypergraph) {
        int par = g.hypergraph->edges[i][x].parity;
        if (par != 0 && scalar_sign(line_product(slots, s.dims[i])) != par)
          throw std::invalid_argument("strategy: slot product misses the parity at " + where);
      }
    }
  }
}

bool deterministic_on(const QuantumStrategy& s, const InputTuple& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (const auto& sl : s.slots.at(i).at(x[i]))
      if (!sl.is_constant()) return false;
  return true;
}

Cx expectation(const QuantumStrategy& s, const std::vector<CMat>& local_ops) {
  if (local_ops.size() != s.dims.size()) throw std::invalid_argument("expectation: operator count mismatch");
  if (s.kind == StateKind::MaximallyEntangled) {
    // <Phi| A (x) B |Phi> = (1/d) sum_jk A_jk B_jk
    const auto& a = local_ops[0];
    const auto& b = local_ops[1];
    Cx acc;
    for (Eigen::Index k = 0; k < a.size(); ++k)
      if (!a.data()[k].is_zero() && !b.data()[k].is_zero()) acc += a.data()[k] * b.data()[k];
    return acc / Cx(static_cast<int>(s.dims[0]));
  }
  CMat m = tensor(local_ops);
  return inner(s.state, m * s.state);
}

Behavior<Q2> behavior_from_strategy(const NonlocalGame& g, const QuantumStrategy& s) {
  validate_strategy(g, s);
  const Scenario& sc = *g.scenario;
  if (sc.size() > (std::size_t{1} << 22)) throw std::invalid_argument("behavior_from_strategy: behavior table too large");
  const std::size_t n = sc.players();
  // projector per (player, input, output); empty matrix when a constant slot rules the output out
  std::vector<std::vector<std::vector<CMat>>> proj(n);
  for (std::size_t i = 0; i < n; ++i) {
    proj[i].resize(sc.inputs(i).size());
    for (std::size_t x = 0; x < sc.inputs(i).size(); ++x) {
      for (std::size_t a = 0; a < sc.num_outputs(i, x); ++a) {
        auto vals = output_values(g, i, x, a);
        CMat p = identity(s.dims[i]);
        bool possible = true;
        for (std::size_t k = 0; k < vals.size() && possible; ++k) {
          const auto& sl = s.slots[i][x][k];
          if (sl.is_constant()) {
            possible = sl.constant == vals[k];
          } else {
            CMat half = identity(s.dims[i]) + Cx(vals[k]) * sl.op;
            p = p * half;
            p = p * Cx(Real2(SmallRational(1, 2)));
          }
        }
        proj[i][x].push_back(possible ? p : CMat());
      }
    }
  }
  Behavior<Q2> b(g.scenario);
  for (std::size_t t = 0; t < sc.num_tuples(); ++t) {
    const auto& x = sc.tuples()[t];
    for (std::size_t k = 0; k < sc.block_size(t); ++k) {
      auto a = sc.decode(t, k);
      std::vector<CMat> ops;
      bool zero = false;
      for (std::size_t i = 0; i < n && !zero; ++i) {
        const auto& p = proj[i][x[i]][a[i]];
        if (p.size() == 0) zero = true;
        ops.push_back(p);
      }
      if (zero) continue;
      b.at(t, k) = real_q2(expectation(s, ops));
    }
  }
  return b;
}

Q2 vertex_value(const NonlocalGame& g, const QuantumStrategy& s) {
  if (!g.hypergraph) throw std::invalid_argument("vertex_value: hypergraph game required");
  validate_strategy(g, s);
  const auto& hg = *g.hypergraph;
  const Scenario& sc = *g.scenario;
  Q2 total;
  for (std::size_t t = 0; t < sc.num_tuples(); ++t) {
    const auto& x = sc.tuples()[t];
    auto common = common_vertices(hg, x);
    if (common.size() > 1) throw std::invalid_argument("vertex_value: input tuple shares more than one vertex");
    if (common.empty()) {
      total += Q2(g.pi[t]);
      continue;
    }
    std::vector<CMat> ops;
    for (std::size_t i = 0; i < x.size(); ++i)
      ops.push_back(slot_matrix(s.slots[i][x[i]][slot_of(hg.edges[i][x[i]], common[0])], s.dims[i]));
    Q2 corr = real_q2(expectation(s, ops));
    total += Q2(g.pi[t]) * (Q2(1) + corr) / Q2(2);
  }
  return total;
}

QuantumStrategy strategy_from_vertices(const NonlocalGame& g, std::string label, std::vector<std::size_t> dims, CVec state,
                                       StateKind kind, const std::vector<std::vector<Slot>>& per_player_vertex) {
  if (!g.hypergraph) throw std::invalid_argument("strategy_from_vertices: hypergraph game required");
  const auto& hg = *g.hypergraph;
  QuantumStrategy s;
  s.label = std::move(label);
  s.dims = std::move(dims);
  s.state = std::move(state);
  s.kind = kind;
  s.slots.resize(hg.edges.size());
  for (std::size_t i = 0; i < hg.edges.size(); ++i)
    for (const auto& e : hg.edges[i]) {
      std::vector<Slot> slots;
      for (auto v : e.vertices) slots.push_back(per_player_vertex.at(i).at(v));
      s.slots[i].push_back(std::move(slots));
    }
  return s;
}

std::array<CMat, 9> magic_square_operator_solution() {
  const CMat I = pauli("id"), X = pauli("sx"), Y = pauli("sy"), Z = pauli("sz");
  return {kron(X, I), kron(I, X), kron(X, X),  //
          kron(I, Z), kron(Z, I), kron(Z, Z),  //
          kron(X, Z), kron(Z, X), kron(Y, Y)};
}

Pentagram pentagram_operator_solution() {
  const CMat I = pauli("id"), X = pauli("sx"), Y = pauli("sy");
  auto t = [](const CMat& a, const CMat& b, const CMat& c) { return tensor({a, b, c}); };
  const CMat xxx = t(X, X, X), xyy = t(X, Y, Y), yxy = t(Y, X, Y), yyx = t(Y, Y, X);
  const CMat x1 = t(X, I, I), x2 = t(I, X, I), x3 = t(I, I, X);
  const CMat y1 = t(Y, I, I), y2 = t(I, Y, I), y3 = t(I, I, Y);
  Pentagram p;
  p.lines[0] = {xxx, xyy, yxy, yyx};
  p.lines[1] = {x1, x2, x3, xxx};
  p.lines[2] = {x1, y2, y3, xyy};
  p.lines[3] = {y1, x2, y3, yxy};
  p.lines[4] = {y1, y2, x3, yyx};
  return p;
}

std::vector<Slot> fix_line_parities(std::vector<Slot> ops, const std::vector<std::vector<std::size_t>>& lines,
                                    const std::vector<int>& parity) {
  if (lines.size() != parity.size()) throw std::invalid_argument("fix_line_parities: size mismatch");
  std::size_t dim = 1;
  for (const auto& o : ops)
    if (!o.is_constant()) dim = static_cast<std::size_t>(o.op.rows());
  std::vector<BitVec> rows;
  std::vector<std::uint8_t> rhs;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    std::vector<Slot> line;
    BitVec row(ops.size());
    for (auto v : lines[k]) {
      line.push_back(ops.at(v));
      row.flip(v);
    }
    int cur = scalar_sign(line_product(line, dim));
    if (cur == 0) throw std::invalid_argument("fix_line_parities: line product is not +-I");
    rows.push_back(std::move(row));
    rhs.push_back(cur != parity[k] ? 1 : 0);
  }
  auto sol = gf2_solve(rows, rhs, ops.size());
  if (!sol.consistent) throw std::invalid_argument("fix_line_parities: target parities unreachable");
  for (std::size_t v = 0; v < ops.size(); ++v)
    if (sol.particular.get(v)) ops[v] = ops[v].negated();
  return ops;
}

NonlocalGame sdlmsq_game() {
  static const NonlocalGame g = compact_square_game(sdl_magic_square(), 4, "sdlmsq");
  return g;
}

NonlocalGame sdlmstar_game() {
  static const NonlocalGame g = compact_star_game(sdl_magic_star(), "sdlmstar");
  return g;
}

NonlocalGame lifted_chsh_game() {
  static const NonlocalGame g = [] {
    Blcs s = lifted_chsh_system();
    NonlocalGame out = blcs_to_game(s, "lifted_chsh");
    const std::vector<std::pair<std::string, std::string>> pairs = {{"v1", "v2"}, {"v1,1", "v2,1"}, {"v1,2", "v2,2"}};
    for (std::size_t j = 0; j < s.num_constraints(); ++j) {
      const auto& vars = s.constraints()[j].vars;
      for (const auto& [a, b] : pairs) {
        auto ia = std::find(vars.begin(), vars.end(), s.index_of(a));
        auto ib = std::find(vars.begin(), vars.end(), s.index_of(b));
        if (ia == vars.end() || ib == vars.end()) continue;
        out.side_constraints.push_back(PairCorrelatorConstraint{0, j, static_cast<std::size_t>(ia - vars.begin()),
                                                                static_cast<std::size_t>(ib - vars.begin())});
      }
    }
    return out;
  }();
  return g;
}

std::vector<int> gamma_tuple(std::size_t i, std::size_t bits) {
  if (i == 0 || i > (std::size_t{1} << bits)) throw std::invalid_argument("gamma_tuple: index out of range");
  std::vector<int> g(bits);
  for (std::size_t k = 0; k < bits; ++k) g[k] = (((i - 1) >> (bits - 1 - k)) & 1U) ? -1 : 1;
  return g;
}

namespace {

std::vector<Slot> transposed(const std::vector<Slot>& v) {
  std::vector<Slot> out;
  for (const auto& s : v) out.push_back(s.transposed());
  return out;
}

}  // namespace

QuantumStrategy magic_square_strategy() {
  NonlocalGame g = compact_square_game(magic_square_system(), 3, "magic_square");
  auto ops = magic_square_operator_solution();
  std::vector<Slot> alice;
  for (const auto& m : ops) alice.push_back(Slot::observable(m));
  return strategy_from_vertices(g, "magic_square", {4, 4}, mes_state(4), StateKind::MaximallyEntangled,
                                {alice, transposed(alice)});
}

QuantumStrategy sdlmsq_pd_strategy(std::size_t m, std::size_t n, std::size_t i) {
  if (m < 1 || m > 4 || n < 1 || n > 4) throw std::invalid_argument("sdlmsq_pd_strategy: m, n must be in 1..4");
  const auto gm = gamma_tuple(i, 5);
  const Blcs grid = sdl_magic_square();
  auto col_parity = [&](std::size_t l) { return grid.constraints()[4 + l].parity; };

  // template deterministic on (r1, c1)
  std::vector<std::vector<Slot>> T(4, std::vector<Slot>(4));
  T[0][0] = Slot::fixed(gm[0]);
  T[0][1] = Slot::fixed(gm[1]);
  T[0][2] = Slot::fixed(gm[2]);
  T[0][3] = Slot::fixed(gm[0] * gm[1] * gm[2]);
  T[1][0] = Slot::fixed(gm[3]);
  T[2][0] = Slot::fixed(gm[4]);
  T[3][0] = Slot::fixed(gm[0] * gm[3] * gm[4]);
  auto ms = magic_square_operator_solution();
  std::vector<Slot> block;
  for (const auto& op : ms) block.push_back(Slot::observable(op));
  std::vector<std::vector<std::size_t>> lines = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}, {1, 4, 7}, {2, 5, 8}};
  std::vector<int> target;
  for (std::size_t k = 1; k < 4; ++k) target.push_back(T[k][0].constant);
  for (std::size_t l = 1; l < 4; ++l) target.push_back(col_parity(l) * T[0][l].constant);
  block = fix_line_parities(block, lines, target);
  for (std::size_t k = 1; k < 4; ++k)
    for (std::size_t l = 1; l < 4; ++l) T[k][l] = block[3 * (k - 1) + (l - 1)];

  // move row 1 to row m and column 1 to column n
  const std::size_t m0 = m - 1, n0 = n - 1;
  auto swap0 = [](std::size_t k, std::size_t to) { return k == 0 ? to : (k == to ? 0 : k); };
  std::vector<Slot> alice(16);
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t l = 0; l < 4; ++l) alice[4 * k + l] = T[swap0(k, m0)][swap0(l, n0)];
  if (col_parity(n0) != col_parity(0)) {
    alice[4 * m0 + 0] = alice[4 * m0 + 0].negated();
    alice[4 * m0 + n0] = alice[4 * m0 + n0].negated();
  }
  return strategy_from_vertices(sdlmsq_game(),
                                "sdlmsq(m=" + std::to_string(m) + ",n=" + std::to_string(n) + ",i=" + std::to_string(i) + ")",
                                {4, 4}, mes_state(4), StateKind::MaximallyEntangled, {alice, transposed(alice)});
}

QuantumStrategy sdlmstar_pd_strategy(std::size_t j, std::size_t i) {
  if (j < 1 || j > 6) throw std::invalid_argument("sdlmstar_pd_strategy: j must be in 1..6");
  const auto gm = gamma_tuple(i, 4);
  const Blcs star = sdl_magic_star();
  const std::size_t E = star.num_constraints();
  // meet[a][b] = vertex shared by edges a and b
  std::vector<std::vector<std::size_t>> meet(E, std::vector<std::size_t>(E, 0));
  for (std::size_t a = 0; a < E; ++a)
    for (std::size_t b = 0; b < E; ++b) {
      if (a == b) continue;
      const auto& va = star.constraints()[a].vars;
      const auto& vb = star.constraints()[b].vars;
      std::vector<std::size_t> c;
      std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(c));
      if (c.size() != 1) throw std::logic_error("sdlmstar: edges must meet in one vertex");
      meet[a][b] = c[0];
    }
  auto par = [&](std::size_t a) { return star.constraints()[a].parity; };

  // template deterministic on s1: u2..u5 = gamma, u1 = their product
  std::vector<Slot> T(star.num_variables());
  T[meet[0][1]] = Slot::fixed(gm[0] * gm[1] * gm[2] * gm[3]);
  for (std::size_t b = 2; b < E; ++b) T[meet[0][b]] = Slot::fixed(gm[b - 2]);
  // pentagram on the vertices off s1: edge s_a (a >= 1) plays line a-1
  auto pent = pentagram_operator_solution();
  for (std::size_t a = 1; a < E; ++a)
    for (std::size_t b = a + 1; b < E; ++b) {
      const auto& la = pent.lines[a - 1];
      const auto& lb = pent.lines[b - 1];
      bool found = false;
      for (const auto& x : la)
        for (const auto& y : lb)
          if (!found && x == y) {
            T[meet[a][b]] = Slot::observable(x);
            found = true;
          }
      if (!found) throw std::logic_error("pentagram lines must meet");
    }
  std::vector<std::vector<std::size_t>> lines;
  std::vector<int> target;
  for (std::size_t a = 1; a < E; ++a) {
    std::vector<std::size_t> line;
    for (std::size_t b = 1; b < E; ++b)
      if (b != a) line.push_back(meet[a][b]);
    lines.push_back(std::move(line));
    target.push_back(par(a) * T[meet[0][a]].constant);
  }
  T = fix_line_parities(T, lines, target);

  // move edge s1 to s_j
  const std::size_t j0 = j - 1;
  auto tau = [&](std::size_t a) { return a == 0 ? j0 : (a == j0 ? 0 : a); };
  std::vector<Slot> alice(star.num_variables());
  for (std::size_t a = 0; a < E; ++a)
    for (std::size_t b = a + 1; b < E; ++b) alice[meet[a][b]] = T[meet[tau(a)][tau(b)]];
  if (j0 != 0 && par(j0) != par(0)) alice[meet[0][j0]] = alice[meet[0][j0]].negated();
  return strategy_from_vertices(sdlmstar_game(), "sdlmstar(j=" + std::to_string(j) + ",i=" + std::to_string(i) + ")",
                                {8, 8}, mes_state(8), StateKind::MaximallyEntangled, {alice, transposed(alice)});
}

namespace {

// Per-player operators on the eight vertices of the GHZ cube, vertex index 4a+2b+c.
std::vector<std::vector<Slot>> ghz_cube_vertex_ops() {
  const CMat X = pauli("sx"), Y = pauli("sy");
  std::vector<std::vector<Slot>> v(3, std::vector<Slot>(8, Slot::fixed(1)));
  auto set = [&](std::size_t vertex, const CMat& a, const CMat& b, const CMat& c) {
    v[0][vertex] = Slot::observable(a);
    v[1][vertex] = Slot::observable(b);
    v[2][vertex] = Slot::observable(c);
  };
  set(0, X, X, X);       // 000
  set(3, X, Y, -Y);      // 011
  set(5, -Y, X, Y);      // 101
  set(6, Y, -Y, X);      // 110
  return v;
}

}  // namespace

QuantumStrategy ghz_cube_strategy() {
  return strategy_from_vertices(ghz_cube_game(), "ghz_cube", {2, 2, 2}, ghz_state(3), StateKind::Generic,
                                ghz_cube_vertex_ops());
}

QuantumStrategy lifted_ghz_pd_strategy(const InputTuple& xs) {
  if (xs.size() != 3) throw std::invalid_argument("lifted_ghz_pd_strategy: need three inputs");
  for (auto x : xs)
    if (x > 2) throw std::invalid_argument("lifted_ghz_pd_strategy: inputs are 0, 1, 2");
  static const NonlocalGame g = lifted_ghz_game();
  const auto cube = ghz_cube_vertex_ops();
  const std::vector<int> face_parity = {1, -1, 1};
  auto index = [](std::size_t a, std::size_t b, std::size_t c) { return 9 * a + 3 * b + c; };
  // non-x* values per axis in increasing order -> cube coordinates 0, 1
  std::vector<std::vector<int>> embed(3, std::vector<int>(3, -1));
  for (std::size_t p = 0; p < 3; ++p) {
    int next = 0;
    for (std::size_t f = 0; f < 3; ++f)
      if (f != xs[p]) embed[p][f] = next++;
  }
  std::vector<std::vector<Slot>> ops(3, std::vector<Slot>(27, Slot::fixed(1)));
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t c = 0; c < 3; ++c) {
        if (a == xs[0] || b == xs[1] || c == xs[2]) continue;
        std::size_t cv = static_cast<std::size_t>(4 * embed[0][a] + 2 * embed[1][b] + embed[2][c]);
        for (std::size_t p = 0; p < 3; ++p) ops[p][index(a, b, c)] = cube[p][cv];
      }
  // parity repair: player p flips the two violating faces together with the next player,
  // on vertices lying on the x* faces of the other two axes
  const auto& hg = *g.hypergraph;
  for (std::size_t p = 0; p < 3; ++p) {
    std::vector<std::size_t> bad;
    for (std::size_t f = 0; f < 3; ++f) {
      std::vector<Slot> line;
      for (auto v : hg.edges[p][f].vertices) line.push_back(ops[p][v]);
      if (scalar_sign(line_product(line, 2)) != face_parity[f]) bad.push_back(f);
    }
    if (bad.empty()) continue;
    if (bad.size() != 2) throw std::logic_error("lifted_ghz_pd_strategy: parity repair failed");
    const std::size_t q = (p + 1) % 3;
    for (auto f : bad) {
      std::size_t coord[3] = {xs[0], xs[1], xs[2]};
      coord[p] = f;
      std::size_t v = index(coord[0], coord[1], coord[2]);
      ops[p][v] = ops[p][v].negated();
      ops[q][v] = ops[q][v].negated();
    }
  }
  std::string label = "lifted_ghz(" + std::to_string(xs[0]) + "," + std::to_string(xs[1]) + "," + std::to_string(xs[2]) + ")";
  auto s = strategy_from_vertices(g, label, {2, 2, 2}, ghz_state(3), StateKind::Generic, ops);
  validate_strategy(g, s);
  return s;
}

QuantumStrategy tsirelson_chsh_strategy() {
  const CMat X = pauli("sx"), Z = pauli("sz");
  const Cx r = inv_sqrt2();
  QuantumStrategy s;
  s.label = "tsirelson";
  s.dims = {2, 2};
  s.state = mes_state(2);
  s.kind = StateKind::MaximallyEntangled;
  s.slots = {{{Slot::observable(Z)}, {Slot::observable(X)}},
             {{Slot::observable(CMat(r * (Z + X)))}, {Slot::observable(CMat(r * (Z - X)))}}};
  return s;
}

namespace {

Behavior<Rational> uniform_on_winning(const NonlocalGame& g, const Rational& w) {
  Behavior<Rational> b(g.scenario);
  for (std::size_t t = 0; t < g.scenario->num_tuples(); ++t)
    for (std::size_t k = 0; k < g.scenario->block_size(t); ++k)
      if (g.wins(t, k)) b.at(t, k) = w;
  return b;
}

}  // namespace

Behavior<Rational> sdlmsq_behavior() { return uniform_on_winning(sdlmsq_game(), Rational(1, 32)); }
Behavior<Rational> sdlmstar_behavior() { return uniform_on_winning(sdlmstar_game(), Rational(1, 16)); }

LiftedChshReport lifted_chsh_strategy(std::size_t alice_input, std::size_t bob_input) {
  const NonlocalGame g = lifted_chsh_game();
  const Blcs s = lifted_chsh_system();
  const std::size_t q = s.num_constraints();
  if (alice_input >= q || bob_input >= s.num_variables()) throw std::invalid_argument("lifted_chsh_strategy: input out of range");
  const auto& fixed_vars = s.constraints()[alice_input].vars;
  if (std::find(fixed_vars.begin(), fixed_vars.end(), bob_input) == fixed_vars.end())
    throw std::invalid_argument("lifted_chsh_strategy: Bob's variable " + s.variables()[bob_input] +
                                " is outside Alice's constraint; no partially deterministic strategy exists there");
  // live pair: the variables outside Alice's deterministic constraint
  std::vector<std::size_t> live;
  for (std::size_t v = 0; v < s.num_variables(); ++v)
    if (std::find(fixed_vars.begin(), fixed_vars.end(), v) == fixed_vars.end()) live.push_back(v);
  if (live.size() != 2) throw std::logic_error("lifted_chsh_strategy: expected a single live pair");
  std::vector<int> value(s.num_variables(), 1);
  if (s.constraints()[alice_input].parity == -1) value[fixed_vars.front()] = -1;

  const CMat X = pauli("sx"), Z = pauli("sz");
  const Cx r = inv_sqrt2();
  QuantumStrategy st;
  st.label = "lifted_chsh(" + g.scenario->inputs(0)[alice_input] + "," + g.scenario->inputs(1)[bob_input] + ")";
  st.dims = {2, 2};
  st.state = mes_state(2);
  st.kind = StateKind::MaximallyEntangled;
  st.slots.resize(2);
  for (std::size_t j = 0; j < q; ++j) {
    const auto& c = s.constraints()[j];
    std::vector<Slot> slots;
    int sign = c.parity;
    for (auto v : c.vars)
      if (v != live[0] && v != live[1]) sign *= value[v];
    for (auto v : c.vars) {
      if (v != live[0] && v != live[1])
        slots.push_back(Slot::fixed(value[v]));
      else if (sign == 1)
        slots.push_back(Slot::observable(X));
      else
        slots.push_back(Slot::observable(v == live[0] ? Z : CMat(-Z)));
    }
    st.slots[0].push_back(std::move(slots));
  }
  for (std::size_t v = 0; v < s.num_variables(); ++v) {
    if (v == live[0])
      st.slots[1].push_back({Slot::observable(CMat(r * (Z + X)))});
    else if (v == live[1])
      st.slots[1].push_back({Slot::observable(CMat(r * (X - Z)))});
    else
      st.slots[1].push_back({Slot::fixed(value[v])});
  }

  LiftedChshReport rep;
  rep.strategy = st;
  validate_strategy(g, st);
  const CMat I = identity(2);
  for (std::size_t j = 0; j < q; ++j)
    rep.parity_expectations.push_back(expectation(st, {line_product(st.slots[0][j], 2), I}));
  std::vector<Cx> corr;
  for (const auto& sc : g.side_constraints) {
    const auto& sl = st.slots[0][sc.input];
    CMat prod = slot_matrix(sl[sc.slot_a], 2) * slot_matrix(sl[sc.slot_b], 2);
    corr.push_back(expectation(st, {prod, I}));
  }
  for (std::size_t k = 0; k + 1 < corr.size(); k += 2) rep.pair_correlators.emplace_back(corr[k], corr[k + 1]);
  bool ok = corr.size() == 6;
  for (const auto& c : corr) ok = ok && (c == Cx(1) || c == Cx(-1));
  for (std::size_t j = 0; j < q; ++j) ok = ok && rep.parity_expectations[j] == Cx(s.constraints()[j].parity);
  if (!ok) rep.failure = "parity or unit-correlator constraint violated";
  // input 1 pairs (P1, P3), input 2 (P1, P2), input 3 (P2, P3)
  rep.relations_hold = corr.size() == 6 && corr[0] == corr[1] && corr[2] == -corr[3] && corr[4] == corr[5];
  if (!rep.relations_hold && rep.failure.empty()) rep.failure = "two-body correlator relations violated";
  rep.value = vertex_value(g, st);
  const Q2 expected = Q2(Rational(16, 18), Rational(1, 18));
  if (rep.value != expected && rep.failure.empty()) rep.failure = "value differs from (16+sqrt2)/18";
  rep.ok = rep.failure.empty();
  return rep;
}

}  // namespace sdl
