#include "sdl/polytopes.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <stdexcept>

namespace sdl {

namespace {

using VarMap = std::vector<long>;  // per flat entry, -1 when the entry carries no variable

template <class S>
using Terms = std::vector<std::pair<std::size_t, S>>;

// entries of tuple t grouped by the output of one player: [player][t][a] -> offsets within the block
struct OutputGroups {
  std::vector<std::vector<std::vector<std::vector<std::size_t>>>> by;
  explicit OutputGroups(const Scenario& sc) : by(sc.players()) {
    for (std::size_t i = 0; i < sc.players(); ++i) {
      by[i].resize(sc.num_tuples());
      for (std::size_t t = 0; t < sc.num_tuples(); ++t) {
        by[i][t].resize(sc.num_outputs(i, sc.tuples()[t][i]));
        for (std::size_t k = 0; k < sc.block_size(t); ++k) by[i][t][sc.decode(t, k)[i]].push_back(k);
      }
    }
  }
};

void require_two_players(const Scenario& sc, const char* who) {
  if (sc.players() != 2) throw std::invalid_argument(std::string(who) + ": two-player scenarios only");
}

template <class S, class Allowed>
VarMap add_block(LpProblem<S>& lp, const Scenario& sc, const std::string& tag, Allowed allowed) {
  VarMap var(sc.size(), -1);
  for (std::size_t t = 0; t < sc.num_tuples(); ++t)
    for (std::size_t k = 0; k < sc.block_size(t); ++k)
      if (allowed(t, k))
        var[sc.offset(t) + k] = static_cast<long>(lp.add_var(tag + "[" + std::to_string(t) + "," + std::to_string(k) + "]"));
  return var;
}

// Marginal of each player agrees across tuples sharing that player's input (two players).
template <class S>
void add_ns_rows(LpProblem<S>& lp, const Scenario& sc, const OutputGroups& g, const VarMap& var) {
  for (std::size_t i = 0; i < 2; ++i) {
    std::vector<long> first(sc.inputs(i).size(), -1);
    for (std::size_t t = 0; t < sc.num_tuples(); ++t) {
      std::size_t x = sc.tuples()[t][i];
      if (first[x] < 0) {
        first[x] = static_cast<long>(t);
        continue;
      }
      auto t0 = static_cast<std::size_t>(first[x]);
      for (std::size_t a = 0; a < g.by[i][t].size(); ++a) {
        Terms<S> row;
        for (auto k : g.by[i][t][a])
          if (long v = var[sc.offset(t) + k]; v >= 0) row.emplace_back(static_cast<std::size_t>(v), S(1));
        for (auto k : g.by[i][t0][a])
          if (long v = var[sc.offset(t0) + k]; v >= 0) row.emplace_back(static_cast<std::size_t>(v), S(-1));
        if (!row.empty()) lp.add_row(std::move(row), Sense::Eq, S(0));
      }
    }
  }
}

template <class S>
bool nonzero(const S& v) {
  return sign(v) != 0;
}

std::size_t target_tuple(const Scenario& sc, const InputTuple& x) {
  auto t = sc.tuple_index(x);
  if (!t) throw std::invalid_argument("input tuple is not admissible");
  return *t;
}

}  // namespace

std::shared_ptr<const Scenario> binary_bipartite_scenario(std::size_t inputs) {
  if (inputs == 0) throw std::invalid_argument("binary_bipartite_scenario: no inputs");
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < inputs; ++x) labels.push_back(std::to_string(x));
  std::vector<std::vector<std::string>> outs(inputs, {"0", "1"});
  return std::make_shared<const Scenario>(std::vector<std::vector<std::string>>{labels, labels},
                                          std::vector<std::vector<std::vector<std::string>>>{outs, outs});
}

Behavior<Rational> restrict_inputs(const Behavior<Rational>& b, const std::vector<std::vector<std::size_t>>& keep) {
  const Scenario& sc = *b.scenario;
  if (keep.size() != sc.players()) throw std::invalid_argument("restrict_inputs: one input list per player");
  std::vector<std::vector<std::string>> inputs(keep.size());
  std::vector<std::vector<std::vector<std::string>>> outputs(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (auto x : keep[i]) {
      inputs[i].push_back(sc.inputs(i).at(x));
      outputs[i].push_back(sc.outputs(i, x));
    }
  auto sub = std::make_shared<const Scenario>(inputs, outputs);
  Behavior<Rational> out(sub);
  for (std::size_t t = 0; t < sub->num_tuples(); ++t) {
    InputTuple x(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) x[i] = keep[i][sub->tuples()[t][i]];
    std::size_t src = target_tuple(sc, x);
    for (std::size_t k = 0; k < sub->block_size(t); ++k) out.at(t, k) = b.at(src, k);
  }
  return out;
}

std::vector<Behavior<Rational>> local_vertices(std::shared_ptr<const Scenario> sc, std::size_t cap) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;  // (player, input)
  std::size_t count = 1;
  for (std::size_t i = 0; i < sc->players(); ++i)
    for (std::size_t x = 0; x < sc->inputs(i).size(); ++x) {
      slots.emplace_back(i, x);
      std::size_t n = sc->num_outputs(i, x);
      if (count > cap / n) throw std::invalid_argument("local_vertices: vertex count over cap");
      count *= n;
    }
  std::vector<Behavior<Rational>> out;
  out.reserve(count);
  std::vector<std::vector<std::size_t>> choice(sc->players());
  for (std::size_t i = 0; i < sc->players(); ++i) choice[i].assign(sc->inputs(i).size(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    std::size_t rest = n;
    // last slot varies fastest
    for (std::size_t s = slots.size(); s-- > 0;) {
      auto [i, x] = slots[s];
      choice[i][x] = rest % sc->num_outputs(i, x);
      rest /= sc->num_outputs(i, x);
    }
    out.push_back(deterministic_behavior(sc, choice));
  }
  return out;
}

LinearFunctional functional_from_coefficients(std::string name, std::shared_ptr<const Scenario> sc, Vec<Rational> coeff,
                                              Rational constant) {
  if (static_cast<std::size_t>(coeff.size()) != sc->size()) throw std::invalid_argument("functional: shape mismatch");
  return LinearFunctional{std::move(name), std::move(sc), std::move(coeff), std::move(constant)};
}

LinearFunctional bell_functional(const std::string& name, std::shared_ptr<const Scenario> sc) {
  const Scenario& s = *sc;
  require_two_players(s, "bell_functional");
  auto binary = [&](std::size_t m) {
    for (std::size_t i = 0; i < 2; ++i) {
      if (s.inputs(i).size() < m) return false;
      for (std::size_t x = 0; x < s.inputs(i).size(); ++x)
        if (s.num_outputs(i, x) != 2) return false;
    }
    return true;
  };
  Vec<Rational> c = Vec<Rational>::Zero(static_cast<Eigen::Index>(s.size()));
  auto entry = [&](std::size_t x, std::size_t y, std::size_t a, std::size_t b) -> Rational& {
    std::size_t t = target_tuple(s, {x, y});
    return c[static_cast<Eigen::Index>(s.offset(t) + s.encode(t, {a, b}))];
  };
  if (name == "chsh") {
    if (!binary(2)) throw std::invalid_argument("chsh: needs at least two binary inputs per player");
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b)
            if ((a ^ b) == (x & y)) entry(x, y, a, b) += Rational(1, 4);
    return LinearFunctional{"chsh", std::move(sc), std::move(c), Rational(0)};
  }
  if (name == "i3322") {
    if (!binary(3) || s.inputs(0).size() != 3 || s.inputs(1).size() != 3)
      throw std::invalid_argument("i3322: needs the (3,2;3,2) scenario");
    // pA(x) = p(0,0|x,0) + p(0,1|x,0), pB(y) = p(0,0|0,y) + p(1,0|0,y), p(x,y) = p(0,0|x,y)
    auto pa = [&](std::size_t x, int w) {
      entry(x, 0, 0, 0) += w;
      entry(x, 0, 0, 1) += w;
    };
    auto pb = [&](std::size_t y, int w) {
      entry(0, y, 0, 0) += w;
      entry(0, y, 1, 0) += w;
    };
    pa(0, -1);
    pb(0, -2);
    pb(1, -1);
    const int joint[3][3] = {{1, 1, 1}, {1, 1, -1}, {1, -1, 0}};
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t y = 0; y < 3; ++y)
        if (joint[x][y]) entry(x, y, 0, 0) += joint[x][y];
    return LinearFunctional{"i3322", std::move(sc), std::move(c), Rational(0)};
  }
  throw std::invalid_argument("unknown Bell functional: " + name);
}

ClassicalBound classical_bound(const LinearFunctional& f, std::size_t cap) {
  auto verts = local_vertices(f.scenario, cap);
  ClassicalBound out;
  out.vertices = verts.size();
  for (std::size_t v = 0; v < verts.size(); ++v) {
    Rational val = f(verts[v]);
    if (v == 0 || val > out.value) {
      out.value = val;
      out.argmax = v;
    }
  }
  return out;
}

namespace {

struct PdLp {
  LpProblem<Rational> lp;
  std::vector<std::size_t> outcomes;  // block index within the target tuple
  std::vector<VarMap> blocks;
  std::vector<long> link_row;  // per flat entry
};

// support: only entries where b > 0 carry variables (exact: zero entries force zero parts)
PdLp build_pd_lp(const Behavior<Rational>& b, std::size_t ts, bool support_only) {
  const Scenario& sc = *b.scenario;
  OutputGroups groups(sc);
  PdLp out;
  for (std::size_t o = 0; o < sc.block_size(ts); ++o) {
    if (support_only && !nonzero(b.at(ts, o))) continue;
    out.outcomes.push_back(o);
    out.blocks.push_back(add_block(out.lp, sc, "r" + std::to_string(o), [&](std::size_t t, std::size_t k) {
      if (t == ts && k != o) return false;
      return !support_only || nonzero(b.at(t, k));
    }));
    add_ns_rows(out.lp, sc, groups, out.blocks.back());
  }
  out.link_row.assign(sc.size(), -1);
  for (std::size_t e = 0; e < sc.size(); ++e) {
    Terms<Rational> row;
    for (const auto& blk : out.blocks)
      if (blk[e] >= 0) row.emplace_back(static_cast<std::size_t>(blk[e]), Rational(1));
    const Rational& rhs = b.p[static_cast<Eigen::Index>(e)];
    if (row.empty()) {
      if (nonzero(rhs)) throw std::logic_error("pd lp: uncovered support entry");
      continue;
    }
    out.link_row[e] = static_cast<long>(out.lp.rows.size());
    out.lp.add_row(std::move(row), Sense::Eq, rhs);
  }
  return out;
}

}  // namespace

PdMembership pd_membership(const Behavior<Rational>& b, std::size_t k, std::size_t l, const LpOptions& opt) {
  const Scenario& sc = *b.scenario;
  require_two_players(sc, "pd_membership");
  std::size_t ts = target_tuple(sc, {k, l});
  PdLp pd = build_pd_lp(b, ts, true);
  PdMembership out;
  out.variables = pd.lp.num_vars();
  out.constraints = pd.lp.rows.size();
  auto res = lp_solve(pd.lp, opt);
  if (res.status == LpStatus::Optimal) {
    out.member = true;
    auto& d = out.decomposition;
    d.target = {k, l};
    for (std::size_t i = 0; i < pd.outcomes.size(); ++i) {
      std::size_t o = pd.outcomes[i];
      Rational q = b.at(ts, o);
      Behavior<Rational> part(b.scenario);
      for (std::size_t e = 0; e < sc.size(); ++e)
        if (long v = pd.blocks[i][e]; v >= 0) part.p[static_cast<Eigen::Index>(e)] = res.x[static_cast<std::size_t>(v)] / q;
      d.weights.push_back(q);
      d.parts.push_back(std::move(part));
      d.outcomes.push_back(sc.decode(ts, o));
    }
    out.certificate_verified = verify_decomposition(b, d).ok();
    return out;
  }
  // A separating functional valid on all of PD_{k,l} needs every entry as a variable.
  PdLp full = build_pd_lp(b, ts, false);
  out.variables = full.lp.num_vars();
  out.constraints = full.lp.rows.size();
  auto fres = lp_solve(full.lp, opt);
  if (fres.status != LpStatus::Infeasible) throw std::logic_error("pd_membership: support and full programs disagree");
  out.separating = Vec<Rational>::Zero(static_cast<Eigen::Index>(sc.size()));
  for (std::size_t e = 0; e < sc.size(); ++e)
    if (full.link_row[e] >= 0) out.separating[static_cast<Eigen::Index>(e)] = -fres.dual[static_cast<std::size_t>(full.link_row[e])];
  Rational fb = out.separating.dot(b.p);
  out.certificate_verified = verify_certificate(full.lp, fres).ok && fb > 0;
  return out;
}

bool Thm3Report::ok() const {
  if (rows.empty()) return false;
  for (const auto& r : rows)
    if (!r.equal()) return false;
  return !sanity_run || (ns_certificate_verified && ns_chsh == 1);
}

namespace {

// Collins-Gisin coordinates of one unnormalised binary (3,2;3,2) sub-behavior:
// mass m, A_x = p_A(0|x), B_y = p_B(0|y), P_xy = p(0,0|x,y). No-signaling holds by
// construction and positivity of the four entries per tuple becomes linear rows.
struct CgBlock {
  std::size_t m = 0;
  std::size_t a[3] = {}, b[3] = {}, p[3][3] = {};
};

CgBlock add_cg_block(LpProblem<Rational>& lp, const std::string& tag) {
  CgBlock blk;
  blk.m = lp.add_var(tag + ".m");
  for (std::size_t x = 0; x < 3; ++x) blk.a[x] = lp.add_var(tag + ".A" + std::to_string(x));
  for (std::size_t y = 0; y < 3; ++y) blk.b[y] = lp.add_var(tag + ".B" + std::to_string(y));
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y) blk.p[x][y] = lp.add_var(tag + ".P" + std::to_string(x) + std::to_string(y));
  return blk;
}

// entry p(a,b|x,y) as terms over the block coordinates, scaled by w
void cg_entry(const CgBlock& blk, std::size_t x, std::size_t y, std::size_t a, std::size_t b, const Rational& w,
              Terms<Rational>& out) {
  const Rational n = -w;
  if (a == 0 && b == 0) {
    out.emplace_back(blk.p[x][y], w);
  } else if (a == 0) {
    out.emplace_back(blk.a[x], w);
    out.emplace_back(blk.p[x][y], n);
  } else if (b == 0) {
    out.emplace_back(blk.b[y], w);
    out.emplace_back(blk.p[x][y], n);
  } else {
    out.emplace_back(blk.m, w);
    out.emplace_back(blk.a[x], n);
    out.emplace_back(blk.b[y], n);
    out.emplace_back(blk.p[x][y], w);
  }
}

std::vector<std::size_t> cg_coords(const CgBlock& blk) {
  std::vector<std::size_t> v{blk.m};
  for (auto j : blk.a) v.push_back(j);
  for (auto j : blk.b) v.push_back(j);
  for (const auto& row : blk.p)
    for (auto j : row) v.push_back(j);
  return v;
}

Terms<Rational> merged(Terms<Rational> t) {
  std::sort(t.begin(), t.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  Terms<Rational> out;
  for (auto& [j, v] : t) {
    if (!out.empty() && out.back().first == j)
      out.back().second += v;
    else
      out.emplace_back(j, std::move(v));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return e.second == 0; }), out.end());
  return out;
}

Thm3Row solve_thm3(const LinearFunctional& f, const LpOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  const Scenario& sc = *f.scenario;
  LpProblem<Rational> lp;
  // blocks[3k+l][2a+b]: sub-behavior deterministic on (a,b) at (k,l)
  std::vector<std::vector<CgBlock>> blocks(9);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l)
      for (std::size_t o = 0; o < 4; ++o) {
        auto blk = add_cg_block(lp, "r" + std::to_string(k) + std::to_string(l) + "_" + std::to_string(o));
        for (std::size_t x = 0; x < 3; ++x)
          for (std::size_t y = 0; y < 3; ++y)
            for (std::size_t e = 0; e < 4; ++e) {
              if (e == 0) continue;  // p(0,0|x,y) = P_xy is a variable
              Terms<Rational> row;
              cg_entry(blk, x, y, e >> 1, e & 1, Rational(-1), row);
              if (x == k && y == l && e != o) {
                lp.add_row(merged(std::move(row)), Sense::Eq, Rational(0));
              } else {
                lp.add_row(merged(std::move(row)), Sense::Le, Rational(0));
              }
            }
        if (o != 0) lp.add_row({{blk.p[k][l], Rational(1)}}, Sense::Eq, Rational(0));
        blocks[3 * k + l].push_back(blk);
      }
  // every decomposition sums to the same behavior, read off the (0,0) blocks
  for (std::size_t kl = 1; kl < 9; ++kl)
    for (std::size_t c = 0; c < 16; ++c) {
      Terms<Rational> row;
      for (const auto& blk : blocks[kl]) row.emplace_back(cg_coords(blk)[c], Rational(1));
      for (const auto& blk : blocks[0]) row.emplace_back(cg_coords(blk)[c], Rational(-1));
      lp.add_row(std::move(row), Sense::Eq, Rational(0));
    }
  Terms<Rational> norm;
  for (const auto& blk : blocks[0]) norm.emplace_back(blk.m, Rational(1));
  lp.add_row(std::move(norm), Sense::Eq, Rational(1));
  Terms<Rational> obj;
  for (std::size_t t = 0; t < sc.num_tuples(); ++t) {
    auto x = sc.tuples()[t][0], y = sc.tuples()[t][1];
    for (std::size_t k = 0; k < sc.block_size(t); ++k) {
      const auto& w = f.coeff[static_cast<Eigen::Index>(sc.offset(t) + k)];
      if (w == 0) continue;
      auto ab = sc.decode(t, k);
      for (const auto& blk : blocks[0]) cg_entry(blk, x, y, ab[0], ab[1], w, obj);
    }
  }
  lp.objective = merged(std::move(obj));
  lp.maximize = true;

  Thm3Row row;
  row.functional = f.name;
  row.variables = lp.num_vars();
  row.constraints = lp.rows.size();
  row.classical = classical_bound(f).value;
  auto res = lp_solve(lp, opt);
  if (res.status != LpStatus::Optimal) throw std::runtime_error("theorem3_verify: program not optimal for " + f.name);
  row.optimum = res.value + f.constant;
  row.pivots = res.pivots;
  row.certificate_verified = verify_certificate(lp, res).ok;
  row.primal = std::move(res.x);
  row.dual = std::move(res.dual);
  row.program = std::move(lp);
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

Thm3Report theorem3_verify(bool sanity, const LpOptions& opt) {
  auto sc = binary_bipartite_scenario(3);
  auto chsh = bell_functional("chsh", sc);
  auto i3322 = bell_functional("i3322", sc);
  auto a = std::async(std::launch::async, [&] { return solve_thm3(chsh, opt); });
  auto b = std::async(std::launch::async, [&] { return solve_thm3(i3322, opt); });
  Thm3Report rep;
  rep.rows.push_back(a.get());
  rep.rows.push_back(b.get());
  if (sanity) {
    // CHSH over the no-signaling set alone
    OutputGroups groups(*sc);
    LpProblem<Rational> lp;
    VarMap p = add_block(lp, *sc, "p", [](std::size_t, std::size_t) { return true; });
    add_ns_rows(lp, *sc, groups, p);
    Terms<Rational> norm;
    for (std::size_t k = 0; k < sc->block_size(0); ++k) norm.emplace_back(static_cast<std::size_t>(p[k]), Rational(1));
    lp.add_row(std::move(norm), Sense::Eq, Rational(1));
    for (std::size_t e = 0; e < sc->size(); ++e)
      if (const auto& w = chsh.coeff[static_cast<Eigen::Index>(e)]; w != 0)
        lp.objective.emplace_back(static_cast<std::size_t>(p[e]), w);
    auto res = lp_solve(lp, opt);
    rep.sanity_run = true;
    if (res.status == LpStatus::Optimal) {
      rep.ns_chsh = res.value;
      rep.ns_certificate_verified = verify_certificate(lp, res).ok;
    }
  }
  return rep;
}

template <class S>
LpBound<S> local_fraction_lp(const Behavior<S>& b, const LpOptions& opt) {
  const Scenario& sc = *b.scenario;
  require_two_players(sc, "local_fraction_lp");
  auto verts = local_vertices(b.scenario);
  OutputGroups groups(sc);
  LpProblem<S> lp;
  std::vector<std::pair<std::size_t, std::size_t>> cvars;  // (vertex, variable)
  for (std::size_t v = 0; v < verts.size(); ++v) {
    bool inside = true;
    for (std::size_t e = 0; e < sc.size() && inside; ++e)
      if (verts[v].p[static_cast<Eigen::Index>(e)] != 0 && !nonzero(b.p[static_cast<Eigen::Index>(e)])) inside = false;
    if (inside) cvars.emplace_back(v, lp.add_var("c" + std::to_string(v)));
  }
  VarMap r = add_block(lp, sc, "r", [&](std::size_t t, std::size_t k) { return nonzero(b.at(t, k)); });
  add_ns_rows(lp, sc, groups, r);
  for (std::size_t e = 0; e < sc.size(); ++e) {
    if (r[e] < 0) continue;
    Terms<S> row;
    for (auto [v, j] : cvars)
      if (verts[v].p[static_cast<Eigen::Index>(e)] != 0) row.emplace_back(j, S(1));
    row.emplace_back(static_cast<std::size_t>(r[e]), S(1));
    lp.add_row(std::move(row), Sense::Eq, b.p[static_cast<Eigen::Index>(e)]);
  }
  for (auto [v, j] : cvars) lp.objective.emplace_back(j, S(1));
  lp.maximize = true;
  auto res = lp_solve(lp, opt);
  if (res.status != LpStatus::Optimal) throw std::invalid_argument("local_fraction_lp: behavior outside the no-signaling set");
  LpBound<S> out;
  out.value = res.value;
  out.method = "lp";
  out.variables = lp.num_vars();
  out.constraints = lp.rows.size();
  out.certificate_verified = verify_certificate(lp, res).ok;
  return out;
}

template <class S>
LpBound<S> ns_guessing_lp(const Behavior<S>& b, const InputTuple& x, const PdDecomposition* witness,
                          const LpOptions& opt) {
  const Scenario& sc = *b.scenario;
  require_two_players(sc, "ns_guessing_lp");
  std::size_t ts = target_tuple(sc, x);
  OutputGroups groups(sc);
  // guesses outside the support at x can be merged into any other guess without loss
  std::vector<std::size_t> guesses;
  for (std::size_t o = 0; o < sc.block_size(ts); ++o)
    if (nonzero(b.at(ts, o))) guesses.push_back(o);
  std::size_t support = 0;
  for (std::size_t e = 0; e < sc.size(); ++e)
    if (nonzero(b.p[static_cast<Eigen::Index>(e)])) ++support;
  const bool over_cap = guesses.size() * support > opt.max_vars;
  if (over_cap && !witness) throw std::invalid_argument("ns_guessing_lp: variable count over cap and no witness");

  LpProblem<S> lp;
  std::vector<VarMap> blocks;
  for (auto o : guesses) {
    blocks.push_back(add_block(lp, sc, "r" + std::to_string(o), [&](std::size_t t, std::size_t k) { return nonzero(b.at(t, k)); }));
    add_ns_rows(lp, sc, groups, blocks.back());
  }
  std::vector<long> link(sc.size(), -1);
  for (std::size_t e = 0; e < sc.size(); ++e) {
    if (!nonzero(b.p[static_cast<Eigen::Index>(e)])) continue;
    Terms<S> row;
    for (const auto& blk : blocks) row.emplace_back(static_cast<std::size_t>(blk[e]), S(1));
    link[e] = static_cast<long>(lp.rows.size());
    lp.add_row(std::move(row), Sense::Eq, b.p[static_cast<Eigen::Index>(e)]);
  }
  for (std::size_t i = 0; i < guesses.size(); ++i)
    lp.objective.emplace_back(static_cast<std::size_t>(blocks[i][sc.offset(ts) + guesses[i]]), S(1));
  lp.maximize = true;

  LpBound<S> out;
  out.variables = lp.num_vars();
  out.constraints = lp.rows.size();
  if (!over_cap) {
    auto res = lp_solve(lp, opt);
    if (res.status != LpStatus::Optimal) throw std::invalid_argument("ns_guessing_lp: behavior outside the no-signaling set");
    out.value = res.value;
    out.method = "lp";
    out.certificate_verified = verify_certificate(lp, res).ok;
    return out;
  }
  // primal from the witness, dual 1 on the linking rows at x
  if (witness->target != x) throw std::invalid_argument("ns_guessing_lp: witness targets another input tuple");
  std::vector<S> primal(lp.num_vars(), S(0));
  for (std::size_t p = 0; p < witness->parts.size(); ++p) {
    std::size_t o = sc.encode(ts, witness->outcomes[p]);
    std::size_t g = 0;
    while (g < guesses.size() && guesses[g] != o) ++g;
    if (g == guesses.size()) throw std::invalid_argument("ns_guessing_lp: witness outcome outside the support");
    for (std::size_t e = 0; e < sc.size(); ++e) {
      const Rational& v = witness->parts[p].p[static_cast<Eigen::Index>(e)];
      if (v == 0) continue;
      if (blocks[g][e] < 0) throw std::invalid_argument("ns_guessing_lp: witness part outside the support");
      primal[static_cast<std::size_t>(blocks[g][e])] += from_rational<S>(witness->weights[p] * v);
    }
  }
  std::vector<S> dual(lp.rows.size(), S(0));
  for (std::size_t k = 0; k < sc.block_size(ts); ++k)
    if (link[sc.offset(ts) + k] >= 0) dual[static_cast<std::size_t>(link[sc.offset(ts) + k])] = S(1);
  auto chk = verify_optimality_pair(lp, primal, dual, opt.tolerance);
  if (!chk.ok) throw std::runtime_error("ns_guessing_lp: witness pair does not certify: " + chk.failure);
  out.value = S(1);
  out.method = "certificate";
  out.certificate_verified = true;
  return out;
}

template LpBound<Rational> local_fraction_lp(const Behavior<Rational>&, const LpOptions&);
template LpBound<Q2> local_fraction_lp(const Behavior<Q2>&, const LpOptions&);
template LpBound<Rational> ns_guessing_lp(const Behavior<Rational>&, const InputTuple&, const PdDecomposition*,
                                          const LpOptions&);
template LpBound<Q2> ns_guessing_lp(const Behavior<Q2>&, const InputTuple&, const PdDecomposition*, const LpOptions&);

}  // namespace sdl
