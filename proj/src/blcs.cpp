#include "sdl/blcs.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "sdl/gf2.hpp"

namespace sdl {

Blcs::Blcs(std::vector<std::string> variables, const std::vector<std::pair<std::vector<std::string>, int>>& constraints)
    : vars_(std::move(variables)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (!index_.emplace(vars_[i], i).second) throw std::invalid_argument("duplicate variable '" + vars_[i] + "'");
  }
  for (const auto& [names, parity] : constraints) {
    Constraint c;
    c.parity = parity;
    for (const auto& n : names) {
      auto it = index_.find(n);
      if (it == index_.end()) throw std::invalid_argument("constraint references undeclared variable '" + n + "'");
      c.vars.push_back(it->second);
    }
    cons_.push_back(std::move(c));
  }
  validate_and_index();
}

Blcs::Blcs(std::vector<std::string> variables, std::vector<Constraint> constraints)
    : vars_(std::move(variables)), cons_(std::move(constraints)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (!index_.emplace(vars_[i], i).second) throw std::invalid_argument("duplicate variable '" + vars_[i] + "'");
  }
  validate_and_index();
}

void Blcs::validate_and_index() {
  for (auto& c : cons_) {
    if (c.vars.empty()) throw std::invalid_argument("empty constraint");
    if (c.parity != 1 && c.parity != -1) throw std::invalid_argument("parity must be +1 or -1");
    std::sort(c.vars.begin(), c.vars.end());
    if (std::adjacent_find(c.vars.begin(), c.vars.end()) != c.vars.end())
      throw std::invalid_argument("constraint lists a variable twice");
    if (c.vars.back() >= vars_.size()) throw std::invalid_argument("constraint index out of range");
  }
}

bool Blcs::equal_constraints(const Blcs& o) const {
  if (cons_.size() != o.cons_.size()) return false;
  for (std::size_t j = 0; j < cons_.size(); ++j)
    if (cons_[j].vars != o.cons_[j].vars || cons_[j].parity != o.cons_[j].parity) return false;
  return true;
}

std::size_t Blcs::index_of(const std::string& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw std::invalid_argument("unknown variable '" + v + "'");
  return it->second;
}

std::vector<std::string> Blcs::constraint_variables(std::size_t j) const {
  std::vector<std::string> out;
  for (auto i : cons_.at(j).vars) out.push_back(vars_[i]);
  return out;
}

std::vector<std::size_t> degrees(const Blcs& s) {
  std::vector<std::size_t> d(s.num_variables(), 0);
  for (const auto& c : s.constraints())
    for (auto i : c.vars) ++d[i];
  return d;
}

std::size_t degree(const Blcs& s, const std::string& v) { return degrees(s)[s.index_of(v)]; }

int system_parity(const Blcs& s) {
  int p = 1;
  for (const auto& c : s.constraints()) p *= c.parity;
  return p;
}

bool satisfies(const Blcs& s, const Assignment& a) {
  std::vector<int> val(s.num_variables());
  for (std::size_t i = 0; i < s.num_variables(); ++i) {
    auto it = a.find(s.variables()[i]);
    if (it == a.end()) throw std::invalid_argument("assignment misses '" + s.variables()[i] + "'");
    val[i] = it->second;
  }
  for (const auto& c : s.constraints()) {
    int prod = 1;
    for (auto i : c.vars) prod *= val[i];
    if (prod != c.parity) return false;
  }
  return true;
}

Blcs negate_variable(const Blcs& s, const std::string& v) {
  std::size_t idx = s.index_of(v);
  auto cons = s.constraints();
  for (auto& c : cons)
    if (std::binary_search(c.vars.begin(), c.vars.end(), idx)) c.parity = -c.parity;
  return Blcs(s.variables(), std::move(cons));
}

std::string fresh_name(const Blcs& s, const std::string& base) {
  std::string name = base;
  while (s.has_variable(name)) name += "'";
  return name;
}

Blcs split_variable(const Blcs& s, const std::string& v) {
  std::size_t idx = s.index_of(v);
  std::vector<std::string> fresh;
  for (int k = 1; fresh.size() < 2; ++k) {
    std::string cand = v + "." + std::to_string(k);
    if (!s.has_variable(cand)) fresh.push_back(cand);
  }
  // v is replaced in place by v.k1, v.k2; later indices shift by one
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < s.num_variables(); ++i) {
    if (i == idx) {
      vars.push_back(fresh[0]);
      vars.push_back(fresh[1]);
    } else {
      vars.push_back(s.variables()[i]);
    }
  }
  auto remap = [idx](std::size_t i) { return i < idx ? i : i + 1; };
  std::vector<Constraint> cons;
  for (const auto& c : s.constraints()) {
    Constraint n;
    n.parity = c.parity;
    for (auto i : c.vars) {
      if (i == idx) {
        n.vars.push_back(idx);
        n.vars.push_back(idx + 1);
      } else {
        n.vars.push_back(remap(i));
      }
    }
    cons.push_back(std::move(n));
  }
  cons.push_back(Constraint{{idx, idx + 1}, 1});
  return Blcs(std::move(vars), std::move(cons));
}

namespace {

std::vector<std::string> odd_degree_variables(const Blcs& s) {
  auto d = degrees(s);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] % 2 == 1) out.push_back(s.variables()[i]);
  return out;
}

void split_all_odd(StandardizeResult& r) {
  for (const auto& v : odd_degree_variables(r.system)) {
    r.system = split_variable(r.system, v);
    r.steps.push_back("split " + v);
  }
}

}  // namespace

StandardizeResult standardize(const Blcs& s, std::size_t cap) {
  if (s.num_variables() <= cap && has_classical_solution(s, cap).found)
    throw std::invalid_argument("standardize: system has a classical solution");
  StandardizeResult r{s, 0, {}};
  auto odd = odd_degree_variables(s);
  int parity = system_parity(s);
  if (odd.empty() && parity == -1) return r;
  if (!odd.empty() && parity == -1) {
    r.lemma_case = 1;
    split_all_odd(r);
    return r;
  }
  if (odd.empty()) {
    r.lemma_case = 3;
    auto d = degrees(s);
    std::size_t pick = 0;
    while (pick < d.size() && d[pick] == 0) ++pick;
    if (pick == d.size()) pick = 0;
    const std::string v = s.variables().at(pick);
    r.system = split_variable(r.system, v);
    r.steps.push_back("split " + v);
    odd = odd_degree_variables(r.system);
  } else {
    r.lemma_case = 2;
  }
  r.system = negate_variable(r.system, odd.front());
  r.steps.push_back("negate " + odd.front());
  split_all_odd(r);
  return r;
}

ClassicalSearch has_classical_solution(const Blcs& s, std::size_t cap) {
  const std::size_t p = s.num_variables();
  if (p > cap || p > 62) throw std::invalid_argument("has_classical_solution: variable cap exceeded");
  const std::size_t q = s.num_constraints();
  const std::size_t words = (q + 63) / 64;
  // flip mask per variable over constraints; start state = constraints violated by all +1
  std::vector<std::uint64_t> masks(p * words, 0), violated(words, 0);
  for (std::size_t j = 0; j < q; ++j) {
    for (auto i : s.constraints()[j].vars) masks[i * words + j / 64] ^= std::uint64_t{1} << (j % 64);
    if (s.constraints()[j].parity == -1) violated[j / 64] |= std::uint64_t{1} << (j % 64);
  }
  auto clean = [&]() {
    for (auto w : violated)
      if (w) return false;
    return true;
  };
  ClassicalSearch out;
  std::uint64_t best = 0;
  const std::uint64_t total = std::uint64_t{1} << p;
  std::uint64_t code = 0;  // bit b set <=> variable p-1-b is -1
  for (std::uint64_t k = 0; k < total; ++k) {
    if (k > 0) {
      unsigned b = static_cast<unsigned>(__builtin_ctzll(k));
      code ^= std::uint64_t{1} << b;
      const std::size_t var = p - 1 - b;
      for (std::size_t w = 0; w < words; ++w) violated[w] ^= masks[var * words + w];
    }
    if (clean() && (!out.found || code < best)) {
      out.found = true;
      best = code;
      if (best == 0) break;
    }
  }
  if (out.found) {
    for (std::size_t i = 0; i < p; ++i) out.witness[s.variables()[i]] = ((best >> (p - 1 - i)) & 1U) ? -1 : 1;
  }
  return out;
}

bool lemma1_check(const Blcs& s) {
  for (auto d : degrees(s))
    if (d % 2 != 0) return false;
  return system_parity(s) == -1;
}

bool is_arrangement(const Blcs& s) {
  for (auto d : degrees(s))
    if (d != 2) return false;
  return true;
}

bool arkhipov_realizable(const Blcs& s) {
  if (!is_arrangement(s)) throw std::invalid_argument("arkhipov_realizable: not an arrangement");
  // each connected component of the intersection graph needs parity +1
  std::vector<std::size_t> parent(s.num_constraints());
  for (std::size_t j = 0; j < parent.size(); ++j) parent[j] = j;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t j) {
    return parent[j] == j ? j : parent[j] = find(parent[j]);
  };
  std::vector<std::size_t> first(s.num_variables(), s.num_constraints());
  for (std::size_t j = 0; j < s.num_constraints(); ++j)
    for (auto v : s.constraints()[j].vars) {
      if (first[v] == s.num_constraints()) first[v] = j;
      else parent[find(j)] = find(first[v]);
    }
  std::vector<int> parity(s.num_constraints(), 1);
  for (std::size_t j = 0; j < s.num_constraints(); ++j) parity[find(j)] *= s.constraints()[j].parity;
  return std::all_of(parity.begin(), parity.end(), [](int p) { return p == 1; });
}

std::size_t Graph::edge_count() const {
  std::size_t e = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e += adj[i][j] ? 1 : 0;
  return e;
}

Graph intersection_graph(const Blcs& s) {
  Graph g;
  g.n = s.num_constraints();
  g.adj.assign(g.n, std::vector<bool>(g.n, false));
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = i + 1; j < g.n; ++j) {
      const auto& a = s.constraints()[i].vars;
      const auto& b = s.constraints()[j].vars;
      std::vector<std::size_t> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      if (!common.empty()) g.adj[i][j] = g.adj[j][i] = true;
    }
  }
  return g;
}

bool is_complete(const Graph& g) { return g.edge_count() == g.n * (g.n - 1) / 2; }

bool is_complete_bipartite(const Graph& g, std::size_t a, std::size_t b) {
  if (g.n != a + b || g.n == 0) return false;
  // 2-colour from vertex 0, then check sizes and completeness across sides
  std::vector<int> side(g.n, -1);
  std::vector<std::size_t> stack{0};
  side[0] = 0;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (std::size_t w = 0; w < g.n; ++w) {
      if (!g.adj[v][w]) continue;
      if (side[w] == -1) {
        side[w] = 1 - side[v];
        stack.push_back(w);
      } else if (side[w] == side[v]) {
        return false;
      }
    }
  }
  std::size_t zeros = 0;
  for (auto x : side) {
    if (x == -1) return false;
    zeros += x == 0 ? 1 : 0;
  }
  if (!((zeros == a && g.n - zeros == b) || (zeros == b && g.n - zeros == a))) return false;
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j)
      if (i != j && side[i] != side[j] && !g.adj[i][j]) return false;
  return true;
}

namespace {

struct IsoSearch {
  const Blcs& a;
  const Blcs& b;
  std::vector<std::size_t> deg_a, deg_b;
  std::vector<std::size_t> order;                       // a-variables in search order
  std::vector<std::vector<std::size_t>> cons_of_a;      // constraints containing each a-var
  std::map<std::vector<std::size_t>, std::vector<int>> b_groups;  // support -> parities
  std::vector<long> map_ab;                             // -1 when unmapped
  std::vector<bool> used_b;
  Isomorphism result;

  IsoSearch(const Blcs& a_, const Blcs& b_) : a(a_), b(b_) {
    deg_a = degrees(a);
    deg_b = degrees(b);
    cons_of_a.resize(a.num_variables());
    for (std::size_t j = 0; j < a.num_constraints(); ++j)
      for (auto i : a.constraints()[j].vars) cons_of_a[i].push_back(j);
    for (const auto& c : b.constraints()) b_groups[c.vars].push_back(c.parity);
    // connectivity-first order: repeatedly take the unplaced variable sharing most constraints with placed ones
    std::vector<bool> placed(a.num_variables(), false);
    std::vector<int> touch(a.num_variables(), 0);
    for (std::size_t step = 0; step < a.num_variables(); ++step) {
      std::size_t best = a.num_variables();
      for (std::size_t v = 0; v < a.num_variables(); ++v) {
        if (placed[v]) continue;
        if (best == a.num_variables() || touch[v] > touch[best] ||
            (touch[v] == touch[best] && deg_a[v] > deg_a[best]))
          best = v;
      }
      placed[best] = true;
      order.push_back(best);
      for (auto j : cons_of_a[best])
        for (auto w : a.constraints()[j].vars) ++touch[w];
    }
    map_ab.assign(a.num_variables(), -1);
    used_b.assign(b.num_variables(), false);
  }

  bool supports_ok(std::size_t v) {
    // every a-constraint through v that is now fully mapped must map onto a b-support,
    // and multiplicities of completed supports must not exceed b's
    std::map<std::vector<std::size_t>, std::size_t> seen;
    for (auto j : cons_of_a[v]) {
      std::vector<std::size_t> img;
      bool complete = true;
      for (auto w : a.constraints()[j].vars) {
        if (map_ab[w] < 0) {
          complete = false;
          break;
        }
        img.push_back(static_cast<std::size_t>(map_ab[w]));
      }
      if (!complete) continue;
      std::sort(img.begin(), img.end());
      auto it = b_groups.find(img);
      if (it == b_groups.end()) return false;
    }
    (void)seen;
    return true;
  }

  bool leaf() {
    std::map<std::vector<std::size_t>, std::vector<std::pair<std::size_t, int>>> a_groups;  // image support -> (a constraint, parity)
    for (std::size_t j = 0; j < a.num_constraints(); ++j) {
      std::vector<std::size_t> img;
      for (auto w : a.constraints()[j].vars) img.push_back(static_cast<std::size_t>(map_ab[w]));
      std::sort(img.begin(), img.end());
      a_groups[img].emplace_back(j, a.constraints()[j].parity);
    }
    if (a_groups.size() != b_groups.size()) return false;
    std::vector<BitVec> rows;
    std::vector<std::uint8_t> rhs;
    for (const auto& [support, members] : a_groups) {
      auto it = b_groups.find(support);
      if (it == b_groups.end() || it->second.size() != members.size()) return false;
      int plus_b = 0;
      for (int p : it->second) plus_b += p == 1 ? 1 : 0;
      int plus_a = 0;
      for (const auto& m : members) plus_a += m.second == 1 ? 1 : 0;
      int minus_a = static_cast<int>(members.size()) - plus_a;
      bool keep = plus_a == plus_b;
      bool flip = minus_a == plus_b;
      if (!keep && !flip) return false;
      if (keep && flip) continue;
      BitVec row(a.num_variables());
      for (auto w : a.constraints()[members.front().first].vars) row.set(w);
      rows.push_back(std::move(row));
      rhs.push_back(flip ? 1 : 0);
    }
    auto sol = gf2_solve(rows, rhs, a.num_variables());
    if (!sol.consistent) return false;
    result.found = true;
    result.var_map.resize(a.num_variables());
    result.signs.resize(a.num_variables());
    for (std::size_t v = 0; v < a.num_variables(); ++v) {
      result.var_map[v] = static_cast<std::size_t>(map_ab[v]);
      result.signs[v] = sol.particular.get(v) ? -1 : 1;
    }
    return true;
  }

  bool search(std::size_t depth) {
    if (depth == order.size()) return leaf();
    std::size_t v = order[depth];
    for (std::size_t w = 0; w < b.num_variables(); ++w) {
      if (used_b[w] || deg_b[w] != deg_a[v]) continue;
      map_ab[v] = static_cast<long>(w);
      used_b[w] = true;
      if (supports_ok(v) && search(depth + 1)) return true;
      used_b[w] = false;
      map_ab[v] = -1;
    }
    return false;
  }
};

std::vector<std::size_t> sorted_sizes(const Blcs& s) {
  std::vector<std::size_t> out;
  for (const auto& c : s.constraints()) out.push_back(c.vars.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Isomorphism is_isomorphic(const Blcs& a, const Blcs& b, std::size_t cap) {
  if (a.num_variables() > cap || b.num_variables() > cap) throw std::invalid_argument("is_isomorphic: cap exceeded");
  Isomorphism none;
  if (a.num_variables() != b.num_variables() || a.num_constraints() != b.num_constraints()) return none;
  if (sorted_sizes(a) != sorted_sizes(b)) return none;
  auto da = degrees(a), db = degrees(b);
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return none;
  IsoSearch search(a, b);
  if (search.search(0)) return search.result;
  return none;
}

Blcs apply_isomorphism(const Blcs& a, const Blcs& b, const Isomorphism& iso) {
  if (!iso.found) throw std::invalid_argument("apply_isomorphism: no witness");
  std::vector<Constraint> cons;
  for (const auto& c : a.constraints()) {
    Constraint n;
    n.parity = c.parity;
    for (auto v : c.vars) {
      n.vars.push_back(iso.var_map.at(v));
      n.parity *= iso.signs.at(v);
    }
    cons.push_back(std::move(n));
  }
  return Blcs(b.variables(), std::move(cons));
}

bool same_up_to_constraint_order(const Blcs& a, const Blcs& b) {
  if (a.variables() != b.variables()) return false;
  auto key = [](const Blcs& s) {
    std::vector<std::pair<std::vector<std::size_t>, int>> k;
    for (const auto& c : s.constraints()) k.emplace_back(c.vars, c.parity);
    std::sort(k.begin(), k.end());
    return k;
  };
  return key(a) == key(b);
}

Reduction reduce(const Blcs& s, const Assignment& partial) {
  std::vector<long> new_index(s.num_variables(), -1);
  std::vector<int> value(s.num_variables(), 0);
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < s.num_variables(); ++i) {
    auto it = partial.find(s.variables()[i]);
    if (it != partial.end()) {
      if (it->second != 1 && it->second != -1) throw std::invalid_argument("reduce: values must be +1/-1");
      value[i] = it->second;
    } else {
      new_index[i] = static_cast<long>(vars.size());
      vars.push_back(s.variables()[i]);
    }
  }
  for (const auto& [name, val] : partial) {
    (void)val;
    if (!s.has_variable(name)) throw std::invalid_argument("reduce: unknown variable '" + name + "'");
  }
  Reduction out;
  std::vector<Constraint> cons;
  for (const auto& c : s.constraints()) {
    Constraint n;
    n.parity = c.parity;
    for (auto i : c.vars) {
      if (new_index[i] >= 0)
        n.vars.push_back(static_cast<std::size_t>(new_index[i]));
      else
        n.parity *= value[i];
    }
    if (n.vars.empty()) {
      if (n.parity != 1) out.consistent = false;
      continue;
    }
    cons.push_back(std::move(n));
  }
  out.system = Blcs(std::move(vars), std::move(cons));
  return out;
}

Blcs magic_square_system() {
  std::vector<std::string> v;
  for (int i = 1; i <= 9; ++i) v.push_back("v" + std::to_string(i));
  return Blcs(v, {{{"v1", "v2", "v3"}, 1},
                  {{"v4", "v5", "v6"}, 1},
                  {{"v7", "v8", "v9"}, 1},
                  {{"v1", "v4", "v7"}, 1},
                  {{"v2", "v5", "v8"}, 1},
                  {{"v3", "v6", "v9"}, -1}});
}

Blcs magic_star_system() {
  std::vector<std::string> v;
  for (int i = 1; i <= 10; ++i) v.push_back("v" + std::to_string(i));
  return Blcs(v, {{{"v1", "v2", "v3", "v4"}, -1},
                  {{"v2", "v5", "v6", "v7"}, 1},
                  {{"v4", "v5", "v8", "v9"}, 1},
                  {{"v1", "v6", "v8", "v10"}, 1},
                  {{"v3", "v7", "v9", "v10"}, 1}});
}

Blcs chsh_system() {
  std::vector<std::pair<std::vector<std::string>, int>> cons = {{{"v1", "v2"}, 1}, {{"v1", "v2"}, -1}};
  return Blcs({"v1", "v2"}, cons);
}

}  // namespace sdl
