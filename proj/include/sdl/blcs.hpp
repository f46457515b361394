// Binary linear constraint systems over +-1 variables.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sdl {

struct Constraint {
  std::vector<std::size_t> vars;  // ascending variable indices
  int parity = 1;                 // +1 or -1
};

class Blcs {
 public:
  Blcs() = default;
  Blcs(std::vector<std::string> variables, const std::vector<std::pair<std::vector<std::string>, int>>& constraints);
  Blcs(std::vector<std::string> variables, std::vector<Constraint> constraints);

  const std::vector<std::string>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return cons_; }
  std::size_t num_variables() const { return vars_.size(); }
  std::size_t num_constraints() const { return cons_.size(); }

  bool has_variable(const std::string& v) const { return index_.count(v) != 0; }
  std::size_t index_of(const std::string& v) const;
  std::vector<std::string> constraint_variables(std::size_t j) const;

  friend bool operator==(const Blcs& a, const Blcs& b) { return a.vars_ == b.vars_ && a.equal_constraints(b); }

 private:
  bool equal_constraints(const Blcs& o) const;
  void validate_and_index();

  std::vector<std::string> vars_;
  std::vector<Constraint> cons_;
  std::unordered_map<std::string, std::size_t> index_;
};

using Assignment = std::map<std::string, int>;

std::size_t degree(const Blcs& s, const std::string& v);
std::vector<std::size_t> degrees(const Blcs& s);
int system_parity(const Blcs& s);
bool satisfies(const Blcs& s, const Assignment& a);

Blcs negate_variable(const Blcs& s, const std::string& v);
// v -> v.1 * v.2 plus the constraint v.1 * v.2 = +1.
Blcs split_variable(const Blcs& s, const std::string& v);

struct StandardizeResult {
  Blcs system;
  int lemma_case = 0;               // 0..3
  std::vector<std::string> steps;   // e.g. "split v", "negate v.1"
};
// Throws std::invalid_argument when the input has a classical solution.
StandardizeResult standardize(const Blcs& s, std::size_t cap = 24);

struct ClassicalSearch {
  bool found = false;
  Assignment witness;  // lowest satisfying assignment, first variable most significant, +1 < -1
};
ClassicalSearch has_classical_solution(const Blcs& s, std::size_t cap = 24);

bool lemma1_check(const Blcs& s);
bool is_arrangement(const Blcs& s);
// Parity +1 on every connected component; the plain parity test when connected.
bool arkhipov_realizable(const Blcs& s);

struct Graph {
  std::size_t n = 0;
  std::vector<std::vector<bool>> adj;
  std::size_t edge_count() const;
};
Graph intersection_graph(const Blcs& s);
bool is_complete(const Graph& g);
// true when the vertex set splits into two independent sets of sizes a and b
// with every cross pair adjacent
bool is_complete_bipartite(const Graph& g, std::size_t a, std::size_t b);

struct Isomorphism {
  bool found = false;
  std::vector<std::size_t> var_map;  // a-index -> b-index
  std::vector<int> signs;            // per a-variable, +1 or -1
};
Isomorphism is_isomorphic(const Blcs& a, const Blcs& b, std::size_t cap = 40);
// Image of a under the witness; equals b up to constraint order when the witness is valid.
Blcs apply_isomorphism(const Blcs& a, const Blcs& b, const Isomorphism& iso);
bool same_up_to_constraint_order(const Blcs& a, const Blcs& b);

struct Reduction {
  bool consistent = true;  // false when a fully assigned constraint is violated
  Blcs system;
};
// Substitute the given values; constraints left without variables are dropped
// when satisfied.
Reduction reduce(const Blcs& s, const Assignment& partial);

// Fresh identifier not declared in s: base, then base followed by primes.
std::string fresh_name(const Blcs& s, const std::string& base);

// Catalog systems. Rows precede columns; the last column carries parity -1.
Blcs magic_square_system();
Blcs magic_star_system();
Blcs chsh_system();

}  // namespace sdl
