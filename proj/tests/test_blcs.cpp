#include <gtest/gtest.h>

#include <optional>
#include <random>

#include "sdl/blcs.hpp"
#include "sdl/gf2.hpp"

using namespace sdl;

namespace {

// Random system with p constraints over n variables; every constraint non-empty.
Blcs random_system(std::mt19937_64& rng, std::size_t n, std::size_t p) {
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i));
  std::vector<std::pair<std::vector<std::string>, int>> cons;
  std::bernoulli_distribution coin(0.4), par(0.5);
  for (std::size_t j = 0; j < p; ++j) {
    std::vector<std::string> c;
    for (std::size_t i = 0; i < n; ++i)
      if (coin(rng)) c.push_back(vars[i]);
    if (c.empty()) c.push_back(vars[rng() % n]);
    cons.emplace_back(c, par(rng) ? 1 : -1);
  }
  return Blcs(vars, cons);
}

// Every variable in exactly two distinct constraints.
Blcs random_arrangement(std::mt19937_64& rng, std::size_t p, std::size_t n) {
  std::vector<std::string> vars;
  std::vector<std::vector<std::string>> members(p);
  for (std::size_t i = 0; i < n; ++i) {
    vars.push_back("e" + std::to_string(i));
    std::size_t a = rng() % p, b = rng() % (p - 1);
    if (b >= a) ++b;
    members[a].push_back(vars.back());
    members[b].push_back(vars.back());
  }
  std::vector<std::pair<std::vector<std::string>, int>> cons;
  for (std::size_t j = 0; j < p; ++j) {
    if (members[j].empty()) continue;
    cons.emplace_back(members[j], (rng() & 1) ? 1 : -1);
  }
  return Blcs(vars, cons);
}

// Some satisfying assignment; with plus set, one that gives that variable +1.
bool brute_force(const Blcs& s, std::optional<std::size_t> plus = std::nullopt) {
  std::size_t n = s.num_variables();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (plus && ((m >> *plus) & 1U)) continue;
    bool ok = true;
    for (const auto& c : s.constraints()) {
      int prod = c.parity;
      for (auto v : c.vars) prod *= ((m >> v) & 1U) ? -1 : 1;
      if (prod != 1) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST(Blcs, MagicSquareShape) {
  Blcs ms = magic_square_system();
  EXPECT_EQ(ms.num_variables(), 9u);
  EXPECT_EQ(ms.num_constraints(), 6u);
  EXPECT_EQ(system_parity(ms), -1);
  for (auto d : degrees(ms)) EXPECT_EQ(d, 2u);
  EXPECT_TRUE(is_arrangement(ms));
  EXPECT_FALSE(has_classical_solution(ms).found);
  EXPECT_TRUE(lemma1_check(ms));
  EXPECT_FALSE(arkhipov_realizable(ms));
}

TEST(Blcs, MagicStarAndChsh) {
  Blcs st = magic_star_system();
  EXPECT_EQ(st.num_variables(), 10u);
  EXPECT_EQ(st.num_constraints(), 5u);
  EXPECT_EQ(system_parity(st), -1);
  Blcs ch = chsh_system();
  EXPECT_EQ(ch.num_variables(), 2u);
  EXPECT_EQ(system_parity(ch), -1);
  EXPECT_FALSE(has_classical_solution(ch).found);
}

TEST(Blcs, RejectsMalformedInput) {
  EXPECT_THROW(Blcs({"a"}, std::vector<std::pair<std::vector<std::string>, int>>{{{"b"}, 1}}), std::invalid_argument);
  EXPECT_THROW(Blcs({"a"}, std::vector<std::pair<std::vector<std::string>, int>>{{{"a"}, 2}}), std::invalid_argument);
  EXPECT_THROW(Blcs({"a", "a"}, std::vector<std::pair<std::vector<std::string>, int>>{}), std::invalid_argument);
}

TEST(Blcs, SplitRaisesDegree) {
  Blcs ms = magic_square_system();
  const std::string v = ms.variables()[4];
  Blcs s = split_variable(ms, v);
  EXPECT_EQ(s.num_variables(), 10u);
  EXPECT_FALSE(s.has_variable(v));
  for (const auto& name : s.variables())
    if (name.rfind(v + ".", 0) == 0) EXPECT_EQ(degree(s, name), 3u);
}

TEST(Blcs, ClassicalWitnessSatisfies) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 50; ++it) {
    Blcs s = random_system(rng, 6, 4);
    auto r = has_classical_solution(s);
    EXPECT_EQ(r.found, brute_force(s));
    if (r.found) EXPECT_TRUE(satisfies(s, r.witness));
  }
}

// 200 random systems with p <= 12: lemma1_check excludes classical solutions,
// negation preserves realizability and the split keeps the solutions with v = +1.
TEST(BlcsProperty, LemmaAndOperations) {
  std::mt19937_64 rng(2024);
  std::size_t lemma_hits = 0;
  for (int it = 0; it < 200; ++it) {
    std::size_t p = 2 + rng() % 11, n = 2 + rng() % 9;
    Blcs s = random_system(rng, n, p);
    bool real = brute_force(s);
    if (lemma1_check(s)) {
      ++lemma_hits;
      EXPECT_FALSE(real);
    }
    const std::size_t vi = rng() % n;
    const std::string v = s.variables()[vi];
    EXPECT_EQ(brute_force(negate_variable(s, v)), real);
    // the split pins v = +1, so it keeps exactly the solutions with v = +1
    EXPECT_EQ(brute_force(split_variable(s, v)), brute_force(s, vi));
    if (!real) EXPECT_FALSE(brute_force(split_variable(s, v)));
    if (!real) EXPECT_TRUE(lemma1_check(standardize(s).system));
  }
  EXPECT_GT(lemma_hits, 0u);
}

TEST(BlcsProperty, ArkhipovMatchesBruteForce) {
  std::mt19937_64 rng(77);
  std::size_t both = 0;
  for (int it = 0; it < 200; ++it) {
    std::size_t p = 2 + rng() % 6, n = 2 + rng() % 10;
    Blcs s = random_arrangement(rng, p, n);
    ASSERT_TRUE(is_arrangement(s));
    bool real = brute_force(s);
    EXPECT_EQ(arkhipov_realizable(s), real);
    both += real;
  }
  EXPECT_GT(both, 0u);
  EXPECT_LT(both, 200u);
}

TEST(Blcs, ArkhipovChecksEachComponent) {
  // two disjoint copies of an unsatisfiable pair: total parity +1, still unrealizable
  Blcs s({"a", "b"}, std::vector<std::pair<std::vector<std::string>, int>>{
                         {{"a"}, 1}, {{"a"}, -1}, {{"b"}, 1}, {{"b"}, -1}});
  ASSERT_TRUE(is_arrangement(s));
  EXPECT_EQ(system_parity(s), 1);
  EXPECT_FALSE(arkhipov_realizable(s));
  EXPECT_FALSE(has_classical_solution(s).found);
  EXPECT_THROW(arkhipov_realizable(Blcs({"a"}, std::vector<std::pair<std::vector<std::string>, int>>{{{"a"}, 1}})),
               std::invalid_argument);
}

TEST(Blcs, NegationParityRule) {
  std::mt19937_64 rng(19);
  for (int it = 0; it < 100; ++it) {
    Blcs s = random_system(rng, 5, 4);
    const auto& v = s.variables()[rng() % 5];
    int expected = system_parity(s) * ((degree(s, v) % 2) ? -1 : 1);
    EXPECT_EQ(system_parity(negate_variable(s, v)), expected);
  }
}

TEST(Blcs, StandardizeCases) {
  Blcs ms = magic_square_system();
  auto r0 = standardize(ms);
  EXPECT_EQ(r0.lemma_case, 0);
  EXPECT_EQ(r0.system, ms);
  // idempotent on its own output
  auto again = standardize(r0.system);
  EXPECT_EQ(again.system, r0.system);

  // parity +1, all degrees even, unrealizable: x*y=1, x*y=-1 twice over
  Blcs odd({"x", "y"}, std::vector<std::pair<std::vector<std::string>, int>>{
                           {{"x", "y"}, 1}, {{"x", "y"}, -1}, {{"x", "y"}, 1}, {{"x", "y"}, -1}});
  ASSERT_EQ(system_parity(odd), 1);
  auto r3 = standardize(odd);
  EXPECT_EQ(r3.lemma_case, 3);
  EXPECT_TRUE(lemma1_check(r3.system));
  EXPECT_THROW(standardize(Blcs({"x"}, std::vector<std::pair<std::vector<std::string>, int>>{{{"x"}, 1}})),
               std::invalid_argument);
}

TEST(Blcs, IsomorphismUnderRelabelAndSigns) {
  Blcs ms = magic_square_system();
  std::mt19937_64 rng(5);
  auto vars = ms.variables();
  std::vector<std::size_t> perm(vars.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::string> renamed(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) renamed[perm[i]] = "w" + std::to_string(i);
  std::vector<std::pair<std::vector<std::string>, int>> cons;
  for (std::size_t j = ms.num_constraints(); j-- > 0;) {
    std::vector<std::string> c;
    for (auto v : ms.constraints()[j].vars) c.push_back("w" + std::to_string(v));
    cons.emplace_back(c, ms.constraints()[j].parity);
  }
  Blcs b(renamed, cons);
  // one sign flip is absorbed by negating the parities around the variable
  b = negate_variable(b, "w0");
  auto iso = is_isomorphic(ms, b);
  ASSERT_TRUE(iso.found);
  EXPECT_TRUE(same_up_to_constraint_order(apply_isomorphism(ms, b, iso), b));
  EXPECT_FALSE(is_isomorphic(ms, magic_star_system()).found);
}

TEST(Blcs, ReduceSubstitutes) {
  Blcs ch = chsh_system();
  auto r = reduce(ch, {{"v1", 1}});
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(r.system.num_variables(), 1u);
  auto full = reduce(ch, {{"v1", 1}, {"v2", 1}});
  EXPECT_FALSE(full.consistent);
}

TEST(Gf2, SolvesAndReportsNullspace) {
  // x0 + x1 = 1, x1 + x2 = 0 over three unknowns
  BitVec r0(3), r1(3);
  r0.set(0), r0.set(1);
  r1.set(1), r1.set(2);
  auto s = gf2_solve({r0, r1}, {1, 0}, 3);
  ASSERT_TRUE(s.consistent);
  EXPECT_EQ(s.rank, 2u);
  EXPECT_TRUE(r0.dot(s.particular));
  EXPECT_FALSE(r1.dot(s.particular));
  ASSERT_EQ(s.nullspace.size(), 1u);
  EXPECT_FALSE(r0.dot(s.nullspace[0]));
  auto bad = gf2_solve({r0, r0}, {1, 0}, 3);
  EXPECT_FALSE(bad.consistent);
}
