#include <gtest/gtest.h>

#include "sdl/behaviors.hpp"
#include "sdl/polytopes.hpp"
#include "sdl/quantum.hpp"

using namespace sdl;

namespace {

// Brute force over deterministic response functions, written against the raw table.
Rational brute_classical(const LinearFunctional& f) {
  const Scenario& sc = *f.scenario;
  std::size_t ma = sc.inputs(0).size(), mb = sc.inputs(1).size();
  Rational best(-1000);
  for (std::uint32_t fa = 0; fa < (1U << ma); ++fa)
    for (std::uint32_t fb = 0; fb < (1U << mb); ++fb) {
      Behavior<Rational> d(f.scenario);
      for (std::size_t t = 0; t < sc.num_tuples(); ++t) {
        const auto& x = sc.tuples()[t];
        d.at(t, sc.encode(t, {(fa >> x[0]) & 1U, (fb >> x[1]) & 1U})) = Rational(1);
      }
      best = std::max(best, f(d));
    }
  return best;
}

Behavior<Rational> pr_box(std::shared_ptr<const Scenario> sc) {
  Behavior<Rational> b(sc);
  for (std::size_t t = 0; t < sc->num_tuples(); ++t) {
    const auto& x = sc->tuples()[t];
    for (std::size_t k = 0; k < 4; ++k) {
      auto a = sc->decode(t, k);
      if ((a[0] ^ a[1]) == (x[0] & x[1])) b.at(t, k) = Rational(1, 2);
    }
  }
  return b;
}

// Isotropic box with correlator e on the winning side of CHSH.
Behavior<Rational> isotropic(std::shared_ptr<const Scenario> sc, Rational e) {
  Behavior<Rational> b(sc);
  for (std::size_t t = 0; t < sc->num_tuples(); ++t) {
    const auto& x = sc->tuples()[t];
    for (std::size_t k = 0; k < 4; ++k) {
      auto a = sc->decode(t, k);
      bool win = (a[0] ^ a[1]) == (x[0] & x[1]);
      b.at(t, k) = (Rational(1) + (win ? e : -e)) / 4;
    }
  }
  return b;
}

}  // namespace

TEST(Polytopes, LocalVertexCount) {
  EXPECT_EQ(local_vertices(binary_bipartite_scenario(2)).size(), 16u);
  EXPECT_EQ(local_vertices(binary_bipartite_scenario(3)).size(), 64u);
  EXPECT_THROW(local_vertices(binary_bipartite_scenario(3), 10), std::exception);
}

TEST(Polytopes, ClassicalBoundsAgainstBruteForce) {
  auto sc2 = binary_bipartite_scenario(2);
  auto sc3 = binary_bipartite_scenario(3);
  auto chsh = bell_functional("chsh", sc2);
  auto i3322 = bell_functional("i3322", sc3);
  EXPECT_EQ(classical_bound(chsh).value, Rational(3, 4));
  EXPECT_EQ(classical_bound(chsh).value, brute_classical(chsh));
  EXPECT_EQ(classical_bound(i3322).value, Rational(0));
  EXPECT_EQ(classical_bound(i3322).value, brute_classical(i3322));
  EXPECT_THROW(bell_functional("nosuch", sc2), std::invalid_argument);
}

TEST(Polytopes, PrBoxIsSeparatedFromPd) {
  auto sc = binary_bipartite_scenario(2);
  auto pr = pr_box(sc);
  auto m = pd_membership(pr, 1, 1);
  ASSERT_FALSE(m.member);
  EXPECT_TRUE(m.certificate_verified);
  // recheck the functional: positive on the box, non-positive on every local vertex
  EXPECT_GT(m.separating.dot(pr.p), Rational(0));
  for (const auto& v : local_vertices(sc)) EXPECT_LE(m.separating.dot(v.p), Rational(0));
}

TEST(Polytopes, MembershipWitnessRoundTrips) {
  auto sc = binary_bipartite_scenario(2);
  auto verts = local_vertices(sc);
  // an interior mixture is in every PD_{k,l}
  auto b = mixture<Rational>({Rational(1, 2), Rational(1, 3), Rational(1, 6)}, {verts[1], verts[6], verts[11]});
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < 2; ++l) {
      auto m = pd_membership(b, k, l);
      ASSERT_TRUE(m.member);
      EXPECT_TRUE(m.certificate_verified);
      EXPECT_TRUE(verify_decomposition(b, m.decomposition).ok());
    }
}

TEST(Polytopes, TsirelsonLocalFraction) {
  auto g = chsh_game();
  auto ts = behavior_from_strategy(g, tsirelson_chsh_strategy());
  auto lf = local_fraction_lp(ts);
  EXPECT_TRUE(lf.certificate_verified);
  // upper bound: the local part wins at most 3/4 and the remainder at most 1
  Q2 upper = Q2(4) * (Q2(1) - game_value(g, ts));
  // lower bound: ts = (2 - sqrt2) L + (sqrt2 - 1) PR with L the isotropic box at 1/2
  Q2 q(Rational(2), Rational(-1));
  auto L = isotropic(g.scenario, Rational(1, 2));
  auto PR = pr_box(g.scenario);
  Vec<Q2> mix = to_q2(L).p * q + to_q2(PR).p * (Q2(1) - q);
  EXPECT_TRUE(mix == ts.p);
  EXPECT_EQ(local_fraction_lp(L).value, Rational(1));
  EXPECT_EQ(lf.value, upper);
  EXPECT_EQ(lf.value, q);
}

TEST(Polytopes, LocalFractionAgreesWithSupportCheck) {
  auto g = chsh_game();
  auto pr = pr_box(g.scenario);
  EXPECT_EQ(local_fraction_support_check(g, pr), LocalFraction::Zero);
  EXPECT_EQ(local_fraction_lp(pr).value, Rational(0));
  auto loc = deterministic_behavior(g.scenario, {{0, 1}, {1, 1}});
  EXPECT_EQ(local_fraction_lp(loc).value, Rational(1));
}

TEST(Polytopes, NsGuessingTsirelson) {
  auto g = chsh_game();
  auto ts = behavior_from_strategy(g, tsirelson_chsh_strategy());
  auto r = ns_guessing_lp(ts, {0, 0});
  EXPECT_TRUE(r.certificate_verified);
  EXPECT_EQ(r.method, "lp");
  EXPECT_LT(r.value, Q2(1));
  // at least the most likely joint outcome
  Q2 best(0);
  for (std::size_t k = 0; k < 4; ++k) best = std::max(best, ts.at(0, k));
  EXPECT_GE(r.value, best);
  EXPECT_EQ(r.value, Q2(Rational(3, 2), Rational(-1, 2)));
}

TEST(Polytopes, NsGuessingDeterministicIsOne) {
  auto g = chsh_game();
  auto loc = deterministic_behavior(g.scenario, {{0, 1}, {1, 0}});
  EXPECT_EQ(ns_guessing_lp(loc, {1, 1}).value, Rational(1));
}

TEST(Polytopes, NsGuessingSdlMagicSquareByCertificate) {
  auto b = sdlmsq_behavior();
  for (std::size_t m = 1; m <= 4; m += 3) {
    auto d = sdlmsq_decomposition(m, 2);
    auto r = ns_guessing_lp(b, d.target, &d);
    EXPECT_EQ(r.value, Rational(1));
    EXPECT_TRUE(r.certificate_verified);
  }
}

TEST(Theorem3, OptimaEqualClassicalBounds) {
  auto rep = theorem3_verify();
  ASSERT_EQ(rep.rows.size(), 2u);
  EXPECT_TRUE(rep.ok());
  for (const auto& row : rep.rows) {
    EXPECT_TRUE(row.certificate_verified) << row.functional;
    EXPECT_EQ(row.optimum, row.classical) << row.functional;
    // re-substitute the stored pair
    EXPECT_TRUE(verify_optimality_pair(row.program, row.primal, row.dual).ok) << row.functional;
    Rational by(0);
    for (std::size_t i = 0; i < row.program.rows.size(); ++i) by += row.dual[i] * row.program.rows[i].rhs;
    auto f = bell_functional(row.functional, binary_bipartite_scenario(3));
    EXPECT_EQ(by + f.constant, row.optimum) << row.functional;
  }
  EXPECT_EQ(rep.rows[0].optimum, Rational(3, 4));
  EXPECT_EQ(rep.rows[1].optimum, classical_bound(bell_functional("i3322", binary_bipartite_scenario(3))).value);
  // over NS alone the PR box reaches 1
  EXPECT_TRUE(rep.ns_certificate_verified);
  EXPECT_EQ(rep.ns_chsh, Rational(1));
}
