#include <gtest/gtest.h>

#include <map>

#include "sdl/behaviors.hpp"
#include "sdl/quantum.hpp"

using namespace sdl;

TEST(Behaviors, TargetsAreValid) {
  auto sq = sdlmsq_behavior();
  EXPECT_TRUE(check_behavior(sq).ok());
  EXPECT_EQ(sq.p.maxCoeff(), Rational(1, 32));
  auto st = sdlmstar_behavior();
  EXPECT_TRUE(check_behavior(st).ok());
  EXPECT_EQ(st.p.maxCoeff(), Rational(1, 16));
}

TEST(Behaviors, CheckFlagsSignaling) {
  auto g = chsh_game();
  Behavior<Rational> b(g.scenario);
  // Alice's marginal at x=0 depends on y
  const Scenario& sc = *g.scenario;
  for (std::size_t t = 0; t < 4; ++t) {
    const auto& x = sc.tuples()[t];
    std::size_t a0 = (x[0] == 0 && x[1] == 1) ? 1 : 0;
    b.at(t, sc.encode(t, {a0, 0})) = Rational(1);
  }
  auto rep = check_behavior(b);
  EXPECT_TRUE(rep.nonnegative);
  EXPECT_TRUE(rep.normalized);
  EXPECT_FALSE(rep.no_signaling);
  EXPECT_FALSE(rep.violations.empty());
}

TEST(Decomposition, AllSdlMagicSquarePairs) {
  auto target = sdlmsq_behavior();
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = 1; n <= 4; ++n) {
      auto d = sdlmsq_decomposition(m, n);
      auto rep = verify_decomposition(target, d);
      EXPECT_TRUE(rep.ok()) << m << "," << n << " " << rep.failure;
      EXPECT_EQ(rep.max_deviation, Rational(0));
      EXPECT_EQ(guessing_certificate(target, d.target, d), Rational(1));
    }
}

TEST(Decomposition, AllSdlMagicStarInputs) {
  auto target = sdlmstar_behavior();
  for (std::size_t j = 1; j <= 6; ++j) {
    auto d = sdlmstar_decomposition(j);
    auto rep = verify_decomposition(target, d);
    EXPECT_TRUE(rep.ok()) << j << " " << rep.failure;
    EXPECT_EQ(guessing_certificate(target, d.target, d), Rational(1));
  }
}

TEST(Decomposition, DetectsTampering) {
  auto target = sdlmsq_behavior();
  auto d = sdlmsq_decomposition(1, 1);
  d.weights[0] += Rational(1, 64);
  d.weights[1] -= Rational(1, 64);
  auto rep = verify_decomposition(target, d);
  EXPECT_FALSE(rep.sums_match);
  EXPECT_GT(rep.max_deviation, Rational(0));

  auto d2 = sdlmsq_decomposition(1, 1);
  d2.weights[0] += Rational(1, 64);
  EXPECT_FALSE(verify_decomposition(target, d2).weights_ok);
}

TEST(LocalFraction, SupportCheck) {
  auto g = sdlmsq_game();
  EXPECT_EQ(local_fraction_support_check(g, sdlmsq_behavior()), LocalFraction::Zero);
  auto ch = chsh_game();
  auto det = deterministic_behavior(ch.scenario, {{0, 0}, {0, 0}});
  EXPECT_EQ(local_fraction_support_check(ch, det), LocalFraction::Inconclusive);
}

TEST(Attack, ExactGuessingAndBands) {
  auto g = sdlmsq_game();
  auto target = sdlmsq_behavior();
  auto d = sdlmsq_decomposition(3, 2);
  auto t = attack_simulate(g, target, d, 0.1, 20000, 42);
  EXPECT_GT(t.generation_rounds, 0u);
  EXPECT_EQ(t.correct_guesses, t.generation_rounds);
  EXPECT_EQ(t.guess_rate(), 1.0);
  EXPECT_TRUE(band_check(t, target).ok(0.99));

  // independent recount of the test rounds
  std::uint64_t tests = 0;
  for (const auto& r : t.rounds) tests += r.test;
  std::uint64_t sum = 0;
  for (auto c : t.tuple_counts) sum += c;
  EXPECT_EQ(tests, sum);
  EXPECT_EQ(tests + t.generation_rounds, 20000u);
}

TEST(Attack, SeededRunsAreReproducible) {
  auto g = sdlmsq_game();
  auto target = sdlmsq_behavior();
  auto d = sdlmsq_decomposition(1, 4);
  auto a = attack_simulate(g, target, d, 0.2, 3000, 9);
  auto b = attack_simulate(g, target, d, 0.2, 3000, 9);
  EXPECT_EQ(transcript_csv(a, *g.scenario), transcript_csv(b, *g.scenario));
  auto c = attack_simulate(g, target, d, 0.2, 3000, 10);
  EXPECT_NE(transcript_csv(a, *g.scenario), transcript_csv(c, *g.scenario));
}

TEST(SeededStream, UniformInUnitInterval) {
  Rng rng(5);
  double lo = 1, hi = 0, sum = 0;
  for (int i = 0; i < 100000; ++i) {
    double u = rng.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(sum / 100000, 0.5, 0.01);
}
