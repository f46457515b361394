#include "sdl/behaviors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sdl/quantum.hpp"

namespace sdl {

namespace {

template <class S>
bool near_zero(const S& v, double tol) {
  if constexpr (std::is_same_v<S, double>)
    return std::fabs(v) <= tol;
  else
    return sign(v) == 0;
}

std::string tuple_text(const Scenario& sc, const InputTuple& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + sc.inputs(i)[x[i]];
  return s + ")";
}

}  // namespace

template <class S>
BehaviorReport check_behavior(const Behavior<S>& b, double tol) {
  BehaviorReport rep;
  const Scenario& sc = *b.scenario;
  const std::size_t n = sc.players();
  auto note = [&](std::string msg) {
    if (rep.violations.size() < 32) rep.violations.push_back(std::move(msg));
  };
  for (std::size_t t = 0; t < sc.num_tuples(); ++t) {
    S total(0);
    for (std::size_t k = 0; k < sc.block_size(t); ++k) {
      const S& v = b.at(t, k);
      if (sign(v) < 0 && !near_zero(v, tol)) {
        rep.nonnegative = false;
        note("negative entry at input " + tuple_text(sc, sc.tuples()[t]));
      }
      total += v;
    }
    if (!near_zero(S(total - S(1)), tol)) {
      rep.normalized = false;
      note("input " + tuple_text(sc, sc.tuples()[t]) + " does not sum to 1");
    }
  }
  for (std::uint32_t mask = 1; mask + 1 < (1U << n); ++mask) {
    // (x_S, a_S) -> marginal, and the tuple that first produced it
    std::map<std::vector<std::size_t>, std::pair<S, std::size_t>> first;
    for (std::size_t t = 0; t < sc.num_tuples(); ++t) {
      const auto& x = sc.tuples()[t];
      std::map<std::vector<std::size_t>, S> marg;
      for (std::size_t k = 0; k < sc.block_size(t); ++k) {
        auto a = sc.decode(t, k);
        std::vector<std::size_t> key;
        for (std::size_t i = 0; i < n; ++i)
          if (mask & (1U << i)) key.push_back(x[i]);
        for (std::size_t i = 0; i < n; ++i)
          if (mask & (1U << i)) key.push_back(a[i]);
        marg[key] += b.at(t, k);
      }
      for (auto& [key, val] : marg) {
        auto it = first.find(key);
        if (it == first.end()) {
          first.emplace(key, std::make_pair(val, t));
        } else if (!near_zero(S(val - it->second.first), tol)) {
          rep.no_signaling = false;
          std::string players;
          for (std::size_t i = 0; i < n; ++i)
            if (mask & (1U << i)) players += (players.empty() ? "" : ",") + std::to_string(i + 1);
          note("signaling: players {" + players + "} marginal differs between " +
               tuple_text(sc, sc.tuples()[it->second.second]) + " and " + tuple_text(sc, x));
        }
      }
    }
  }
  return rep;
}

template BehaviorReport check_behavior(const Behavior<Rational>&, double);
template BehaviorReport check_behavior(const Behavior<Q2>&, double);
template BehaviorReport check_behavior(const Behavior<double>&, double);

std::optional<OutputTuple> deterministic_outcome(const Behavior<Rational>& b, const InputTuple& x) {
  auto t = b.scenario->tuple_index(x);
  if (!t) throw std::invalid_argument("input tuple is not admissible");
  for (std::size_t k = 0; k < b.scenario->block_size(*t); ++k)
    if (b.at(*t, k) == 1) return b.scenario->decode(*t, k);
  return std::nullopt;
}

DecompositionReport verify_decomposition(const Behavior<Rational>& target, const PdDecomposition& d) {
  DecompositionReport rep;
  if (d.weights.size() != d.parts.size() || d.parts.empty()) {
    rep.failure = "weights and parts differ in number";
    return rep;
  }
  for (const auto& p : d.parts)
    if (!same_shape(*p.scenario, *target.scenario)) throw std::invalid_argument("verify_decomposition: shape mismatch");
  Rational total = 0;
  rep.weights_ok = true;
  for (const auto& w : d.weights) {
    if (w < 0) rep.weights_ok = false;
    total += w;
  }
  if (total != 1) rep.weights_ok = false;
  if (!rep.weights_ok && rep.failure.empty()) rep.failure = "weights are not a probability vector";

  rep.parts_deterministic = true;
  for (std::size_t i = 0; i < d.parts.size(); ++i) {
    auto out = deterministic_outcome(d.parts[i], d.target);
    bool declared = i < d.outcomes.size() ? (out && *out == d.outcomes[i]) : out.has_value();
    if (!declared) {
      rep.parts_deterministic = false;
      if (rep.failure.empty()) rep.failure = "part " + std::to_string(i + 1) + " is not deterministic at the target";
    }
  }
  Vec<Rational> mix = Vec<Rational>::Zero(target.p.size());
  for (std::size_t i = 0; i < d.parts.size(); ++i) mix += d.weights[i] * d.parts[i].p;
  rep.max_deviation = 0;
  for (Eigen::Index k = 0; k < mix.size(); ++k) {
    Rational dev = abs(mix[k] - target.p[k]);
    if (dev > rep.max_deviation) rep.max_deviation = dev;
  }
  rep.sums_match = rep.max_deviation == 0;
  if (!rep.sums_match && rep.failure.empty()) rep.failure = "mixture differs from the target, max deviation " + to_string(rep.max_deviation);
  return rep;
}

Rational guessing_certificate(const Behavior<Rational>& target, const InputTuple& x, const PdDecomposition& d) {
  auto rep = verify_decomposition(target, d);
  if (!rep.weights_ok || !rep.sums_match) throw std::invalid_argument("guessing_certificate: " + rep.failure);
  auto t = target.scenario->tuple_index(x);
  if (!t) throw std::invalid_argument("guessing_certificate: input tuple is not admissible");
  Rational g = 0;
  for (std::size_t i = 0; i < d.parts.size(); ++i) {
    Rational best = 0;
    for (std::size_t k = 0; k < target.scenario->block_size(*t); ++k) best = std::max(best, d.parts[i].at(*t, k));
    g += d.weights[i] * best;
  }
  return g;
}

namespace {

PdDecomposition from_strategies(const NonlocalGame& g, const InputTuple& target, const std::vector<QuantumStrategy>& ss) {
  PdDecomposition d;
  d.target = target;
  for (const auto& s : ss) {
    auto part = to_rational(behavior_from_strategy(g, s));
    auto out = deterministic_outcome(part, target);
    if (!out) throw std::logic_error("strategy " + s.label + " is not deterministic at its target");
    d.parts.push_back(std::move(part));
    d.outcomes.push_back(*out);
    d.weights.push_back(Rational(1, static_cast<long>(ss.size())));
  }
  return d;
}

}  // namespace

PdDecomposition sdlmsq_decomposition(std::size_t m, std::size_t n) {
  std::vector<QuantumStrategy> ss;
  for (std::size_t i = 1; i <= 32; ++i) ss.push_back(sdlmsq_pd_strategy(m, n, i));
  return from_strategies(sdlmsq_game(), {m - 1, n - 1}, ss);
}

PdDecomposition sdlmstar_decomposition(std::size_t j) {
  std::vector<QuantumStrategy> ss;
  for (std::size_t i = 1; i <= 16; ++i) ss.push_back(sdlmstar_pd_strategy(j, i));
  NonlocalGame g = sdlmstar_game();
  const auto& e = g.hypergraph->edges[0].at(j - 1).vertices;
  return from_strategies(g, {j - 1, e.front()}, ss);
}

std::string to_string(LocalFraction f) { return f == LocalFraction::Zero ? "zero" : "inconclusive"; }

LocalFraction local_fraction_support_check(const NonlocalGame& g, const Behavior<Rational>& b) {
  if (game_value(g, b) != 1) return LocalFraction::Inconclusive;
  return classical_value(g).value < 1 ? LocalFraction::Zero : LocalFraction::Inconclusive;
}

std::size_t Rng::pick(const std::vector<double>& cumulative) {
  double u = uniform() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  std::size_t k = static_cast<std::size_t>(it - cumulative.begin());
  return std::min(k, cumulative.size() - 1);
}

AttackTranscript attack_simulate(const NonlocalGame& g, const Behavior<Rational>& target, const PdDecomposition& d,
                                 double gamma, std::uint64_t rounds, std::uint64_t seed) {
  if (!(gamma > 0 && gamma < 1)) throw std::invalid_argument("attack_simulate: gamma must lie in (0,1)");
  if (!same_shape(*g.scenario, *target.scenario)) throw std::invalid_argument("attack_simulate: shape mismatch");
  auto rep = verify_decomposition(target, d);
  if (!rep.ok()) throw std::invalid_argument("attack_simulate: " + rep.failure);
  const Scenario& sc = *target.scenario;
  const std::size_t tstar = *sc.tuple_index(d.target);

  auto cumulate = [](const std::vector<double>& w) {
    std::vector<double> c(w.size());
    double acc = 0;
    for (std::size_t i = 0; i < w.size(); ++i) c[i] = acc += w[i];
    return c;
  };
  std::vector<double> wq, wpi;
  for (const auto& q : d.weights) wq.push_back(to_double(q));
  for (const auto& p : g.pi) wpi.push_back(to_double(p));
  const auto cq = cumulate(wq), cpi = cumulate(wpi);
  // per part, per tuple cumulative output distribution
  std::vector<std::vector<std::vector<double>>> cout(d.parts.size(), std::vector<std::vector<double>>(sc.num_tuples()));
  for (std::size_t i = 0; i < d.parts.size(); ++i)
    for (std::size_t t = 0; t < sc.num_tuples(); ++t) {
      std::vector<double> w;
      for (std::size_t k = 0; k < sc.block_size(t); ++k) w.push_back(to_double(d.parts[i].at(t, k)));
      cout[i][t] = cumulate(w);
    }

  AttackTranscript tr;
  tr.seed = seed;
  tr.gamma = gamma;
  tr.target = d.target;
  tr.tuple_counts.assign(sc.num_tuples(), 0);
  tr.entry_counts.assign(sc.size(), 0);
  tr.rounds.reserve(rounds);
  Rng rng(seed);
  for (std::uint64_t r = 0; r < rounds; ++r) {
    AttackRound ar;
    ar.round = r + 1;
    ar.part = rng.pick(cq);
    ar.test = rng.uniform() < gamma;
    ar.tuple = ar.test ? rng.pick(cpi) : tstar;
    std::size_t k = rng.pick(cout[ar.part][ar.tuple]);
    ar.outputs = sc.decode(ar.tuple, k);
    if (ar.test) {
      ++tr.tuple_counts[ar.tuple];
      ++tr.entry_counts[sc.offset(ar.tuple) + k];
    } else {
      ar.guess = d.outcomes[ar.part];
      ar.match = ar.guess == ar.outputs;
      ++tr.generation_rounds;
      if (ar.match) ++tr.correct_guesses;
    }
    tr.rounds.push_back(std::move(ar));
  }
  return tr;
}

BandCheck band_check(const AttackTranscript& t, const Behavior<Rational>& target, double k) {
  BandCheck out;
  const Scenario& sc = *target.scenario;
  for (std::size_t tt = 0; tt < sc.num_tuples(); ++tt) {
    const double n = static_cast<double>(t.tuple_counts[tt]);
    for (std::size_t e = 0; e < sc.block_size(tt); ++e) {
      const double p = to_double(target.at(tt, e));
      const double c = static_cast<double>(t.entry_counts[sc.offset(tt) + e]);
      const double sd = std::sqrt(n * p * (1 - p));
      ++out.entries;
      if (sd == 0) {
        if (c == n * p) ++out.within;
        else out.worst_z = INFINITY;
        continue;
      }
      double z = std::fabs(c - n * p) / sd;
      out.worst_z = std::max(out.worst_z, z);
      if (z <= k) ++out.within;
    }
  }
  return out;
}

std::string transcript_csv(const AttackTranscript& t, const Scenario& sc) {
  std::ostringstream os;
  os << "round,type,inputs,outputs,guess,match\n";
  auto outs = [&](std::size_t tuple, const OutputTuple& a) {
    std::string s;
    const auto& x = sc.tuples()[tuple];
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? " " : "") + sc.outputs(i, x[i])[a[i]];
    return s;
  };
  for (const auto& r : t.rounds) {
    const auto& x = sc.tuples()[r.tuple];
    std::string in;
    for (std::size_t i = 0; i < x.size(); ++i) in += (i ? " " : "") + sc.inputs(i)[x[i]];
    os << r.round << ',' << (r.test ? "test" : "generation") << ',' << in << ',' << outs(r.tuple, r.outputs) << ','
       << (r.test ? "" : outs(r.tuple, r.guess)) << ',' << (r.test ? "" : (r.match ? "1" : "0")) << '\n';
  }
  return os.str();
}

}  // namespace sdl
