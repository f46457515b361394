#include "sdl/behavior.hpp"
#include "sdl/scenario.hpp"

#include <stdexcept>

namespace sdl {

Scenario::Scenario(std::vector<std::vector<std::string>> inputs,
                   std::vector<std::vector<std::vector<std::string>>> outputs, std::vector<InputTuple> tuples)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
  const std::size_t n = inputs_.size();
  if (n == 0) throw std::invalid_argument("scenario needs at least one player");
  if (outputs_.size() != n) throw std::invalid_argument("scenario: outputs per player mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (inputs_[i].empty()) throw std::invalid_argument("scenario: empty input set");
    if (outputs_[i].size() != inputs_[i].size()) throw std::invalid_argument("scenario: alphabet count mismatch");
    for (const auto& alph : outputs_[i])
      if (alph.empty()) throw std::invalid_argument("scenario: empty output alphabet");
  }
  if (tuples.empty()) {
    InputTuple x(n, 0);
    while (true) {
      tuples_.push_back(x);
      std::size_t i = n;
      while (i > 0) {
        --i;
        if (++x[i] < inputs_[i].size()) break;
        x[i] = 0;
        if (i == 0) {
          i = n + 1;
          break;
        }
      }
      if (i == n + 1) break;
    }
    full_product_ = true;
  } else {
    tuples_ = std::move(tuples);
    std::size_t product = 1;
    for (const auto& in : inputs_) product *= in.size();
    full_product_ = tuples_.size() == product;
  }
  for (std::size_t t = 0; t < tuples_.size(); ++t) {
    const auto& x = tuples_[t];
    if (x.size() != n) throw std::invalid_argument("scenario: tuple arity mismatch");
    for (std::size_t i = 0; i < n; ++i)
      if (x[i] >= inputs_[i].size()) throw std::invalid_argument("scenario: tuple input out of range");
    if (!tuple_lookup_.emplace(x, t).second) throw std::invalid_argument("scenario: duplicate input tuple");
    std::size_t block = 1;
    for (std::size_t i = 0; i < n; ++i) block *= outputs_[i][x[i]].size();
    offset_.push_back(total_);
    block_size_.push_back(block);
    total_ += block;
  }
}

std::optional<std::size_t> Scenario::tuple_index(const InputTuple& x) const {
  auto it = tuple_lookup_.find(x);
  if (it == tuple_lookup_.end()) return std::nullopt;
  return it->second;
}

OutputTuple Scenario::decode(std::size_t t, std::size_t k) const {
  const auto& x = tuples_.at(t);
  OutputTuple a(players());
  for (std::size_t i = players(); i-- > 0;) {
    std::size_t m = outputs_[i][x[i]].size();
    a[i] = k % m;
    k /= m;
  }
  return a;
}

std::size_t Scenario::encode(std::size_t t, const OutputTuple& a) const {
  const auto& x = tuples_.at(t);
  std::size_t k = 0;
  for (std::size_t i = 0; i < players(); ++i) {
    std::size_t m = outputs_[i][x[i]].size();
    if (a.at(i) >= m) throw std::out_of_range("encode: output index out of range");
    k = k * m + a[i];
  }
  return k;
}

std::size_t Scenario::input_index(std::size_t player, const std::string& label) const {
  const auto& in = inputs_.at(player);
  for (std::size_t x = 0; x < in.size(); ++x)
    if (in[x] == label) return x;
  throw std::invalid_argument("unknown input label '" + label + "' for player " + std::to_string(player + 1));
}

std::size_t Scenario::output_index(std::size_t player, std::size_t x, const std::string& label) const {
  const auto& out = outputs_.at(player).at(x);
  for (std::size_t a = 0; a < out.size(); ++a)
    if (out[a] == label) return a;
  throw std::invalid_argument("unknown output label '" + label + "'");
}

Behavior<Rational> deterministic_behavior(std::shared_ptr<const Scenario> sc,
                                          const std::vector<std::vector<std::size_t>>& choice) {
  Behavior<Rational> b(sc);
  for (std::size_t t = 0; t < sc->num_tuples(); ++t) {
    OutputTuple a(sc->players());
    for (std::size_t i = 0; i < sc->players(); ++i) a[i] = choice.at(i).at(sc->tuples()[t][i]);
    b.at(t, sc->encode(t, a)) = 1;
  }
  return b;
}

Behavior<Q2> to_q2(const Behavior<Rational>& b) {
  Behavior<Q2> out(b.scenario);
  for (Eigen::Index k = 0; k < b.p.size(); ++k) out.p[k] = Q2(b.p[k]);
  return out;
}

Behavior<Rational> to_rational(const Behavior<Q2>& b) {
  Behavior<Rational> out(b.scenario);
  for (Eigen::Index k = 0; k < b.p.size(); ++k) {
    if (!b.p[k].is_rational()) throw std::domain_error("behavior entry is irrational");
    out.p[k] = b.p[k].rational_part();
  }
  return out;
}

Behavior<double> to_double(const Behavior<Q2>& b) {
  Behavior<double> out(b.scenario);
  for (Eigen::Index k = 0; k < b.p.size(); ++k) out.p[k] = sdl::to_double(b.p[k]);
  return out;
}

Behavior<double> to_double(const Behavior<Rational>& b) {
  Behavior<double> out(b.scenario);
  for (Eigen::Index k = 0; k < b.p.size(); ++k) out.p[k] = sdl::to_double(b.p[k]);
  return out;
}

}  // namespace sdl
