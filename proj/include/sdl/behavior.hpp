// Dense behavior tables p(a|x), templated on the probability scalar.
#pragma once

#include <Eigen/Core>

#include <memory>
#include <stdexcept>

#include "sdl/field.hpp"
#include "sdl/scenario.hpp"

namespace sdl {

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
S from_rational(const Rational& r);
template <>
inline Rational from_rational<Rational>(const Rational& r) { return r; }
template <>
inline Q2 from_rational<Q2>(const Rational& r) { return Q2(r); }
template <>
inline double from_rational<double>(const Rational& r) { return to_double(r); }

inline int sign(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
inline double to_double(double x) { return x; }

template <class S>
struct Behavior {
  std::shared_ptr<const Scenario> scenario;
  Vec<S> p;

  Behavior() = default;
  explicit Behavior(std::shared_ptr<const Scenario> sc) : scenario(std::move(sc)), p(Vec<S>::Zero(scenario->size())) {}
  Behavior(std::shared_ptr<const Scenario> sc, Vec<S> table) : scenario(std::move(sc)), p(std::move(table)) {
    if (static_cast<std::size_t>(p.size()) != scenario->size()) throw std::invalid_argument("behavior size mismatch");
  }

  const S& at(std::size_t t, std::size_t k) const { return p[static_cast<Eigen::Index>(scenario->offset(t) + k)]; }
  S& at(std::size_t t, std::size_t k) { return p[static_cast<Eigen::Index>(scenario->offset(t) + k)]; }
  std::size_t size() const { return scenario->size(); }
};

inline bool same_shape(const Scenario& a, const Scenario& b) { return &a == &b || a == b; }

template <class S>
Behavior<S> mixture(const std::vector<S>& weights, const std::vector<Behavior<S>>& parts) {
  if (weights.size() != parts.size() || parts.empty()) throw std::invalid_argument("mixture: size mismatch");
  Behavior<S> out(parts.front().scenario);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!same_shape(*parts[i].scenario, *out.scenario)) throw std::invalid_argument("mixture: shape mismatch");
    out.p += weights[i] * parts[i].p;
  }
  return out;
}

// Behavior assigning probability 1 to one output tuple per input tuple.
Behavior<Rational> deterministic_behavior(std::shared_ptr<const Scenario> sc,
                                          const std::vector<std::vector<std::size_t>>& choice);

Behavior<Q2> to_q2(const Behavior<Rational>& b);
// Throws when an entry has a nonzero sqrt(2) part.
Behavior<Rational> to_rational(const Behavior<Q2>& b);
Behavior<double> to_double(const Behavior<Q2>& b);
Behavior<double> to_double(const Behavior<Rational>& b);

}  // namespace sdl
