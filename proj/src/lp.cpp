#include "sdl/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <type_traits>
#include <stdexcept>

namespace sdl {

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

namespace {

// exact zero for rationals, tolerance for doubles
struct ExactOps {
  double tol = 0;
  template <class S>
  bool zero(const S& v) const { return sign(v) == 0; }
  template <class S>
  bool pos(const S& v) const { return sign(v) > 0; }
  template <class S>
  bool neg(const S& v) const { return sign(v) < 0; }
};
struct FloatOps {
  double tol = 1e-9;
  bool zero(double v) const { return std::fabs(v) <= tol; }
  bool pos(double v) const { return v > tol; }
  bool neg(double v) const { return v < -tol; }
};

template <class S>
struct OpsFor;
template <>
struct OpsFor<Rational> {
  using type = ExactOps;
};
template <>
struct OpsFor<Q2> {
  using type = ExactOps;
};
template <>
struct OpsFor<double> {
  using type = FloatOps;
};

template <class S>
double as_double(const S& v) {
  if constexpr (std::is_same_v<S, double>)
    return v;
  else
    return to_double(v);
}

template <class S>
using SparseRow = std::vector<std::pair<std::uint32_t, S>>;

template <class S>
const S* find_col(const SparseRow<S>& row, std::uint32_t c) {
  std::size_t lo = 0, hi = row.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (row[mid].first < c)
      lo = mid + 1;
    else
      hi = mid;
  }
  return (lo < row.size() && row[lo].first == c) ? &row[lo].second : nullptr;
}

template <class S>
class Tableau {
 public:
  using Ops = typename OpsFor<S>::type;

  Tableau(const LpProblem<S>& p, Ops ops) : ops_(ops), n_(p.num_vars()), m_(p.rows.size()) {
    flip_.assign(m_, false);
    std::vector<Sense> sense(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      sense[i] = p.rows[i].sense;
      if (ops_.neg(p.rows[i].rhs)) {
        flip_[i] = true;
        if (sense[i] == Sense::Le)
          sense[i] = Sense::Ge;
        else if (sense[i] == Sense::Ge)
          sense[i] = Sense::Le;
      }
    }
    // column layout: originals, one slack/surplus per inequality, one artificial per Ge/Eq row
    std::size_t col = n_;
    slack_col_.assign(m_, SIZE_MAX);
    art_col_.assign(m_, SIZE_MAX);
    for (std::size_t i = 0; i < m_; ++i)
      if (sense[i] != Sense::Eq) slack_col_[i] = col++;
    first_art_ = col;
    for (std::size_t i = 0; i < m_; ++i)
      if (sense[i] != Sense::Le) art_col_[i] = col++;
    width_ = col;

    rows_.resize(m_);
    rhs_.resize(m_);
    basis_.resize(m_);
    unit_col_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& row = p.rows[i];
      SparseRow<S> r;
      for (const auto& [j, v] : row.coeffs) {
        if (j >= n_) throw std::invalid_argument("lp: row references unknown variable");
        if (ops_.zero(v)) continue;
        r.emplace_back(static_cast<std::uint32_t>(j), flip_[i] ? S(-v) : v);
      }
      std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t k = 1; k < r.size(); ++k)
        if (r[k].first == r[k - 1].first) throw std::invalid_argument("lp: duplicate coefficient in a row");
      if (slack_col_[i] != SIZE_MAX) r.emplace_back(static_cast<std::uint32_t>(slack_col_[i]), sense[i] == Sense::Le ? S(1) : S(-1));
      if (art_col_[i] != SIZE_MAX) r.emplace_back(static_cast<std::uint32_t>(art_col_[i]), S(1));
      rows_[i] = std::move(r);
      rhs_[i] = flip_[i] ? S(-row.rhs) : row.rhs;
      basis_[i] = sense[i] == Sense::Le ? slack_col_[i] : art_col_[i];
      unit_col_[i] = basis_[i];
    }
    basic_.assign(width_, 0);
    for (auto b : basis_) basic_[b] = 1;
    is_unit_ = basic_;
    // reduced-cost rows d_j = c_B B^-1 A_j - c_j for the two phases (both maximised)
    cost1_.assign(width_, S(0));
    cost2_.assign(width_, S(0));
    for (std::size_t j = first_art_; j < width_; ++j) cost1_[j] = S(-1);
    for (const auto& [j, v] : p.objective) {
      if (j >= n_) throw std::invalid_argument("lp: objective references unknown variable");
      cost2_[j] += p.maximize ? v : S(-v);
    }
    d1_.assign(width_, S(0));
    d2_.assign(width_, S(0));
    z1_ = S(0);
    z2_ = S(0);
    for (std::size_t j = 0; j < width_; ++j) {
      d1_[j] = S(-cost1_[j]);
      d2_[j] = S(-cost2_[j]);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      const S& cb = cost1_[basis_[i]];
      if (ops_.zero(cb)) continue;
      for (const auto& [j, v] : rows_[i]) d1_[j] += cb * v;
      z1_ += cb * rhs_[i];
    }
  }

  // Returns false when unbounded.
  bool run(int phase, const LpOptions& opt, std::size_t& pivots, bool& used_bland) {
    auto& d = phase == 1 ? d1_ : d2_;
    std::size_t degenerate = 0;
    bool bland = false;
    while (true) {
      // phase 1 is over once no artificial carries weight: -sum(art) <= 0 always
      if (phase == 1 && ops_.zero(z1_)) return true;
      // artificials never re-enter once they leave
      std::size_t limit = first_art_;
      std::size_t e = SIZE_MAX;
      for (std::size_t j = 0; j < limit; ++j) {
        if (!ops_.neg(d[j]) || in_basis(j)) continue;
        if (e == SIZE_MAX) {
          e = j;
          if (bland) break;
        } else if (d[j] < d[e]) {
          e = j;
        }
      }
      if (e == SIZE_MAX) return true;
      // minimum ratio; ties go to the lexicographically smallest row of B^-1 / a,
      // which with any improving entering rule rules out cycling
      std::size_t r = SIZE_MAX;
      const S* best = nullptr;
      for (std::size_t i = 0; i < m_; ++i) {
        const S* a = find_col(rows_[i], static_cast<std::uint32_t>(e));
        if (!a || !ops_.pos(*a)) continue;
        if (r == SIZE_MAX) {
          r = i;
          best = a;
          continue;
        }
        S diff = rhs_[i] * *best - rhs_[r] * *a;
        bool better = ops_.neg(diff);
        if (ops_.zero(diff)) better = bland ? basis_[i] < basis_[r] : lex_compare(i, *a, r, *best) < 0;
        if (better) {
          r = i;
          best = a;
        }
      }
      if (r == SIZE_MAX) return false;
      if (ops_.zero(rhs_[r])) {
        if (++degenerate >= opt.degenerate_streak_for_bland && !bland) {
          bland = true;
          used_bland = true;
        }
      } else {
        degenerate = 0;
        bland = false;
      }
      pivot(r, e);
      ++pivots;
      if (trace_ && pivots % 200 == 0) {
        std::size_t nnz = 0;
        for (const auto& row : rows_) nnz += row.size();
        std::fprintf(stderr, "lp phase %d pivots %zu nnz %zu bland %d z %.9g\n", phase, pivots, nnz, int(bland),
                     as_double(phase == 1 ? z1_ : z2_));
      }
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    const auto ec = static_cast<std::uint32_t>(e);
    S piv = *find_col(rows_[r], ec);
    for (auto& [j, v] : rows_[r]) v /= piv;
    rhs_[r] /= piv;
    const SparseRow<S>& pr = rows_[r];
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const S* f = find_col(rows_[i], ec);
      if (!f) continue;
      S fac = *f;
      SparseRow<S> out;
      out.reserve(rows_[i].size() + pr.size());
      auto a = rows_[i].begin(), ae = rows_[i].end();
      auto b = pr.begin(), be = pr.end();
      while (a != ae || b != be) {
        if (b == be || (a != ae && a->first < b->first)) {
          out.push_back(std::move(*a));
          ++a;
        } else if (a == ae || b->first < a->first) {
          out.emplace_back(b->first, S(-(fac * b->second)));
          ++b;
        } else {
          S v = a->second - fac * b->second;
          if (!ops_.zero(v) && a->first != ec) out.emplace_back(a->first, std::move(v));
          ++a;
          ++b;
        }
      }
      rows_[i] = std::move(out);
      rhs_[i] -= fac * rhs_[r];
    }
    for (auto* dz : {&d1_, &d2_}) {
      auto& d = *dz;
      if (ops_.zero(d[e])) continue;
      S fac = d[e];
      for (const auto& [j, v] : pr) d[j] -= fac * v;
      d[e] = S(0);
      (dz == &d1_ ? z1_ : z2_) -= fac * rhs_[r];
    }
    basic_[basis_[r]] = 0;
    basic_[e] = 1;
    basis_[r] = e;
  }

  // pivot basic artificials out where a non-artificial column is available
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      for (const auto& [j, v] : rows_[i]) {
        if (j < first_art_ && !ops_.zero(v) && !in_basis(j)) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  // Pivots the listed columns into the basis, choosing the shortest eligible row each
  // time. Returns false when the reached basis is not primal feasible.
  bool crash(const std::vector<std::pair<int, std::size_t>>& ids) {
    std::vector<std::size_t> target;
    for (const auto& id : ids)
      if (auto j = column_of(id); j != SIZE_MAX) target.push_back(j);
    std::vector<char> want(width_, 0);
    for (auto j : target) want[j] = 1;
    for (auto j : target) {
      if (j >= width_ || in_basis(j)) continue;
      const auto jc = static_cast<std::uint32_t>(j);
      std::size_t best = SIZE_MAX;
      for (std::size_t i = 0; i < m_; ++i) {
        if (want[basis_[i]]) continue;
        const S* a = find_col(rows_[i], jc);
        if (!a || ops_.zero(*a)) continue;
        if (best == SIZE_MAX || rows_[i].size() < rows_[best].size()) best = i;
      }
      if (best != SIZE_MAX) pivot(best, j);
    }
    for (std::size_t i = 0; i < m_; ++i)
      if (ops_.neg(rhs_[i])) return false;
    return true;
  }

  // Column identity independent of row flips: (0, variable), (1, row) slack, (2, row) artificial.
  std::pair<int, std::size_t> column_id(std::size_t j) const {
    if (j < n_) return {0, j};
    for (std::size_t i = 0; i < m_; ++i) {
      if (slack_col_[i] == j) return {1, i};
      if (art_col_[i] == j) return {2, i};
    }
    return {-1, 0};
  }
  std::size_t column_of(std::pair<int, std::size_t> id) const {
    switch (id.first) {
      case 0: return id.second < n_ ? id.second : SIZE_MAX;
      case 1: return id.second < m_ ? slack_col_[id.second] : SIZE_MAX;
      case 2: return id.second < m_ ? art_col_[id.second] : SIZE_MAX;
    }
    return SIZE_MAX;
  }
  std::vector<std::pair<int, std::size_t>> basis_ids() const {
    std::vector<std::pair<int, std::size_t>> out;
    for (auto b : basis_) out.push_back(column_id(b));
    return out;
  }

  S phase1_value() const { return z1_; }
  S phase2_value() const { return z2_; }

  std::vector<S> primal() const {
    std::vector<S> x(n_, S(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = rhs_[i];
    return x;
  }

  // y_i = d_{u_i} + c_{u_i} for the initial unit column u_i of row i, mapped back through row flips
  std::vector<S> dual(int phase) const {
    const auto& d = phase == 1 ? d1_ : d2_;
    const auto& c = phase == 1 ? cost1_ : cost2_;
    std::vector<S> y(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      S v = d[unit_col_[i]] + c[unit_col_[i]];
      y[i] = flip_[i] ? S(-v) : v;
    }
    return y;
  }

 private:
  bool in_basis(std::size_t j) const { return basic_[j] != 0; }

  // sign of rows_[i] / ai - rows_[r] / ar restricted to the initial unit columns
  int lex_compare(std::size_t i, const S& ai, std::size_t r, const S& ar) const {
    auto p = rows_[i].begin(), pe = rows_[i].end();
    auto q = rows_[r].begin(), qe = rows_[r].end();
    auto skip = [&](auto& it, auto end) {
      while (it != end && !is_unit_[it->first]) ++it;
    };
    while (true) {
      skip(p, pe);
      skip(q, qe);
      if (p == pe && q == qe) return 0;
      std::uint32_t c = p == pe ? q->first : (q == qe ? p->first : std::min(p->first, q->first));
      S u = (p != pe && p->first == c) ? S(p->second * ar) : S(0);
      S v = (q != qe && q->first == c) ? S(q->second * ai) : S(0);
      S diff = u - v;
      if (!ops_.zero(diff)) return ops_.neg(diff) ? -1 : 1;
      if (p != pe && p->first == c) ++p;
      if (q != qe && q->first == c) ++q;
    }
  }
  bool trace_ = std::getenv("SDL_LP_TRACE") != nullptr;

  Ops ops_;
  std::size_t n_, m_, width_ = 0, first_art_ = 0;
  std::vector<bool> flip_;
  std::vector<std::size_t> slack_col_, art_col_, basis_, unit_col_;
  std::vector<char> basic_, is_unit_;
  std::vector<SparseRow<S>> rows_;
  std::vector<S> rhs_, cost1_, cost2_, d1_, d2_;
  S z1_, z2_;
};

template <class S>
typename OpsFor<S>::type make_ops(double tol) {
  typename OpsFor<S>::type ops;
  ops.tol = tol;
  return ops;
}


// Final basis of the same program solved in doubles with every structural and
// slack lower bound moved to a small random negative value, which removes the
// degeneracy of the homogeneous rows while keeping the system consistent.
template <class S>
std::vector<std::pair<int, std::size_t>> float_basis(const LpProblem<S>& p, const LpOptions& opt) {
  std::mt19937_64 gen(0x5d1f7e11ULL);
  const double lo = opt.guide_perturbation;
  std::uniform_real_distribution<double> shift(lo, 2 * lo);
  std::vector<double> eps(p.num_vars());
  for (auto& e : eps) e = shift(gen);
  LpProblem<double> q;
  q.var_names = p.var_names;
  q.maximize = p.maximize;
  for (const auto& row : p.rows) {
    LpRow<double> r;
    r.sense = row.sense;
    r.rhs = to_double(row.rhs);
    for (const auto& [j, v] : row.coeffs) {
      double a = to_double(v);
      r.coeffs.emplace_back(j, a);
      r.rhs += a * eps[j];
    }
    if (row.sense == Sense::Le) r.rhs += shift(gen);
    if (row.sense == Sense::Ge) r.rhs -= shift(gen);
    q.rows.push_back(std::move(r));
  }
  for (const auto& [j, v] : p.objective) q.objective.emplace_back(j, to_double(v));
  Tableau<double> t(q, make_ops<double>(opt.tolerance));
  std::size_t pivots = 0;
  bool bland = false;
  t.run(1, opt, pivots, bland);
  if (!FloatOps{opt.tolerance}.neg(t.phase1_value())) {
    t.drive_out_artificials();
    t.run(2, opt, pivots, bland);
  }
  return t.basis_ids();
}

}  // namespace

template <class S>
LpResult<S> lp_solve(const LpProblem<S>& p, const LpOptions& opt) {
  if (p.num_vars() > opt.max_vars) throw std::invalid_argument("lp: variable count over cap");
  LpResult<S> res;
  Tableau<S> t(p, make_ops<S>(opt.tolerance));
  if constexpr (!std::is_same_v<S, double>) {
    if (opt.float_guide && p.rows.size() >= opt.guide_min_rows) {
      res.float_guided = t.crash(float_basis(p, opt));
      if (!res.float_guided) t = Tableau<S>(p, make_ops<S>(opt.tolerance));
    }
  }
  t.run(1, opt, res.pivots, res.used_bland);
  auto ops = make_ops<S>(opt.tolerance);
  if (ops.neg(t.phase1_value())) {
    res.status = LpStatus::Infeasible;
    res.dual = t.dual(1);
    return res;
  }
  t.drive_out_artificials();
  if (!t.run(2, opt, res.pivots, res.used_bland)) {
    res.status = LpStatus::Unbounded;
    res.x = t.primal();
    return res;
  }
  res.status = LpStatus::Optimal;
  res.x = t.primal();
  res.dual = t.dual(2);
  res.value = p.maximize ? t.phase2_value() : S(-t.phase2_value());
  return res;
}

namespace {

template <class S>
struct Checker {
  typename OpsFor<S>::type ops;
  S max_res = S(0);
  void note(const S& v) {
    if constexpr (std::is_same_v<S, double>) max_res = std::max(max_res, std::fabs(v));
  }
};

}  // namespace

template <class S>
CertificateCheck<S> verify_optimality_pair(const LpProblem<S>& p, const std::vector<S>& x, const std::vector<S>& y,
                                           double tolerance) {
  CertificateCheck<S> out;
  Checker<S> ck{make_ops<S>(tolerance)};
  const auto& ops = ck.ops;
  if (x.size() != p.num_vars() || y.size() != p.rows.size()) {
    out.failure = "certificate size mismatch";
    return out;
  }
  for (std::size_t j = 0; j < x.size(); ++j)
    if (ops.neg(x[j])) {
      out.failure = "primal variable " + p.var_names[j] + " negative";
      return out;
    }
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const auto& row = p.rows[i];
    S lhs(0);
    for (const auto& [j, v] : row.coeffs) lhs += v * x[j];
    S slack = lhs - row.rhs;
    ck.note(row.sense == Sense::Eq ? slack : S(0));
    bool ok = row.sense == Sense::Eq ? ops.zero(slack) : (row.sense == Sense::Le ? !ops.pos(slack) : !ops.neg(slack));
    if (!ok) {
      out.failure = "primal row " + std::to_string(i) + " violated";
      return out;
    }
  }
  // dual of max c.x: A^T y >= c with y >= 0 on Le rows, y <= 0 on Ge rows (signs swap for min)
  const S sgn = p.maximize ? S(1) : S(-1);
  std::vector<S> aty(p.num_vars(), S(0));
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const auto& row = p.rows[i];
    if ((row.sense == Sense::Le && ops.neg(y[i])) || (row.sense == Sense::Ge && ops.pos(y[i]))) {
      out.failure = "dual multiplier " + std::to_string(i) + " has the wrong sign";
      return out;
    }
    for (const auto& [j, v] : row.coeffs) aty[j] += v * y[i];
  }
  std::vector<S> c(p.num_vars(), S(0));
  for (const auto& [j, v] : p.objective) c[j] += sgn * v;
  for (std::size_t j = 0; j < c.size(); ++j) {
    S gap = aty[j] - c[j];
    if (ops.neg(gap)) {
      out.failure = "dual constraint for " + p.var_names[j] + " violated";
      return out;
    }
  }
  S primal(0), dual(0);
  for (std::size_t j = 0; j < c.size(); ++j) primal += c[j] * x[j];
  for (std::size_t i = 0; i < p.rows.size(); ++i) dual += p.rows[i].rhs * y[i];
  ck.note(primal - dual);
  if (!ops.zero(primal - dual)) {
    out.failure = "primal and dual objectives differ";
    return out;
  }
  out.ok = true;
  out.max_residual = ck.max_res;
  return out;
}

template <class S>
CertificateCheck<S> verify_certificate(const LpProblem<S>& p, const LpResult<S>& r, double tolerance) {
  if (r.status == LpStatus::Optimal) {
    auto out = verify_optimality_pair(p, r.x, r.dual, tolerance);
    if (out.ok) {
      S v(0);
      for (const auto& [j, c] : p.objective) v += c * r.x[j];
      auto ops = make_ops<S>(tolerance);
      if (!ops.zero(v - r.value)) {
        out.ok = false;
        out.failure = "reported value differs from the objective at x";
      }
    }
    return out;
  }
  CertificateCheck<S> out;
  if (r.status == LpStatus::Unbounded) {
    out.failure = "unbounded results carry no certificate";
    return out;
  }
  // Farkas: sign-feasible y with A^T y >= 0 and b.y < 0
  auto ops = make_ops<S>(tolerance);
  const auto& y = r.dual;
  if (y.size() != p.rows.size()) {
    out.failure = "certificate size mismatch";
    return out;
  }
  std::vector<S> aty(p.num_vars(), S(0));
  S by(0);
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const auto& row = p.rows[i];
    if ((row.sense == Sense::Le && ops.neg(y[i])) || (row.sense == Sense::Ge && ops.pos(y[i]))) {
      out.failure = "Farkas multiplier " + std::to_string(i) + " has the wrong sign";
      return out;
    }
    for (const auto& [j, v] : row.coeffs) aty[j] += v * y[i];
    by += row.rhs * y[i];
  }
  for (std::size_t j = 0; j < aty.size(); ++j)
    if (ops.neg(aty[j])) {
      out.failure = "Farkas column " + p.var_names[j] + " negative";
      return out;
    }
  if (!ops.neg(by)) {
    out.failure = "Farkas combination is not negative";
    return out;
  }
  out.ok = true;
  return out;
}

template LpResult<Rational> lp_solve(const LpProblem<Rational>&, const LpOptions&);
template LpResult<Q2> lp_solve(const LpProblem<Q2>&, const LpOptions&);
template CertificateCheck<Q2> verify_certificate(const LpProblem<Q2>&, const LpResult<Q2>&, double);
template CertificateCheck<Q2> verify_optimality_pair(const LpProblem<Q2>&, const std::vector<Q2>&, const std::vector<Q2>&,
                                                     double);
template LpResult<double> lp_solve(const LpProblem<double>&, const LpOptions&);
template CertificateCheck<Rational> verify_certificate(const LpProblem<Rational>&, const LpResult<Rational>&, double);
template CertificateCheck<double> verify_certificate(const LpProblem<double>&, const LpResult<double>&, double);
template CertificateCheck<Rational> verify_optimality_pair(const LpProblem<Rational>&, const std::vector<Rational>&,
                                                           const std::vector<Rational>&, double);
template CertificateCheck<double> verify_optimality_pair(const LpProblem<double>&, const std::vector<double>&,
                                                         const std::vector<double>&, double);

}  // namespace sdl
