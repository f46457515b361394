// Exact scalar types: big rationals, checked 64-bit rationals, the real
// quadratic field Q(sqrt 2) and its Gaussian extension Q(i, sqrt 2).
#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sdl {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);
inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline int sign(const Rational& r) { return r.sign(); }

// Rational with int64 numerator/denominator. Every operation is overflow
// checked and throws std::overflow_error rather than wrapping.
class SmallRational {
 public:
  SmallRational() = default;
  SmallRational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
  SmallRational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
  bool is_zero() const { return num_ == 0; }

  SmallRational operator-() const;
  SmallRational& operator+=(const SmallRational& o);
  SmallRational& operator-=(const SmallRational& o);
  SmallRational& operator*=(const SmallRational& o);
  SmallRational& operator/=(const SmallRational& o);

  friend SmallRational operator+(SmallRational a, const SmallRational& b) { return a += b; }
  friend SmallRational operator-(SmallRational a, const SmallRational& b) { return a -= b; }
  friend SmallRational operator*(SmallRational a, const SmallRational& b) { return a *= b; }
  friend SmallRational operator/(SmallRational a, const SmallRational& b) { return a /= b; }
  friend bool operator==(const SmallRational& a, const SmallRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const SmallRational& a, const SmallRational& b) { return !(a == b); }
  friend bool operator<(const SmallRational& a, const SmallRational& b);

 private:
  static SmallRational from_wide(__int128 n, __int128 d);
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline int sign(const SmallRational& r) { return r.sign(); }
inline double to_double(const SmallRational& r) {
  return static_cast<double>(r.num()) / static_cast<double>(r.den());
}
inline Rational to_rational(const SmallRational& r) { return Rational(r.num(), r.den()); }
inline Rational to_rational(const Rational& r) { return r; }
std::string to_string(const SmallRational& r);

// a + b*sqrt(2) over a rational base R.
template <class R>
class Sqrt2Ext {
 public:
  Sqrt2Ext() : a_(0), b_(0) {}
  Sqrt2Ext(int a) : a_(a), b_(0) {}  // NOLINT(implicit)
  Sqrt2Ext(R a, R b = R(0)) : a_(std::move(a)), b_(std::move(b)) {}  // NOLINT(implicit)

  static Sqrt2Ext sqrt2() { return Sqrt2Ext(R(0), R(1)); }

  const R& rational_part() const { return a_; }
  const R& sqrt2_part() const { return b_; }
  bool is_rational() const { return sdl::sign(b_) == 0; }

  int sign() const {
    int sa = sdl::sign(a_), sb = sdl::sign(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with 2 b^2
    R lhs = a_ * a_, rhs = R(2) * b_ * b_;
    return rhs < lhs ? sa : sb;
  }

  Sqrt2Ext conjugate_root() const { return Sqrt2Ext(a_, -b_); }
  R norm() const { return a_ * a_ - R(2) * b_ * b_; }

  Sqrt2Ext operator-() const { return Sqrt2Ext(-a_, -b_); }
  Sqrt2Ext& operator+=(const Sqrt2Ext& o) { a_ += o.a_; b_ += o.b_; return *this; }
  Sqrt2Ext& operator-=(const Sqrt2Ext& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  Sqrt2Ext& operator*=(const Sqrt2Ext& o) {
    R a = a_ * o.a_ + R(2) * b_ * o.b_;
    R b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  Sqrt2Ext& operator/=(const Sqrt2Ext& o) {
    R n = o.norm();
    if (sdl::sign(n) == 0) throw std::domain_error("division by zero in Q(sqrt2)");
    *this *= o.conjugate_root();
    a_ = a_ / n;
    b_ = b_ / n;
    return *this;
  }

  friend Sqrt2Ext operator+(Sqrt2Ext x, const Sqrt2Ext& y) { return x += y; }
  friend Sqrt2Ext operator-(Sqrt2Ext x, const Sqrt2Ext& y) { return x -= y; }
  friend Sqrt2Ext operator*(Sqrt2Ext x, const Sqrt2Ext& y) { return x *= y; }
  friend Sqrt2Ext operator/(Sqrt2Ext x, const Sqrt2Ext& y) { return x /= y; }
  friend bool operator==(const Sqrt2Ext& x, const Sqrt2Ext& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const Sqrt2Ext& x, const Sqrt2Ext& y) { return !(x == y); }
  friend bool operator<(const Sqrt2Ext& x, const Sqrt2Ext& y) { return (y - x).sign() > 0; }
  friend bool operator>(const Sqrt2Ext& x, const Sqrt2Ext& y) { return y < x; }
  friend bool operator<=(const Sqrt2Ext& x, const Sqrt2Ext& y) { return !(y < x); }
  friend bool operator>=(const Sqrt2Ext& x, const Sqrt2Ext& y) { return !(x < y); }

 private:
  R a_, b_;
};

template <class R>
int sign(const Sqrt2Ext<R>& x) { return x.sign(); }

template <class R>
double to_double(const Sqrt2Ext<R>& x) {
  return to_double(x.rational_part()) + 1.4142135623730950488 * to_double(x.sqrt2_part());
}

using Q2 = Sqrt2Ext<Rational>;

template <class R>
Q2 to_q2(const Sqrt2Ext<R>& x) { return Q2(to_rational(x.rational_part()), to_rational(x.sqrt2_part())); }

// "a", "b*sqrt(2)" or "a+b*sqrt(2)" with rational a, b.
std::string to_string(const Q2& x);
Q2 parse_q2(const std::string& text);

// Element of Q(i, sqrt 2): re + i*im with re, im in Q(sqrt 2).
template <class R>
class GaussSqrt2 {
 public:
  using Real = Sqrt2Ext<R>;
  GaussSqrt2() = default;
  GaussSqrt2(int v) : re_(v) {}  // NOLINT(implicit)
  GaussSqrt2(Real re, Real im = Real()) : re_(std::move(re)), im_(std::move(im)) {}  // NOLINT(implicit)

  static GaussSqrt2 i() { return GaussSqrt2(Real(), Real(1)); }

  const Real& real() const { return re_; }
  const Real& imag() const { return im_; }
  bool is_zero() const { return re_ == Real() && im_ == Real(); }

  GaussSqrt2 conj() const { return GaussSqrt2(re_, -im_); }
  GaussSqrt2 operator-() const { return GaussSqrt2(-re_, -im_); }
  GaussSqrt2& operator+=(const GaussSqrt2& o) { re_ += o.re_; im_ += o.im_; return *this; }
  GaussSqrt2& operator-=(const GaussSqrt2& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  GaussSqrt2& operator*=(const GaussSqrt2& o) {
    Real re = re_ * o.re_ - im_ * o.im_;
    Real im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  GaussSqrt2& operator/=(const GaussSqrt2& o) {
    Real n = o.re_ * o.re_ + o.im_ * o.im_;
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }
  friend GaussSqrt2 operator+(GaussSqrt2 x, const GaussSqrt2& y) { return x += y; }
  friend GaussSqrt2 operator-(GaussSqrt2 x, const GaussSqrt2& y) { return x -= y; }
  friend GaussSqrt2 operator*(GaussSqrt2 x, const GaussSqrt2& y) { return x *= y; }
  friend GaussSqrt2 operator/(GaussSqrt2 x, const GaussSqrt2& y) { return x /= y; }
  friend bool operator==(const GaussSqrt2& x, const GaussSqrt2& y) { return x.re_ == y.re_ && x.im_ == y.im_; }
  friend bool operator!=(const GaussSqrt2& x, const GaussSqrt2& y) { return !(x == y); }

 private:
  Real re_, im_;
};

template <class R>
GaussSqrt2<R> conj(const GaussSqrt2<R>& z) { return z.conj(); }

// Exact complex scalar used by the operator algebra.
using Cx = GaussSqrt2<SmallRational>;

std::ostream& operator<<(std::ostream& os, const SmallRational& r);
std::ostream& operator<<(std::ostream& os, const Q2& x);

}  // namespace sdl

namespace Eigen {

template <class R>
struct NumTraits<sdl::Sqrt2Ext<R>> : GenericNumTraits<sdl::Sqrt2Ext<R>> {
  using Real = sdl::Sqrt2Ext<R>;
  using NonInteger = Real;
  using Literal = Real;
  using Nested = Real;
  enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1,
         ReadCost = 2, AddCost = 8, MulCost = 16 };
  static Real epsilon() { return Real(); }
  static Real dummy_precision() { return Real(); }
  static int digits10() { return 0; }
};

template <class R>
struct NumTraits<sdl::GaussSqrt2<R>> : GenericNumTraits<sdl::GaussSqrt2<R>> {
  using Real = sdl::GaussSqrt2<R>;
  using NonInteger = Real;
  using Literal = Real;
  using Nested = Real;
  enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1,
         ReadCost = 4, AddCost = 16, MulCost = 64 };
  static Real epsilon() { return Real(); }
  static Real dummy_precision() { return Real(); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
