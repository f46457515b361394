#include "sdl/field.hpp"

#include <numeric>

namespace sdl {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  try {
    Integer num(s.substr(0, slash));
    Integer den(slash == std::string::npos ? std::string("1") : s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);  // canonical form
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
}

std::string to_string(const Rational& r) { return r.str(); }

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kMax = static_cast<__int128>(INT64_MAX);

}  // namespace

SmallRational SmallRational::from_wide(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("SmallRational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n > kMax || n < -kMax || d > kMax) throw std::overflow_error("SmallRational overflow");
  SmallRational r;
  r.num_ = static_cast<std::int64_t>(n);
  r.den_ = static_cast<std::int64_t>(d);
  return r;
}

SmallRational::SmallRational(std::int64_t n, std::int64_t d) { *this = from_wide(n, d); }

SmallRational SmallRational::operator-() const {
  SmallRational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

SmallRational& SmallRational::operator+=(const SmallRational& o) {
  if (den_ == o.den_) return *this = from_wide(static_cast<__int128>(num_) + o.num_, den_);
  return *this = from_wide(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                           static_cast<__int128>(den_) * o.den_);
}

SmallRational& SmallRational::operator-=(const SmallRational& o) { return *this += -o; }

SmallRational& SmallRational::operator*=(const SmallRational& o) {
  if (num_ == 0 || o.num_ == 0) return *this = SmallRational(0);
  return *this = from_wide(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
}

SmallRational& SmallRational::operator/=(const SmallRational& o) {
  if (o.num_ == 0) throw std::domain_error("SmallRational: division by zero");
  return *this = from_wide(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
}

bool operator<(const SmallRational& a, const SmallRational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

std::string to_string(const SmallRational& r) {
  if (r.den() == 1) return std::to_string(r.num());
  return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

std::string to_string(const Q2& x) {
  const Rational& a = x.rational_part();
  const Rational& b = x.sqrt2_part();
  if (b.sign() == 0) return to_string(a);
  std::string tail = to_string(abs(b)) + "*sqrt(2)";
  if (a.sign() == 0) return (b.sign() < 0 ? "-" : "") + tail;
  return to_string(a) + (b.sign() < 0 ? "-" : "+") + tail;
}

Q2 parse_q2(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  const std::string root = "*sqrt(2)";
  auto pos = s.find(root);
  if (pos == std::string::npos) return Q2(parse_rational(s));
  if (pos + root.size() != s.size()) throw std::invalid_argument("malformed Q(sqrt2) value '" + text + "'");
  std::string head = s.substr(0, pos);
  std::size_t split = std::string::npos;
  for (std::size_t k = head.size(); k-- > 1;) {
    if (head[k] == '+' || head[k] == '-') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return Q2(Rational(0), parse_rational(head));
  Rational a = parse_rational(head.substr(0, split));
  Rational b = parse_rational(head.substr(split + 1));
  if (head[split] == '-') b = -b;
  return Q2(a, b);
}

std::ostream& operator<<(std::ostream& os, const SmallRational& r) { return os << to_string(r); }
std::ostream& operator<<(std::ostream& os, const Q2& x) { return os << to_string(x); }

}  // namespace sdl
