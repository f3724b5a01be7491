#include "hopflift/rational.hpp"

#include <limits>

#include "hopflift/errors.hpp"

namespace hopflift {
namespace {

using i128 = __int128;

i128 abs128(i128 x) { return x < 0 ? -x : x; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 x) {
  return x >= std::numeric_limits<std::int64_t>::min() + 1 &&
         x <= std::numeric_limits<std::int64_t>::max();
}

mpz_class to_mpz(i128 x) {
  bool neg = x < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-x)
                            : static_cast<unsigned __int128>(x);
  mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

mpz_class to_mpz64(std::int64_t x) { return to_mpz(static_cast<i128>(x)); }

}  // namespace

Rational::Rational(long long n) : num_(n), den_(1) {
  if (n == std::numeric_limits<std::int64_t>::min()) assign_big(mpq_class(to_mpz64(n)));
}

Rational::Rational(long long n, long long d) {
  if (d == 0) throw DivisionByZero();
  i128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  i128 g = gcd128(nn, dd);
  if (g > 1) {
    nn /= g;
    dd /= g;
  }
  if (fits(nn) && fits(dd)) {
    num_ = static_cast<std::int64_t>(nn);
    den_ = static_cast<std::int64_t>(dd);
  } else {
    mpq_class q(to_mpz(nn), to_mpz(dd));
    q.canonicalize();
    assign_big(std::move(q));
  }
}

Rational::Rational(const mpq_class& q) { assign_big(q); }

void Rational::assign_big(mpq_class q) {
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p() &&
      n.get_si() != std::numeric_limits<long>::min()) {
    num_ = n.get_si();
    den_ = d.get_si();
    big_.reset();
    return;
  }
  num_ = 0;
  den_ = 1;
  big_ = std::make_shared<const mpq_class>(std::move(q));
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class n(s, 10);
      Rational r;
      r.assign_big(mpq_class(n));
      return r;
    }
    mpz_class n(s.substr(0, slash), 10);
    mpz_class d(s.substr(slash + 1), 10);
    if (d == 0) throw DivisionByZero();
    mpq_class q(n, d);
    q.canonicalize();
    Rational r;
    r.assign_big(std::move(q));
    return r;
  } catch (const std::invalid_argument&) {
    throw InvalidArgument("not a rational: '" + s + "'");
  }
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(to_mpz64(num_), to_mpz64(den_));
}

Rational Rational::inv() const {
  if (is_zero()) throw DivisionByZero();
  if (big_) return Rational(mpq_class(1) / *big_);
  return Rational(den_, num_);
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return Rational(a.to_mpq() + b.to_mpq());
  if (a.num_ == 0) return b;
  if (b.num_ == 0) return a;
  i128 g = gcd128(a.den_, b.den_);
  i128 t = static_cast<i128>(a.num_) * (b.den_ / g) + static_cast<i128>(b.num_) * (a.den_ / g);
  i128 g2 = gcd128(t, g);
  if (g2 == 0) g2 = 1;
  i128 n = t / g2;
  i128 d = static_cast<i128>(a.den_ / g) * (b.den_ / g2);
  if (n == 0) return Rational();
  if (fits(n) && fits(d)) {
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }
  return Rational(mpq_class(to_mpz(n), to_mpz(d)));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return Rational(a.to_mpq() * b.to_mpq());
  if (a.num_ == 0 || b.num_ == 0) return Rational();
  i128 g1 = gcd128(a.num_, b.den_);
  i128 g2 = gcd128(b.num_, a.den_);
  i128 n = static_cast<i128>(a.num_ / g1) * (b.num_ / g2);
  i128 d = static_cast<i128>(a.den_ / g2) * (b.den_ / g1);
  if (fits(n) && fits(d)) {
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }
  return Rational(mpq_class(to_mpz(n), to_mpz(d)));
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inv(); }

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  // Canonical storage keeps small values inline, so mixed forms differ.
  return false;
}

std::string Rational::str() const {
  if (big_) return big_->get_str(10);
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::size_t Rational::hash() const {
  if (big_) return std::hash<std::string>()(big_->get_str(16));
  return std::hash<std::int64_t>()(num_) * 1000003u ^ std::hash<std::int64_t>()(den_);
}

}  // namespace hopflift
