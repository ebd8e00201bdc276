#include "aclaw/rational.hpp"

#include <functional>
#include <limits>
#include <numeric>

#include "aclaw/error.hpp"

namespace aclaw {

namespace {

__extension__ typedef __int128 i128;

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin = -kMax;  // keep -INT64_MIN out of the small range

bool fits(i128 v) { return v >= kMin && v <= kMax; }

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw EvaluationError("division by zero");
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
    *this = from_mpq(mpq_class(mpz_class(std::to_string(n)), mpz_class(std::to_string(d))));
  }
}

Rational::Rational(const mpq_class& q) { *this = from_mpq(q); }

Rational Rational::from_mpq(mpq_class q) {
  q.canonicalize();
  Rational r;
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    long n = q.get_num().get_si();
    long d = q.get_den().get_si();
    if (n != std::numeric_limits<long>::min()) {
      r.num_ = n;
      r.den_ = d;
      return r;
    }
  }
  r.num_ = 0;
  r.den_ = 1;
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q;
  mpz_set_si(q.get_num_mpz_t(), num_);
  mpz_set_si(q.get_den_mpz_t(), den_);
  return q;
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw InputError("malformed rational '" + s + "'");
  if (q.get_den() == 0) throw EvaluationError("division by zero");
  return from_mpq(q);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

Rational Rational::operator-() const {
  if (big_) return from_mpq(-*big_);
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw EvaluationError("division by zero");
  if (big_) return from_mpq(1 / *big_);
  Rational r;
  r.num_ = num_ < 0 ? -den_ : den_;
  r.den_ = num_ < 0 ? -num_ : num_;
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.small() && b.small()) {
    if (a.num_ == 0) return b;
    if (b.num_ == 0) return a;
    if (a.den_ == b.den_) {
      i128 n = static_cast<i128>(a.num_) + b.num_;
      i128 g = gcd128(n, a.den_);
      if (g == 0) return Rational();
      i128 nn = n / g, dd = a.den_ / g;
      if (fits(nn)) {
        Rational r;
        r.num_ = static_cast<std::int64_t>(nn);
        r.den_ = static_cast<std::int64_t>(dd);
        return r;
      }
    } else {
      i128 n = static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_;
      i128 d = static_cast<i128>(a.den_) * b.den_;
      i128 g = gcd128(n, d);
      if (n == 0) return Rational();
      n /= g;
      d /= g;
      if (fits(n) && fits(d)) {
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
      }
    }
  }
  return Rational::from_mpq(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (a.small() && b.small()) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    i128 g1 = gcd128(a.num_, b.den_);
    i128 g2 = gcd128(b.num_, a.den_);
    i128 n = (static_cast<i128>(a.num_) / g1) * (static_cast<i128>(b.num_) / g2);
    i128 d = (static_cast<i128>(a.den_) / g2) * (static_cast<i128>(b.den_) / g1);
    if (fits(n) && fits(d)) {
      Rational r;
      r.num_ = static_cast<std::int64_t>(n);
      r.den_ = static_cast<std::int64_t>(d);
      return r;
    }
  }
  return Rational::from_mpq(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

bool operator==(const Rational& a, const Rational& b) {
  if (a.small() && b.small()) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.small() != b.small()) return false;  // canonical: big values never fit small
  return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.small() && b.small()) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

Rational Rational::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Rational result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Rational Rational::numerator() const {
  if (big_) return from_mpq(mpq_class(big_->get_num()));
  return Rational(num_);
}

Rational Rational::denominator() const {
  if (big_) return from_mpq(mpq_class(big_->get_den()));
  return Rational(den_);
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str(10);
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::size_t Rational::hash() const {
  if (big_) return std::hash<std::string>{}(big_->get_str(16));
  std::size_t h = std::hash<std::int64_t>{}(num_);
  return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace aclaw
