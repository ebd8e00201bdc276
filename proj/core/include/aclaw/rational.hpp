#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace aclaw {

// Exact rational. Small values stay in two machine words; anything that would
// overflow is promoted to a shared immutable GMP rational.
class Rational {
 public:
  Rational() = default;
  Rational(int n) : num_(n) {}
  Rational(long n) : num_(n) {}
  Rational(long long n) : num_(n) {}
  Rational(long long n, long long d);
  explicit Rational(const mpq_class& q);

  static Rational parse(std::string_view text);

  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const;

  Rational operator-() const;
  Rational inverse() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  Rational pow(int e) const;
  Rational numerator() const;
  Rational denominator() const;

  std::string to_string() const;
  mpq_class to_mpq() const;
  std::size_t hash() const;

 private:
  static Rational from_mpq(mpq_class q);
  bool small() const noexcept { return !big_; }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

}  // namespace aclaw
