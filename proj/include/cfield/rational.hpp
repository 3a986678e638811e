#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>

namespace cfield {

using BigInt = mpz_class;

/// Base class for every error raised by the library's algebra.
class AlgebraError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DivisionByZero : public AlgebraError {
 public:
  DivisionByZero() : AlgebraError("division by zero") {}
};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long v) : v_(v) {}  // NOLINT: implicit on purpose
  BigRational(int v) : v_(v) {}   // NOLINT
  BigRational(const BigInt& v) : v_(v) {}  // NOLINT
  BigRational(const BigInt& num, const BigInt& den);
  explicit BigRational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  /// Parses "a", "-a" or "a/b".
  static BigRational parse(const std::string& text);

  BigInt numerator() const { return v_.get_num(); }
  BigInt denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  BigRational operator-() const { return BigRational(mpq_class(-v_)); }
  BigRational& operator+=(const BigRational& o) { v_ += o.v_; return *this; }
  BigRational& operator-=(const BigRational& o) { v_ -= o.v_; return *this; }
  BigRational& operator*=(const BigRational& o) { v_ *= o.v_; return *this; }
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  BigRational abs() const { return BigRational(mpq_class(::abs(v_))); }
  BigRational inverse() const;
  BigRational pow(unsigned e) const;

  std::string str() const { return v_.get_str(); }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const BigRational& r);

}  // namespace cfield
