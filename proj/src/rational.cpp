#include "cfield/rational.hpp"

#include <ostream>

namespace cfield {

BigRational::BigRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DivisionByZero();
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

BigRational BigRational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return BigRational(BigInt(text));
    return BigRational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw AlgebraError("malformed rational: '" + text + "'");
  }
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw DivisionByZero();
  v_ /= o.v_;
  return *this;
}

BigRational BigRational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return BigRational(mpq_class(1 / v_));
}

BigRational BigRational::pow(unsigned e) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), e);
  return BigRational(n, d);
}

std::ostream& operator<<(std::ostream& os, const BigRational& r) { return os << r.str(); }

}  // namespace cfield
