#include "spinnet/radical.hpp"
#include "spinnet/error.hpp"

#include <cmath>

namespace spinnet {

Radical::Radical(int sign, BigRational square) : square_(std::move(square)) {
  if (sgn(square_) < 0) throw domain_error("radical with negative square");
  sign_ = (sgn(square_) == 0) ? 0 : (sign > 0 ? 1 : (sign < 0 ? -1 : 0));
  if (sign_ == 0) square_ = 0;
}

Radical Radical::from_rational(const BigRational& q) { return Radical(sgn(q), q * q); }

Radical Radical::operator*(const Radical& o) const {
  return Radical(sign_ * o.sign_, square_ * o.square_);
}

Radical& Radical::operator*=(const Radical& o) { return *this = *this * o; }

Radical Radical::operator-() const { return Radical(-sign_, square_); }

Radical Radical::inverse() const {
  if (sign_ == 0) throw domain_error("inverse of zero radical");
  return Radical(sign_, 1 / square_);
}

std::optional<BigRational> Radical::as_rational() const {
  if (sign_ == 0) return BigRational(0);
  if (!mpz_perfect_square_p(square_.get_num_mpz_t()) || !mpz_perfect_square_p(square_.get_den_mpz_t()))
    return std::nullopt;
  BigInt n, d;
  mpz_sqrt(n.get_mpz_t(), square_.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), square_.get_den_mpz_t());
  BigRational r(n, d);
  r.canonicalize();
  return sign_ < 0 ? BigRational(-r) : r;
}

double Radical::log_abs() const { return 0.5 * spinnet::log_abs(square_); }

double Radical::to_double() const {
  if (sign_ == 0) return 0.0;
  return sign_ * std::exp(log_abs());
}

std::string Radical::to_string() const {
  return std::to_string(sign_) + "*sqrt(" + spinnet::to_string(square_) + ")";
}

} // namespace spinnet
