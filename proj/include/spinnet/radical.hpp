#pragma once

#include "spinnet/numeric.hpp"

#include <optional>
#include <string>

namespace spinnet {

// sign * sqrt(square), square a nonnegative rational. Unitary evaluations live here.
class Radical {
 public:
  Radical() = default;
  Radical(int sign, BigRational square);

  static Radical from_rational(const BigRational& q);
  static Radical sqrt_of(const BigRational& square) { return Radical(1, square); }

  int sign() const { return sign_; }
  const BigRational& square() const { return square_; }
  bool is_zero() const { return sign_ == 0; }

  Radical operator*(const Radical& o) const;
  Radical& operator*=(const Radical& o);
  Radical operator-() const;
  Radical inverse() const;
  Radical abs() const { return Radical(sign_ == 0 ? 0 : 1, square_); }

  bool operator==(const Radical& o) const { return sign_ == o.sign_ && square_ == o.square_; }

  // The value as a rational, when the square is a perfect rational square.
  std::optional<BigRational> as_rational() const;

  double to_double() const;
  double log_abs() const;

  // "sign*sqrt(p/q)", e.g. "-1*sqrt(1/36)"
  std::string to_string() const;

 private:
  int sign_ = 0;
  BigRational square_ = 0;
};

} // namespace spinnet
