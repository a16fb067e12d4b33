#pragma once

#include <gmpxx.h>

#include <string>

namespace spinnet {

using BigInt = mpz_class;
using BigRational = mpq_class;

// n! as an exact integer. Memoized, safe to call from several threads.
const BigInt& factorial(int n);
BigInt binomial(int n, int k);

// log(n!) in binary64.
double log_factorial(int n);

// "p/q", or just "p" when the denominator is one.
std::string to_string(const BigRational& q);
std::string to_string(const BigInt& z);

int sign(const BigRational& q);
double to_double(const BigRational& q);

// log|q| that stays finite for values outside binary64 range. q must be nonzero.
double log_abs(const BigRational& q);

// Fixed 15 significant digit rendering used by every text output.
std::string format_decimal(double x);

} // namespace spinnet
