#include "spinnet/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <mutex>
#include <stdexcept>

namespace spinnet {

namespace {

std::mutex factorial_mutex;
std::deque<BigInt>& factorial_table() {
  static std::deque<BigInt> table{BigInt(1)};
  return table;
}

double log_abs_integer(const mpz_class& z) {
  // mpz_get_d_2exp keeps the exponent separate, so huge values don't overflow
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

} // namespace

const BigInt& factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  std::lock_guard lock(factorial_mutex);
  auto& table = factorial_table();
  while (static_cast<int>(table.size()) <= n) {
    BigInt next = table.back() * static_cast<unsigned long>(table.size());
    table.push_back(std::move(next));
  }
  // deque growth never moves existing elements
  return table[static_cast<std::size_t>(n)];
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

std::string to_string(const BigInt& z) { return z.get_str(); }

std::string to_string(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

int sign(const BigRational& q) { return sgn(q); }

double to_double(const BigRational& q) {
  if (sgn(q) == 0) return 0.0;
  double lg = log_abs(q);
  if (lg > 700.0 || lg < -700.0) return sgn(q) * std::exp(lg);
  return q.get_d();
}

double log_abs(const BigRational& q) {
  if (sgn(q) == 0) throw std::domain_error("log of zero");
  return log_abs_integer(q.get_num()) - log_abs_integer(q.get_den());
}

std::string format_decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

} // namespace spinnet
