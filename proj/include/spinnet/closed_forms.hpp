#pragma once

#include "spinnet/cg_eval.hpp"
#include "spinnet/numeric.hpp"
#include "spinnet/radical.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace spinnet {

// sum of coefficient * log(argument), kept symbolic
class ExactLog {
 public:
  ExactLog() = default;
  ExactLog& add(const BigRational& coeff, const BigRational& arg);
  ExactLog& operator+=(const ExactLog& o);
  ExactLog scaled(const BigRational& c) const;
  const std::vector<std::pair<BigRational, BigRational>>& terms() const { return terms_; }
  double value() const;
  std::string to_string() const;  // e.g. "3/2*log(3) - 1*log(2)"
  bool operator==(const ExactLog& o) const { return terms_ == o.terms_; }

 private:
  std::vector<std::pair<BigRational, BigRational>> terms_;  // sorted by argument
};

struct BetaValue {
  double value;
  ExactLog log;
};

BigRational theta_cg(int a, int b, int c);
// Theta as a CG network: odd leg a, gate legs b then c at both vertices, so the
// epsilon strands pair up with a positive sign and cg_evaluate gives theta_cg.
CgNetwork theta_network(int a, int b, int c);
BigRational theta_big(int a, int b, int c);
BetaValue beta(int a, int b, int c);

BigRational trivial_eval(int a);
BigRational loop_cg(int a);
Radical dumbbell_unitary(int a, int b, int c);
int sign_flip_factor(int a, int b, int c);

BigRational gordan_coeff(int m, int n, int k);
BigRational clebsch_coeff(int m, int n, int k);
Radical iota_norm(int m, int n, int k);

// (a, b, c, d, e, f) with triads (a,b,c), (a,e,f), (d,b,f), (d,e,c)
using SixJInput = std::array<int, 6>;

// The tetrahedron cut at e with the orientation and gates used for the 6-j
// symbol: a one-entry one-exit network on H_e.
CgNetwork sixj_cut_network(const SixJInput& in);
// Same tetrahedron, closed.
CgNetwork sixj_closed_network(const SixJInput& in);

// Wigner 6-j symbol {a/2 b/2 c/2; d/2 e/2 f/2} as
// (-1)^((a+b+d+e)/2) / sqrt((c+1)(f+1)) * alpha, alpha the Schur constant of the
// pi/iota-normalized cut tetrahedron. Throws domain_error on an inadmissible triad.
Radical sixj(const SixJInput& in);

double ponzano_regge_omega();
double ponzano_regge(int n);

BigRational drum_bound(const std::vector<int>& a);

} // namespace spinnet
