#pragma once

#include "spinnet/cg_eval.hpp"
#include "spinnet/closed_forms.hpp"
#include "spinnet/network.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spinnet {

enum class SeriesMode { exact, float64 };

// One coefficient S(net, n*gamma). log_abs is -inf for a zero coefficient.
struct SeriesRow {
  int n = 0;
  std::optional<BigRational> exact;  // exact mode only
  double log_abs = 0;
  int sign = 1;
  bool sign_known = false;

  bool zero() const { return sign == 0; }
};

struct SeriesTable {
  SeriesMode mode = SeriesMode::exact;
  std::vector<SeriesRow> rows;  // n = 0, 1, 2, ...

  // "n,value,mode": exact rows as p/q, float rows as a 15 digit magnitude
  std::string to_csv() const;
};

struct SeriesOptions {
  SeriesMode mode = SeriesMode::exact;
  int threads = 1;          // rows are independent; assembly is by n
  EvalOptions eval = {};    // used for exact rows
};

// largest scaled decoration each mode accepts
inline constexpr int kExactSeriesMaxDecoration = 64;
inline constexpr int kFloatSeriesMaxDecoration = 160;

// Rows n = 0..nmax of S(net scaled by n). Throws domain_error for an
// inadmissible net, resource_error past the decoration guard or when a float
// contraction leaves binary64 range.
SeriesTable series_coefficients(const SpinNetwork& net, int nmax, const SeriesOptions& opt = {});

// float table from given log|a_n| values (n = 0, 1, ...); -inf marks a zero
SeriesTable series_from_logs(const std::vector<double>& log_abs);

struct RhoBound {
  ExactLog exact;
  double value = 0;
};

// sum over vertices of 1/2 log beta(a_v, b_v, c_v)
RhoBound rho_upper_bound(const SpinNetwork& net);

struct RhoOptions {
  int stride = 1;   // compare only n of the same residue, e.g. 2 for parity zeros
  int window = 0;   // tail length inspected; 0 = half of N
};

// Two ratio estimators over the tail of one stride class:
//  plain: log(|a_N|/|a_m|)/(N-m), m the previous nonzero row of the class;
//  hull: smallest such chord slope over the window, the last edge of the upper
//  concave hull of (n, log|a_n|).
// While the successive ratios in the window are monotone (the ratio test
// regime, e.g. rho^n n^-theta) log_rho_ratio is the plain ratio. When they
// oscillate, as for the tetrahedron, the plain ratio overshoots after every
// near-zero coefficient and log_rho_ratio is the hull slope instead.
struct RhoEstimate {
  double log_rho_ratio = 0;
  double log_rho_ratio_plain = 0;
  double log_rho_hull = 0;
  bool oscillating = false;
  double log_rho_root = 0;  // log|a_N| / N
  int n_used = 0;
  int stride = 1;
  std::optional<RhoBound> upper_bound;
};

// Throws domain_error when fewer than five nonzero rows with n >= 1 remain.
RhoEstimate estimate_rho(const SeriesTable& table, const RhoOptions& opt = {});
RhoEstimate estimate_rho(const SeriesTable& table, const SpinNetwork& net, const RhoOptions& opt = {});

// {"n_used":..,"log_rho_ratio":..,...} with fixed key order
std::string rho_json(const RhoEstimate& r);

struct GrowthReport {
  std::vector<int> n;
  std::vector<double> log_abs_u;   // zero rows left out
  double exponent = 0;             // least-squares slope of log|U| against log n
  double max_residual = 0;
  double linear_rate = 0;          // coefficient of n in a fit c + k log n + r n
  bool super_polynomial = false;   // linear_rate above kSuperPolynomialRate
};

inline constexpr double kSuperPolynomialRate = 0.05;

// fits log|U| given at the listed n; needs four points
GrowthReport fit_growth(std::vector<int> n, std::vector<double> log_abs_u);

// |U(net scaled by n)| for n = 1..nmax, exact, fitted against log n.
GrowthReport polynomial_growth_check(const SpinNetwork& net, int nmax, const EvalOptions& opt = {});

} // namespace spinnet
