#include "doctest.h"

#include "spinnet/asymptotics.hpp"
#include "spinnet/closed_forms.hpp"
#include "spinnet/error.hpp"
#include "spinnet/reduction.hpp"

#include <cmath>
#include <limits>

using namespace spinnet;

namespace {

std::vector<double> logs_of(int nmax, double (*f)(int)) {
  std::vector<double> v;
  for (int n = 0; n <= nmax; ++n) v.push_back(f(n));
  return v;
}

constexpr double kZero = -std::numeric_limits<double>::infinity();

} // namespace

TEST_CASE("ratio estimator on synthetic sequences") {
  auto geo = series_from_logs(logs_of(12, [](int n) { return n * std::log(5.0); }));
  auto e = estimate_rho(geo);
  CHECK(e.log_rho_ratio == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  CHECK(e.log_rho_ratio_plain == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  CHECK(e.log_rho_root == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  CHECK(e.n_used == 12);

  // 729^n n^-3: log(a_{n+1}/a_n) within 3/n, n = N-1 the largest usable index
  for (int nmax = 6; nmax <= 40; ++nmax) {
    auto t = series_from_logs(
        logs_of(nmax, [](int n) { return n == 0 ? 0.0 : n * std::log(729.0) - 3 * std::log(double(n)); }));
    auto r = estimate_rho(t);
    CHECK(std::abs(r.log_rho_ratio - std::log(729.0)) <= 3.0 / (nmax - 1));
    CHECK_FALSE(r.oscillating);
    CHECK(r.log_rho_ratio == r.log_rho_ratio_plain);
    // root estimator is biased low by the n^-3 factor
    CHECK(r.log_rho_root < std::log(729.0));
  }
}

TEST_CASE("zero rows and strides") {
  // parity zeros
  auto par = series_from_logs(logs_of(20, [](int n) { return n % 2 ? kZero : n * std::log(9.0); }));
  for (int s : {1, 2}) {
    auto e = estimate_rho(par, {s, 0});
    CHECK(e.log_rho_ratio == doctest::Approx(std::log(9.0)));
    CHECK(e.log_rho_ratio_plain == doctest::Approx(std::log(9.0)));
    CHECK(e.n_used == 20);
  }
  // trailing zero row: the last nonzero row is used
  auto tail = series_from_logs(logs_of(15, [](int n) { return n == 15 ? kZero : n * 2.0; }));
  CHECK(estimate_rho(tail).n_used == 14);
  CHECK(estimate_rho(tail).log_rho_ratio == doctest::Approx(2.0));

  CHECK_THROWS_AS(estimate_rho(series_from_logs(logs_of(4, [](int n) { return double(n); }))), domain_error);
  CHECK_THROWS_AS(estimate_rho(series_from_logs(logs_of(30, [](int) { return kZero; }))), domain_error);
  CHECK_THROWS_AS(estimate_rho(par, {0, 0}), domain_error);
}

TEST_CASE("hull estimator on an oscillating sequence") {
  // 27^n |cos(n w)| / n^1.5 with the tetrahedral angle: the plain ratio jumps
  // past log 27 right after a near-zero, the hull slope does not
  const double w = 6 * ponzano_regge_omega();
  double worst_plain = 0, worst_hull = -100;
  for (int nmax = 10; nmax <= 60; ++nmax) {
    std::vector<double> v{0.0};
    for (int n = 1; n <= nmax; ++n)
      v.push_back(n * std::log(27.0) + std::log(std::abs(std::cos(n * w - 0.3))) - 1.5 * std::log(double(n)));
    auto e = estimate_rho(series_from_logs(v));
    CHECK(e.oscillating);
    worst_plain = std::max(worst_plain, e.log_rho_ratio_plain - std::log(27.0));
    worst_hull = std::max(worst_hull, e.log_rho_ratio - std::log(27.0));
  }
  CHECK(worst_plain > 0.5);
  CHECK(worst_hull <= 0.0);
  CHECK(worst_hull > -0.1);  // and it still comes close at the peaks
}

TEST_CASE("series coefficients") {
  SUBCASE("theta rows match the closed form") {
    auto t = series_coefficients(make_theta(2, 2, 2), 10);
    REQUIRE(t.rows.size() == 11);
    CHECK(*t.rows[0].exact == 1);
    for (int n = 0; n <= 10; ++n) {
      CHECK(t.rows[n].n == n);
      CHECK(abs(*t.rows[n].exact) == theta_big(2 * n, 2 * n, 2 * n));
      CHECK(t.rows[n].log_abs == doctest::Approx(std::log(to_double(theta_big(2 * n, 2 * n, 2 * n)))));
    }
    CHECK(t.rows[1].sign_known);
    CHECK(*t.rows[1].exact == -24);  // Penrose sign kept; every half factorial is 1! here
  }
  SUBCASE("n = 0 row is one for loop-free connected nets") {
    for (const auto& net : {make_tetrahedron({2, 2, 2, 2, 2, 2}), make_drum(3, 2), make_k33(2)}) {
      auto t = series_coefficients(net, 0);
      CHECK(*t.rows[0].exact == 1);
    }
  }
  SUBCASE("float rows agree with exact rows") {
    for (const auto& net : {make_tetrahedron({2, 2, 2, 2, 2, 2}), make_drum(2, 2), make_theta(2, 4, 2)}) {
      auto ex = series_coefficients(net, 6);
      SeriesOptions fo;
      fo.mode = SeriesMode::float64;
      auto fl = series_coefficients(net, 6, fo);
      for (int n = 0; n <= 6; ++n) {
        CHECK(fl.rows[n].zero() == ex.rows[n].zero());
        if (!ex.rows[n].zero()) CHECK(fl.rows[n].log_abs == doctest::Approx(ex.rows[n].log_abs).epsilon(1e-10));
        CHECK_FALSE(fl.rows[n].exact.has_value());
      }
    }
  }
  SUBCASE("bridges with nonzero decoration give zero rows") {
    auto t = series_coefficients(make_dumbbell(2, 2, 2), 3);
    for (int n = 1; n <= 3; ++n) CHECK(t.rows[n].zero());
    SeriesOptions fo;
    fo.mode = SeriesMode::float64;
    auto f = series_coefficients(make_dumbbell(2, 2, 2), 3, fo);
    for (int n = 1; n <= 3; ++n) CHECK(f.rows[n].zero());
  }
  SUBCASE("thread count does not change the table") {
    auto net = make_drum(2, 2);
    SeriesOptions a, b;
    b.threads = 4;
    CHECK(series_coefficients(net, 8, a).to_csv() == series_coefficients(net, 8, b).to_csv());
    a.mode = b.mode = SeriesMode::float64;
    CHECK(series_coefficients(net, 20, a).to_csv() == series_coefficients(net, 20, b).to_csv());
  }
  SUBCASE("csv") {
    auto csv = series_coefficients(make_theta(2, 2, 2), 2).to_csv();
    CHECK(csv == "n,value,mode\n0,1,exact\n1,-24,exact\n2,630,exact\n");
  }
  SUBCASE("guards and domain") {
    CHECK_THROWS_AS(series_coefficients(make_theta(2, 2, 2), 40), resource_error);
    SeriesOptions fo;
    fo.mode = SeriesMode::float64;
    CHECK_THROWS_AS(series_coefficients(make_theta(2, 2, 2), 81, fo), resource_error);
    CHECK_THROWS_AS(series_coefficients(make_theta(1, 1, 1), 2), domain_error);
    CHECK_THROWS_AS(series_coefficients(make_theta(2, 2, 2), -1), domain_error);
  }
}

TEST_CASE("spectral radius upper bound") {
  CHECK(rho_upper_bound(make_theta(2, 2, 2)).exact.to_string() == "3*log(3)");
  CHECK(rho_upper_bound(make_tetrahedron({2, 2, 2, 2, 2, 2})).exact.to_string() == "6*log(3)");
  for (int s = 2; s <= 5; ++s) {
    auto b = rho_upper_bound(make_drum(s, 2));
    CHECK(b.exact.to_string() == std::to_string(3 * s) + "*log(3)");
    CHECK(b.value == doctest::Approx(3 * s * std::log(3.0)));
  }
  CHECK(rho_upper_bound(make_theta(2, 2, 0)).exact.to_string() == "0");
  // the bound holds row by row: |S_n| <= prod_v beta_v^(n/2)
  auto net = make_tetrahedron({2, 2, 2, 2, 2, 2});
  auto t = series_coefficients(net, 8);
  const double b = rho_upper_bound(net).value;
  for (const auto& r : t.rows)
    if (!r.zero()) CHECK(r.log_abs <= r.n * b + 1e-9);
}

TEST_CASE("drum(2) estimate near log 729") {
  SeriesOptions fo;
  fo.mode = SeriesMode::float64;
  auto net = make_drum(2, 2);
  auto e = estimate_rho(series_coefficients(net, 20, fo), net, {2, 0});
  CHECK(std::abs(e.log_rho_ratio - std::log(729.0)) <= 0.05 * std::log(729.0));
  CHECK(e.log_rho_ratio <= e.upper_bound->value + 0.05);
  CHECK(e.log_rho_root <= e.upper_bound->value + 0.05);
  CHECK(rho_json(e).find("\"upper_bound_exact\":\"6*log(3)\"") != std::string::npos);
}

TEST_CASE("polynomial growth") {
  SUBCASE("dumbbell: |U| = 2n+1") {
    auto g = polynomial_growth_check(make_dumbbell(2, 2, 0), 12);
    REQUIRE(g.n.size() == 12);
    for (std::size_t i = 0; i < g.n.size(); ++i)
      CHECK(g.log_abs_u[i] == doctest::Approx(std::log(2.0 * g.n[i] + 1)));
    CHECK(g.exponent == doctest::Approx(1.0).epsilon(0.1));
    CHECK_FALSE(g.super_polynomial);
  }
  SUBCASE("loop-free: |U| <= 1") {
    auto g = polynomial_growth_check(make_drum(2, 2), 8);
    for (double l : g.log_abs_u) CHECK(l <= 1e-12);
    CHECK_FALSE(g.super_polynomial);
  }
  SUBCASE("drum with a lollipop on a zero bridge") {
    auto net = attach_lollipop(make_drum(2, 2), 0, 2);
    auto plain = polynomial_growth_check(make_drum(2, 2), 8);
    auto g = polynomial_growth_check(net, 8);
    REQUIRE(g.n == plain.n);
    // oracle: product over the bridge-free pieces times the bridge factors
    for (std::size_t i = 0; i < g.n.size(); ++i) {
      auto red = bridge_reduce(scale_decoration(net, g.n[i]));
      double expect = red.factor.log_abs();
      for (const auto& c : red.components) expect += unitary_evaluate(c, {0, 1, false}).value.log_abs();
      CHECK(g.log_abs_u[i] == doctest::Approx(expect));
    }
    CHECK_FALSE(g.super_polynomial);
  }
  SUBCASE("the fit flags exponential growth") {
    std::vector<int> n;
    std::vector<double> l, p;
    for (int k = 1; k <= 12; ++k) {
      n.push_back(k);
      l.push_back(k * std::log(2.0) + 2 * std::log(double(k)));
      p.push_back(3 * std::log(double(k)));
    }
    CHECK(fit_growth(n, l).super_polynomial);
    auto poly = fit_growth(n, p);
    CHECK_FALSE(poly.super_polynomial);
    CHECK(poly.exponent == doctest::Approx(3.0));
    CHECK(poly.max_residual < 1e-9);
  }
  SUBCASE("all rows zero") {
    CHECK_THROWS_AS(polynomial_growth_check(make_dumbbell(2, 2, 2), 6), domain_error);
  }
}
