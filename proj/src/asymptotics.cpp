#include "spinnet/asymptotics.hpp"
#include "spinnet/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

namespace spinnet {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

int max_decoration(const SpinNetwork& net) {
  int m = 0;
  for (int g : net.decorations()) m = std::max(m, g);
  for (int a : net.trivial_components()) m = std::max(m, a);
  return m;
}

void require_admissible(const SpinNetwork& net) {
  auto rep = check_admissible(net);
  if (!rep.admissible) throw domain_error("inadmissible: " + describe(rep.violations.front()));
}

SeriesRow exact_row(const SpinNetwork& net, int n, const EvalOptions& eval) {
  SeriesRow r;
  r.n = n;
  StandardValue s = standard_evaluate(scale_decoration(net, n), eval);
  r.exact = s.value;
  r.sign = sgn(s.value);
  r.sign_known = s.sign_known;
  r.log_abs = r.sign == 0 ? kNegInf : log_abs(s.value);
  if (!r.sign_known && r.sign != 0) r.sign = 1;  // magnitude only
  return r;
}

// log|S| = log|CG| + sum log gamma! - sum over vertices of log of the half factorials
SeriesRow float_row(const SpinNetwork& net, int n) {
  SeriesRow r;
  r.n = n;
  SpinNetwork scaled = scale_decoration(net, n);
  for (EdgeId b : find_bridges(scaled))
    if (scaled.decoration(b) != 0) {
      r.sign = 0;
      r.sign_known = true;
      r.log_abs = kNegInf;
      return r;
    }
  double v = cg_evaluate_float(CgNetwork::canonical(scaled));
  if (!std::isfinite(v)) throw resource_error("series: binary64 contraction overflowed at n = " + std::to_string(n));
  if (v == 0) {
    r.sign = 0;
    r.log_abs = kNegInf;
    return r;
  }
  double l = std::log(std::abs(v));
  for (int g : scaled.decorations()) l += log_factorial(g);
  for (int a : scaled.trivial_components()) l += log_factorial(a);
  for (VertexId x = 0; x < scaled.num_vertices(); ++x) {
    auto [a, b, c] = scaled.vertex_decorations(x);
    l -= log_factorial((a + b - c) / 2) + log_factorial((a + c - b) / 2) + log_factorial((b + c - a) / 2);
  }
  r.log_abs = l;
  r.sign = 1;
  return r;
}

} // namespace

std::string SeriesTable::to_csv() const {
  std::ostringstream os;
  os << "n,value,mode\n";
  for (const auto& r : rows) {
    os << r.n << ',';
    if (r.exact) {
      os << to_string(*r.exact) << ",exact";
    } else {
      if (r.zero())
        os << '0';
      else if (r.log_abs < 700)
        os << format_decimal(std::exp(r.log_abs));
      else
        os << "exp(" << format_decimal(r.log_abs) << ')';
      os << ",float";
    }
    os << '\n';
  }
  return os.str();
}

SeriesTable series_coefficients(const SpinNetwork& net, int nmax, const SeriesOptions& opt) {
  if (nmax < 0) throw domain_error("series: nmax must be nonnegative");
  require_admissible(net);
  const bool exact = opt.mode == SeriesMode::exact;
  const int limit = exact ? kExactSeriesMaxDecoration : kFloatSeriesMaxDecoration;
  if (static_cast<long>(max_decoration(net)) * nmax > limit)
    throw resource_error("series: scaled decoration " + std::to_string(max_decoration(net) * nmax) +
                         " exceeds the " + (exact ? "exact" : "float") + " mode guard " + std::to_string(limit));

  SeriesTable t;
  t.mode = opt.mode;
  t.rows.resize(nmax + 1);
  std::vector<std::exception_ptr> errors(nmax + 1);
  EvalOptions eval = opt.eval;
  const int threads = std::clamp(opt.threads, 1, nmax + 1);
  if (threads > 1) eval.threads = 1;

  // largest n first so the slow rows start early
  std::atomic<int> next{nmax};
  auto work = [&] {
    for (int n; (n = next.fetch_sub(1)) >= 0;) {
      try {
        t.rows[n] = exact ? exact_row(net, n, eval) : float_row(net, n);
      } catch (...) {
        errors[n] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return t;
}

SeriesTable series_from_logs(const std::vector<double>& log_abs) {
  SeriesTable t;
  t.mode = SeriesMode::float64;
  for (std::size_t n = 0; n < log_abs.size(); ++n) {
    SeriesRow r;
    r.n = static_cast<int>(n);
    r.log_abs = log_abs[n];
    r.sign = std::isinf(log_abs[n]) && log_abs[n] < 0 ? 0 : 1;
    t.rows.push_back(r);
  }
  return t;
}

RhoBound rho_upper_bound(const SpinNetwork& net) {
  require_admissible(net);
  RhoBound b;
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    auto [x, y, z] = net.vertex_decorations(v);
    b.exact += beta(x, y, z).log.scaled(BigRational(1, 2));
  }
  b.value = b.exact.value();
  return b;
}

RhoEstimate estimate_rho(const SeriesTable& table, const RhoOptions& opt) {
  if (opt.stride < 1) throw domain_error("estimate_rho: stride must be positive");
  if (opt.window < 0) throw domain_error("estimate_rho: negative window");
  std::vector<const SeriesRow*> nz;
  for (const auto& r : table.rows)
    if (r.n >= 1 && !r.zero()) nz.push_back(&r);
  if (nz.size() < 5) throw domain_error("estimate_rho: fewer than five nonzero rows");

  const SeriesRow& last = *nz.back();
  const int big_n = last.n;
  const int window = opt.window ? opt.window : std::max(2 * opt.stride, big_n / 2);

  // the stride class of N inside the window, newest first
  std::vector<const SeriesRow*> cls;
  for (auto it = nz.rbegin(); it != nz.rend(); ++it) {
    const int gap = big_n - (*it)->n;
    if (gap % opt.stride) continue;
    if (gap > window && cls.size() >= 2) break;
    cls.push_back(*it);
  }
  if (cls.size() < 2) throw domain_error("estimate_rho: no earlier nonzero row in the stride class");

  RhoEstimate e;
  e.n_used = big_n;
  e.stride = opt.stride;
  e.log_rho_root = last.log_abs / big_n;
  auto slope = [](const SeriesRow* hi, const SeriesRow* lo) { return (hi->log_abs - lo->log_abs) / (hi->n - lo->n); };
  e.log_rho_ratio_plain = slope(cls[0], cls[1]);

  // successive ratios inside the window, oldest last
  std::vector<double> ratios;
  for (std::size_t i = 0; i + 1 < cls.size(); ++i) ratios.push_back(slope(cls[i], cls[i + 1]));
  bool up = true, down = true;
  for (std::size_t i = 0; i + 1 < ratios.size(); ++i) {
    const double tol = 1e-9 * std::max(1.0, std::abs(ratios[i]));
    up = up && ratios[i] >= ratios[i + 1] - tol;
    down = down && ratios[i] <= ratios[i + 1] + tol;
  }
  e.oscillating = !up && !down;
  e.log_rho_hull = e.log_rho_ratio_plain;
  for (std::size_t i = 1; i < cls.size(); ++i) e.log_rho_hull = std::min(e.log_rho_hull, slope(cls[0], cls[i]));
  e.log_rho_ratio = e.oscillating ? e.log_rho_hull : e.log_rho_ratio_plain;
  return e;
}

RhoEstimate estimate_rho(const SeriesTable& table, const SpinNetwork& net, const RhoOptions& opt) {
  RhoEstimate e = estimate_rho(table, opt);
  e.upper_bound = rho_upper_bound(net);
  return e;
}

std::string rho_json(const RhoEstimate& r) {
  std::ostringstream os;
  os << "{\"n_used\":" << r.n_used << ",\"stride\":" << r.stride
     << ",\"log_rho_ratio\":" << format_decimal(r.log_rho_ratio)
     << ",\"oscillating\":" << (r.oscillating ? "true" : "false")
     << ",\"log_rho_ratio_plain\":" << format_decimal(r.log_rho_ratio_plain)
     << ",\"log_rho_hull\":" << format_decimal(r.log_rho_hull)
     << ",\"log_rho_root\":" << format_decimal(r.log_rho_root);
  if (r.upper_bound)
    os << ",\"upper_bound_log\":" << format_decimal(r.upper_bound->value) << ",\"upper_bound_exact\":\""
       << r.upper_bound->exact.to_string() << '"';
  os << '}';
  return os.str();
}

namespace {

// least squares for y ~ X beta with a handful of columns, by normal equations
std::vector<double> least_squares(const std::vector<std::vector<double>>& cols, const std::vector<double>& y) {
  const std::size_t k = cols.size(), m = y.size();
  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t r = 0; r < m; ++r) a[i][j] += cols[i][r] * cols[j][r];
    for (std::size_t r = 0; r < m; ++r) a[i][k] += cols[i][r] * y[r];
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    std::swap(a[c], a[p]);
    if (std::abs(a[c][c]) < 1e-12) throw domain_error("growth fit: degenerate sample");
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= k; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<double> beta(k);
  for (std::size_t i = 0; i < k; ++i) beta[i] = a[i][k] / a[i][i];
  return beta;
}

} // namespace

GrowthReport fit_growth(std::vector<int> n, std::vector<double> log_abs_u) {
  GrowthReport g;
  g.n = std::move(n);
  g.log_abs_u = std::move(log_abs_u);
  if (g.n.size() < 4) throw domain_error("growth check: fewer than four points");

  std::vector<double> one(g.n.size(), 1.0), logn, lin;
  for (int k : g.n) {
    logn.push_back(std::log(static_cast<double>(k)));
    lin.push_back(k);
  }
  auto b2 = least_squares({one, logn}, g.log_abs_u);
  g.exponent = b2[1];
  for (std::size_t i = 0; i < g.n.size(); ++i)
    g.max_residual = std::max(g.max_residual, std::abs(g.log_abs_u[i] - b2[0] - b2[1] * logn[i]));
  auto b3 = least_squares({one, logn, lin}, g.log_abs_u);
  g.linear_rate = b3[2];
  g.super_polynomial = g.linear_rate > kSuperPolynomialRate;
  return g;
}

GrowthReport polynomial_growth_check(const SpinNetwork& net, int nmax, const EvalOptions& opt) {
  require_admissible(net);
  if (static_cast<long>(max_decoration(net)) * nmax > kExactSeriesMaxDecoration)
    throw resource_error("growth check: scaled decoration exceeds the exact mode guard");
  EvalOptions eval = opt;
  eval.penrose_sign = false;  // magnitudes only
  GrowthReport g;
  for (int n = 1; n <= nmax; ++n) {
    UnitaryValue u = unitary_evaluate(scale_decoration(net, n), eval);
    if (u.value.is_zero()) continue;
    g.n.push_back(n);
    g.log_abs_u.push_back(u.value.log_abs());
  }
  return fit_growth(std::move(g.n), std::move(g.log_abs_u));
}

} // namespace spinnet
