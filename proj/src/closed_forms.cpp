#include "spinnet/closed_forms.hpp"
#include "spinnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace spinnet {

namespace {

void require_triad(int a, int b, int c, const char* what) {
  if (a < 0 || b < 0 || c < 0 || !admissible_triple(a, b, c))
    throw domain_error(std::string(what) + ": inadmissible triple (" + std::to_string(a) + "," +
                       std::to_string(b) + "," + std::to_string(c) + ")");
}

BigRational frac(const BigInt& num, const BigInt& den) {
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

// small integer factorization so that equal logs compare equal, e.g. log 27 == 3 log 3
void factor_into(std::vector<std::pair<BigRational, BigRational>>& out, const BigRational& coeff,
                 const BigInt& n, int sign) {
  if (n == 1) return;
  if (!n.fits_ulong_p() || n > BigInt("1000000000000")) {
    out.push_back({sign * coeff, BigRational(n)});
    return;
  }
  unsigned long m = n.get_ui();
  for (unsigned long p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) out.push_back({sign * e * coeff, BigRational(BigInt(p))});
  }
  if (m > 1) out.push_back({sign * coeff, BigRational(BigInt(m))});
}

} // namespace

ExactLog& ExactLog::add(const BigRational& coeff, const BigRational& arg) {
  if (sgn(arg) <= 0) throw domain_error("ExactLog: logarithm of a nonpositive number");
  if (sgn(coeff) == 0) return *this;
  std::vector<std::pair<BigRational, BigRational>> parts;
  factor_into(parts, coeff, arg.get_num(), 1);
  factor_into(parts, coeff, arg.get_den(), -1);
  for (auto& [c, x] : parts) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), x,
                               [](const auto& t, const BigRational& v) { return t.second < v; });
    if (it != terms_.end() && it->second == x) {
      it->first += c;
      if (sgn(it->first) == 0) terms_.erase(it);
    } else {
      terms_.insert(it, {c, x});
    }
  }
  return *this;
}

ExactLog& ExactLog::operator+=(const ExactLog& o) {
  for (const auto& [c, x] : o.terms_) add(c, x);
  return *this;
}

ExactLog ExactLog::scaled(const BigRational& c) const {
  ExactLog r;
  if (sgn(c) == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.first *= c;
  return r;
}

double ExactLog::value() const {
  double v = 0;
  for (const auto& [c, x] : terms_) v += to_double(c) * (std::log(x.get_num().get_d()) - std::log(x.get_den().get_d()));
  return v;
}

std::string ExactLog::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [c, x] : terms_) {
    BigRational m = c;
    if (first) {
      if (sgn(m) < 0) os << "-";
    } else {
      os << (sgn(m) < 0 ? " - " : " + ");
    }
    os << spinnet::to_string(BigRational(abs(m))) << "*log(" << spinnet::to_string(x) << ")";
    first = false;
  }
  return os.str();
}

BigRational theta_cg(int a, int b, int c) {
  require_triad(a, b, c, "theta_cg");
  const int s = (a + b + c) / 2;
  return frac(factorial(s + 1) * factorial(s - c) * factorial(s - b) * factorial(s - a),
              factorial(a) * factorial(b) * factorial(c));
}

CgNetwork theta_network(int a, int b, int c) {
  require_triad(a, b, c, "theta_network");
  // edge a: v1 -> v0 (halves 0, 1); b and c: v0 -> v1 (halves 2,3 and 4,5)
  std::vector<CgVertex> vs = {{2, 4, 1}, {3, 5, 0}};
  return CgNetwork(vs, {}, {{0, 1}, {2, 3}, {4, 5}}, {a, b, c});
}

BigRational theta_big(int a, int b, int c) {
  require_triad(a, b, c, "theta_big");
  const int s = (a + b + c) / 2;
  return frac(factorial(s + 1), factorial(s - a) * factorial(s - b) * factorial(s - c));
}

BetaValue beta(int a, int b, int c) {
  require_triad(a, b, c, "beta");
  const int s = (a + b + c) / 2;
  ExactLog l;
  // 0^0 = 1: zero parts drop out
  auto put = [&l](int coeff_sign, int x) {
    if (x > 0) l.add(BigRational(coeff_sign * x), BigRational(x));
  };
  put(1, s);
  put(-1, s - c);
  put(-1, s - b);
  put(-1, s - a);
  return {std::exp(l.value()), l};
}

BigRational trivial_eval(int a) {
  if (a < 0) throw domain_error("trivial_eval: negative decoration");
  BigRational v(factorial(a + 1));
  return a % 2 ? BigRational(-v) : v;
}

BigRational loop_cg(int a) {
  if (a < 0) throw domain_error("loop_cg: negative decoration");
  return a + 1;
}

Radical dumbbell_unitary(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) throw domain_error("dumbbell_unitary: negative decoration");
  if (c != 0) return Radical();
  return Radical((a + b) % 2 ? -1 : 1, BigRational((a + 1) * (b + 1)));
}

int sign_flip_factor(int a, int b, int c) {
  const long e = (static_cast<long>(a) * (a - 1) + static_cast<long>(b) * (b - 1) + static_cast<long>(c) * (c - 1)) / 2;
  return e % 2 ? -1 : 1;
}

BigRational gordan_coeff(int m, int n, int k) {
  if (m < 0 || n < 0 || k < 0 || k > std::min(m, n)) throw domain_error("gordan_coeff: k out of range");
  return frac(binomial(m, k) * binomial(n, k), binomial(m + n - k + 1, k));
}

BigRational clebsch_coeff(int m, int n, int k) {
  if (m < 0 || n < 0 || k < 0 || k > std::min(m, n)) throw domain_error("clebsch_coeff: k out of range");
  return frac(factorial(k) * factorial(m + n - k + 1) * factorial(m - k) * factorial(n - k),
              factorial(m) * factorial(n) * factorial(m + n - 2 * k + 1));
}

Radical iota_norm(int m, int n, int k) { return Radical(1, 1 / clebsch_coeff(m, n, k)); }

namespace {

void require_sixj(const SixJInput& in) {
  const auto [a, b, c, d, e, f] = in;
  require_triad(a, b, c, "sixj");
  require_triad(a, e, f, "sixj");
  require_triad(d, b, f, "sixj");
  require_triad(d, e, c, "sixj");
}

// Orientation: a v0->v1, b v0->v2, c v3->v0, d v3->v2, e v1->v3, f v2->v1, so the
// odd legs are c (v0), e (v1), f (v2), e (v3). Edge k uses halves 2k (tail), 2k+1.
// Gate orders v0 (b,a), v1 (f,a), v2 (d,b), v3 (d,c). With these and the sign
// (-1)^((a+b+d+e)/2) the result is the Racah-formula 6-j symbol, sign included.
std::vector<CgVertex> sixj_vertices() { return {{2, 0, 5}, {11, 1, 8}, {7, 3, 10}, {6, 4, 9}}; }

} // namespace

CgNetwork sixj_closed_network(const SixJInput& in) {
  require_sixj(in);
  std::vector<std::array<HalfEdgeId, 2>> edges;
  for (int k = 0; k < 6; ++k) edges.push_back({2 * k, 2 * k + 1});
  return CgNetwork(sixj_vertices(), {}, edges, {in.begin(), in.end()});
}

CgNetwork sixj_cut_network(const SixJInput& in) {
  require_sixj(in);
  // e is cut: its tail half 8 now runs to an exit leg (half 12), an entry leg
  // (half 13) feeds its head half 9
  std::vector<std::array<HalfEdgeId, 2>> edges = {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {13, 9}, {10, 11}, {8, 12}};
  std::vector<int> dec(in.begin(), in.end());
  dec.push_back(in[4]);
  return CgNetwork(sixj_vertices(), {{13, LegKind::entry}, {12, LegKind::exit}}, edges, dec);
}

Radical sixj(const SixJInput& in) {
  const auto [a, b, c, d, e, f] = in;
  CgNetwork cut = sixj_cut_network(in);
  BigRational alpha = schur_constant(cut);
  if (sgn(alpha) == 0) return Radical();
  Radical r = Radical::from_rational(alpha) * pi_iota_factor(cut);
  const int sign = ((a + b + d + e) / 2) % 2 ? -1 : 1;
  return Radical(sign * r.sign(), r.square() / BigRational((c + 1) * (f + 1)));
}

double ponzano_regge_omega() { return std::acos(1.0 / 3.0); }

double ponzano_regge(int n) {
  if (n < 1) throw domain_error("ponzano_regge: n must be positive");
  const double w = ponzano_regge_omega();
  return -std::cos(6.0 * (n + 0.5) * w - std::numbers::pi / 4) /
         (std::pow(2.0, 0.25) * std::sqrt(std::numbers::pi) * std::pow(static_cast<double>(n), 1.5));
}

BigRational drum_bound(const std::vector<int>& a) {
  if (a.empty()) throw domain_error("drum_bound: empty decoration list");
  int lo = *std::min_element(a.begin(), a.end());
  if (lo < 0) throw domain_error("drum_bound: negative decoration");
  BigInt den = 1;
  for (int x : a) den *= x + 1;
  return frac(BigInt((lo + 1) * (lo + 1)), den);
}

} // namespace spinnet
