#include "spinnet/penrose.hpp"
#include "spinnet/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

namespace spinnet {

int VertexMatching::between(int x, int y) const {
  if (x == y) return 0;
  int z = 3 - x - y;
  return (sizes[x] + sizes[y] - sizes[z]) / 2;
}

VertexMatching vertex_matching(int a, int b, int c) {
  if (!admissible_triple(a, b, c))
    throw domain_error("vertex_matching: (" + std::to_string(a) + "," + std::to_string(b) + "," +
                       std::to_string(c) + ") is not admissible");
  VertexMatching m;
  m.sizes = {a, b, c};
  m.partner.assign(a + b + c, -1);
  const int start[3] = {0, a, a + b};
  for (int x = 0; x < 3; ++x) {
    int y = (x + 1) % 3;
    int n = m.between(x, y);
    // the last n slots of x pair, nested, with the first n slots of y
    for (int t = 0; t < n; ++t) {
      int s = start[x] + m.sizes[x] - 1 - t;
      int u = start[y] + t;
      m.partner[s] = u;
      m.partner[u] = s;
    }
  }
  return m;
}

std::uint64_t default_state_limit() {
  if (const char* env = std::getenv("SPINNET_STATE_LIMIT")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 10'000'000ull;
}

namespace {

constexpr std::uint64_t saturate = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > saturate / a) return saturate;
  return a * b;
}

std::uint64_t sat_factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r = sat_mul(r, static_cast<std::uint64_t>(i));
  return r;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > saturate - b ? saturate : a + b; }

// all permutations of size n in lexicographic order, with signs
struct PermTable {
  std::vector<std::vector<int>> perms;
  std::vector<int> signs;
};

const PermTable& perm_table(int n) {
  static std::mutex mu;
  static std::map<int, PermTable> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  PermTable t;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inv += p[i] > p[j];
    t.perms.push_back(p);
    t.signs.push_back(inv % 2 ? -1 : 1);
  } while (std::next_permutation(p.begin(), p.end()));
  return cache.emplace(n, std::move(t)).first->second;
}

// (+ count - count) per number of closed curves
struct Histogram {
  std::vector<std::int64_t> by_curves;
  void add(int curves, int sign) {
    if (curves >= static_cast<int>(by_curves.size())) by_curves.resize(curves + 1, 0);
    by_curves[curves] += sign;
  }
  void merge(const Histogram& o) {
    if (o.by_curves.size() > by_curves.size()) by_curves.resize(o.by_curves.size(), 0);
    for (std::size_t i = 0; i < o.by_curves.size(); ++i) by_curves[i] += o.by_curves[i];
  }
  BigInt value() const {
    BigInt total = 0, power = 1;
    for (std::size_t c = 0; c < by_curves.size(); ++c) {
      total += power * BigInt(static_cast<long>(by_curves[c]));
      power *= -2;
    }
    return total;
  }
};

struct Band {
  int from, to, gamma;  // slot offsets of the two ends
};

// One connected component with at least one vertex.
StateSumResult evaluate_component(const SpinNetwork& net, int threads) {
  const int nh = net.num_half_edges();
  std::vector<int> offset(nh + 1, 0);
  for (HalfEdgeId h = 0; h < nh; ++h) offset[h + 1] = offset[h] + net.half_decoration(h);
  const int nslots = offset[nh];

  std::vector<int> vm(nslots, -1);
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    const auto& r = net.rotation(v);
    auto d = net.vertex_decorations(v);
    auto m = vertex_matching(d[0], d[1], d[2]);
    const int local_start[3] = {0, d[0], d[0] + d[1]};
    auto global = [&](int s) {
      int b = s < d[0] ? 0 : (s < d[0] + d[1] ? 1 : 2);
      return offset[r[b]] + (s - local_start[b]);
    };
    for (int s = 0; s < d[0] + d[1] + d[2]; ++s) vm[global(s)] = global(m.partner[s]);
  }

  std::vector<Band> fixed, varying;
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    Band b{offset[net.halves(e)[0]], offset[net.halves(e)[1]], net.decoration(e)};
    (b.gamma >= 2 ? varying : fixed).push_back(b);
  }

  std::vector<int> base_bp(nslots, -1);
  auto connect = [](std::vector<int>& bp, const Band& b, const std::vector<int>& sigma) {
    // slot i at one end meets slot gamma-1-sigma(i) at the other
    for (int i = 0; i < b.gamma; ++i) {
      int j = b.to + (b.gamma - 1 - sigma[i]);
      bp[b.from + i] = j;
      bp[j] = b.from + i;
    }
  };
  for (const auto& b : fixed) connect(base_bp, b, std::vector<int>(b.gamma, 0));

  std::vector<const PermTable*> tables;
  for (const auto& b : varying) tables.push_back(&perm_table(b.gamma));

  auto count_curves = [&](const std::vector<int>& bp, std::vector<char>& seen) {
    std::fill(seen.begin(), seen.end(), 0);
    int curves = 0;
    for (int s = 0; s < nslots; ++s) {
      if (seen[s]) continue;
      ++curves;
      int x = s;
      do {
        seen[x] = 1;
        int y = vm[x];
        seen[y] = 1;
        x = bp[y];
      } while (x != s);
    }
    return curves;
  };

  const std::size_t first_count = tables.empty() ? 1 : tables[0]->perms.size();
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(first_count)));
  std::vector<Histogram> hist(workers);
  std::vector<std::uint64_t> visited(workers, 0);

  auto work = [&](int w) {
    std::vector<int> bp = base_bp;
    std::vector<char> seen(nslots);
    std::vector<std::size_t> idx(tables.size(), 0);
    for (std::size_t first = w; first < first_count; first += workers) {
      if (!tables.empty()) idx[0] = first;
      for (std::size_t k = 1; k < idx.size(); ++k) idx[k] = 0;
      for (std::size_t k = 0; k < tables.size(); ++k) connect(bp, varying[k], tables[k]->perms[idx[k]]);
      while (true) {
        int sgn = 1;
        for (std::size_t k = 0; k < tables.size(); ++k) sgn *= tables[k]->signs[idx[k]];
        hist[w].add(count_curves(bp, seen), sgn);
        ++visited[w];
        // odometer over edges 1..: last edge fastest keeps the order lexicographic
        bool wrapped = true;
        for (std::size_t k = idx.size(); k > 1;) {
          --k;
          if (++idx[k] < tables[k]->perms.size()) {
            connect(bp, varying[k], tables[k]->perms[idx[k]]);
            wrapped = false;
            break;
          }
          idx[k] = 0;
          connect(bp, varying[k], tables[k]->perms[0]);
        }
        if (wrapped) break;
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  Histogram total;
  StateSumResult res;
  for (int w = 0; w < workers; ++w) {
    total.merge(hist[w]);
    res.states_visited += visited[w];
  }
  res.value = total.value();
  return res;
}

BigInt trivial_closed_form(int a) {
  BigInt v = factorial(a + 1);
  return a % 2 ? BigInt(-v) : v;
}

std::uint64_t component_states(const SpinNetwork& comp) {
  std::uint64_t s = 1;
  for (EdgeId e = 0; e < comp.num_edges(); ++e) s = sat_mul(s, sat_factorial(comp.decoration(e)));
  return s;
}

} // namespace

BigInt penrose_trivial_state_sum(int a) {
  if (a < 0) throw domain_error("negative decoration");
  // a circle without vertices: strands follow sigma around the annulus,
  // so the closed curves are the cycles of sigma
  const auto& t = perm_table(a);
  Histogram h;
  std::vector<char> seen(a);
  for (std::size_t k = 0; k < t.perms.size(); ++k) {
    std::fill(seen.begin(), seen.end(), 0);
    int cycles = 0;
    for (int i = 0; i < a; ++i) {
      if (seen[i]) continue;
      ++cycles;
      for (int j = i; !seen[j]; j = t.perms[k][j]) seen[j] = 1;
    }
    h.add(cycles, t.signs[k]);
  }
  return h.value();
}

std::uint64_t penrose_state_count(const SpinNetwork& net, bool trivial_by_state_sum) {
  std::uint64_t total = 0;
  for (const auto& c : connected_components(net))
    total = sat_add(total, component_states(induced_subnetwork(net, c)));
  if (trivial_by_state_sum)
    for (int a : net.trivial_components()) total = sat_add(total, sat_factorial(a));
  return total;
}

StateSumResult penrose_evaluate(const SpinNetwork& net, const PenroseOptions& opt) {
  auto rep = check_admissible(net);
  if (!rep.admissible) throw domain_error("inadmissible: " + describe(rep.violations.front()));
  const std::uint64_t limit = opt.state_limit ? opt.state_limit : default_state_limit();
  const std::uint64_t states = penrose_state_count(net, opt.trivial_by_state_sum);
  if (states > limit)
    throw resource_error("Penrose state sum needs " +
                         (states == saturate ? std::string("more than 2^64") : std::to_string(states)) +
                         " states, limit is " + std::to_string(limit));
  StateSumResult res;
  res.value = 1;
  for (const auto& c : connected_components(net)) {
    auto part = evaluate_component(induced_subnetwork(net, c), opt.threads);
    res.value *= part.value;
    res.states_visited += part.states_visited;
  }
  for (int a : net.trivial_components()) {
    if (opt.trivial_by_state_sum) {
      res.value *= penrose_trivial_state_sum(a);
      res.states_visited += sat_factorial(a);
    } else {
      res.value *= trivial_closed_form(a);
    }
  }
  return res;
}

BigInt half_factorial_product(const SpinNetwork& net) {
  BigInt p = 1;
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    auto [a, b, c] = net.vertex_decorations(v);
    p *= factorial((a + b - c) / 2) * factorial((a + c - b) / 2) * factorial((b + c - a) / 2);
  }
  return p;
}

BigRational standard_from_penrose(const SpinNetwork& net, const BigInt& penrose) {
  BigRational s(penrose, half_factorial_product(net));
  s.canonicalize();
  return s;
}

} // namespace spinnet
