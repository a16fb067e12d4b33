#include "spinnet/symtensor.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <tuple>

namespace spinnet {

FloatSymTensor to_float(const SymTensor& t) {
  FloatSymTensor f(t.axes());
  for (const auto& [k, v] : t.data()) f.set_key(k, to_double(v));
  return f;
}

namespace {

SymTensor build_vertex_tensor(int m, int n, int p) {
  const int k = (m + n - p) / 2;
  SymTensor t({{0, m}, {1, n}, {2, p}});
  // a strand between two legs carries one index; deltas copy it, epsilons swap 1<->2
  // with a sign. Counting 2s: e of the k epsilons put their 2 on the first gate leg.
  for (int pa = 0; pa <= m; ++pa)
    for (int pb = 0; pb <= n; ++pb) {
      const int pc = pa + pb - k;
      if (pc < 0 || pc > p) continue;
      BigInt s = 0;
      for (int e = 0; e <= k; ++e) {
        BigInt term = binomial(k, e) * binomial(m - k, pa - e) * binomial(n - k, pb - k + e);
        if (e % 2)
          s -= term;
        else
          s += term;
      }
      if (s == 0) continue;
      BigRational v(s, binomial(m, pa) * binomial(n, pb) * binomial(p, pc));
      v.canonicalize();
      t.set({pa, pb, pc}, v);
    }
  return t;
}

} // namespace

const SymTensor& vertex_tensor(int m, int n, int p, bool gate_order) {
  if (m < 0 || n < 0 || p < 0 || (m + n + p) % 2 != 0 || std::abs(m - n) > p || p > m + n)
    throw domain_error("vertex_tensor: (" + std::to_string(m) + "," + std::to_string(n) + "," +
                       std::to_string(p) + ") is not admissible");
  static std::mutex mu;
  static std::map<std::tuple<int, int, int, bool>, SymTensor> cache;
  std::lock_guard lock(mu);
  auto key = std::make_tuple(m, n, p, gate_order);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  SymTensor t = build_vertex_tensor(m, n, p);
  if (!gate_order && ((m + n - p) / 2) % 2 == 1) t = t.scaled(BigRational(-1));
  return cache.emplace(key, std::move(t)).first->second;
}

SymTensor identity_tensor(int a, int label_in, int label_out) {
  SymTensor t({{label_in, a}, {label_out, a}});
  for (int q = 0; q <= a; ++q) t.set({q, q}, BigRational(1) / BigRational(binomial(a, q)));
  return t;
}

// --- contraction ---------------------------------------------------------

namespace {

template <class Scalar>
std::vector<Scalar> binomial_weights(int a) {
  std::vector<Scalar> w;
  for (int q = 0; q <= a; ++q) {
    if constexpr (std::is_same_v<Scalar, double>)
      w.push_back(binomial(a, q).get_d());
    else
      w.push_back(Scalar(binomial(a, q)));
  }
  return w;
}

struct SharedLeg {
  int pos_a, pos_b, weight;
};

template <class Scalar>
BasicSymTensor<Scalar> merge_pair(const BasicSymTensor<Scalar>& A, const BasicSymTensor<Scalar>& B,
                                  const std::vector<SharedLeg>& shared) {
  std::vector<char> a_shared(A.rank(), 0), b_shared(B.rank(), 0);
  for (const auto& s : shared) {
    a_shared[s.pos_a] = 1;
    b_shared[s.pos_b] = 1;
  }
  std::vector<Axis> axes;
  std::vector<int> a_open, b_open;
  for (int i = 0; i < A.rank(); ++i)
    if (!a_shared[i]) {
      a_open.push_back(i);
      axes.push_back(A.axes()[i]);
    }
  for (int i = 0; i < B.rank(); ++i)
    if (!b_shared[i]) {
      b_open.push_back(i);
      axes.push_back(B.axes()[i]);
    }
  BasicSymTensor<Scalar> R(axes);

  std::vector<std::vector<Scalar>> weights;
  std::vector<int> sk_shift;
  int bits = 0;
  for (const auto& s : shared) {
    weights.push_back(binomial_weights<Scalar>(s.weight));
    sk_shift.push_back(bits);
    bits += 8;
    if (bits > 128) throw resource_error("too many legs contracted in one merge");
    if (s.weight > 255) throw resource_error("leg weight too large for contraction key");
  }

  struct Partner {
    TensorKey part;
    const Scalar* value;
  };
  std::unordered_map<TensorKey, std::vector<Partner>, TensorKeyHash> by_shared;
  for (const auto& [k, v] : B.data()) {
    TensorKey sk = 0;
    for (std::size_t i = 0; i < shared.size(); ++i)
      sk |= static_cast<TensorKey>(B.index(k, shared[i].pos_b)) << sk_shift[i];
    TensorKey part = 0;
    for (std::size_t j = 0; j < b_open.size(); ++j)
      part |= static_cast<TensorKey>(B.index(k, b_open[j])) << R.shift(static_cast<int>(a_open.size() + j));
    by_shared[sk].push_back({part, &v});
  }

  Scalar t;
  for (const auto& [k, v] : A.data()) {
    TensorKey sk = 0;
    for (std::size_t i = 0; i < shared.size(); ++i)
      sk |= static_cast<TensorKey>(A.index(k, shared[i].pos_a)) << sk_shift[i];
    auto it = by_shared.find(sk);
    if (it == by_shared.end()) continue;
    Scalar w = v;
    for (std::size_t i = 0; i < shared.size(); ++i) w *= weights[i][A.index(k, shared[i].pos_a)];
    TensorKey part = 0;
    for (std::size_t j = 0; j < a_open.size(); ++j)
      part |= static_cast<TensorKey>(A.index(k, a_open[j])) << R.shift(static_cast<int>(j));
    for (const auto& p : it->second) {
      t = w * *p.value;
      R.add_key(part | p.part, t);
    }
  }
  R.prune();
  return R;
}

template <class Scalar>
BasicSymTensor<Scalar> trace_pair(const BasicSymTensor<Scalar>& A, int x, int y, int weight) {
  std::vector<Axis> axes;
  std::vector<int> keep;
  for (int i = 0; i < A.rank(); ++i)
    if (i != x && i != y) {
      keep.push_back(i);
      axes.push_back(A.axes()[i]);
    }
  BasicSymTensor<Scalar> R(axes);
  auto w = binomial_weights<Scalar>(weight);
  for (const auto& [k, v] : A.data()) {
    int q = A.index(k, x);
    if (q != A.index(k, y)) continue;
    TensorKey nk = 0;
    for (std::size_t j = 0; j < keep.size(); ++j)
      nk |= static_cast<TensorKey>(A.index(k, keep[j])) << R.shift(static_cast<int>(j));
    R.add_key(nk, v * w[q]);
  }
  R.prune();
  return R;
}

// labels paired by edges between two label sets
double merged_dense(const std::vector<Axis>& a, const std::vector<Axis>& b,
                    const std::map<int, int>& partner) {
  auto in = [](const std::vector<Axis>& v, int l) {
    for (const auto& x : v)
      if (x.label == l) return true;
    return false;
  };
  double s = 1;
  for (const auto& x : a) {
    auto it = partner.find(x.label);
    if (it == partner.end() || !in(b, it->second)) s *= x.weight + 1;
  }
  for (const auto& x : b) {
    auto it = partner.find(x.label);
    if (it == partner.end() || !in(a, it->second)) s *= x.weight + 1;
  }
  return s;
}

std::vector<Axis> merged_axes(const std::vector<Axis>& a, const std::vector<Axis>& b,
                              const std::map<int, int>& partner) {
  std::vector<Axis> out;
  auto in = [](const std::vector<Axis>& v, int l) {
    for (const auto& x : v)
      if (x.label == l) return true;
    return false;
  };
  for (const auto& x : a) {
    auto it = partner.find(x.label);
    if (it == partner.end() || !in(b, it->second)) out.push_back(x);
  }
  for (const auto& x : b) {
    auto it = partner.find(x.label);
    if (it == partner.end() || !in(a, it->second)) out.push_back(x);
  }
  return out;
}

std::map<int, int> partner_map(const std::vector<ContractionEdge>& edges) {
  std::map<int, int> p;
  for (const auto& e : edges) {
    if (!p.emplace(e.label_a, e.label_b).second || !p.emplace(e.label_b, e.label_a).second)
      throw domain_error("a leg label appears in two contraction edges");
  }
  return p;
}

// shapes with self-contracted legs removed, as the contraction sees them
std::vector<std::vector<Axis>> after_traces(const std::vector<std::vector<Axis>>& shapes,
                                            const std::map<int, int>& partner) {
  std::vector<std::vector<Axis>> out = shapes;
  for (auto& s : out) {
    std::vector<Axis> kept;
    for (const auto& x : s) {
      auto it = partner.find(x.label);
      bool self = false;
      if (it != partner.end())
        for (const auto& y : s) self |= y.label == it->second;
      if (!self) kept.push_back(x);
    }
    s = kept;
  }
  return out;
}

} // namespace

ContractionPlan plan_contraction(const std::vector<std::vector<Axis>>& shapes,
                                 const std::vector<ContractionEdge>& edges) {
  auto partner = partner_map(edges);
  std::vector<std::optional<std::vector<Axis>>> live;
  for (auto& s : after_traces(shapes, partner)) live.emplace_back(std::move(s));
  std::map<int, int> owner;
  for (std::size_t i = 0; i < live.size(); ++i)
    for (const auto& x : *live[i]) owner[x.label] = static_cast<int>(i);

  ContractionPlan plan;
  while (true) {
    int alive = 0;
    for (const auto& l : live) alive += l.has_value();
    if (alive <= 1) break;
    int bi = -1, bj = -1;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : edges) {  // edge order is the tie-break
      auto ia = owner.find(e.label_a), ib = owner.find(e.label_b);
      if (ia == owner.end() || ib == owner.end() || ia->second == ib->second) continue;
      int i = std::min(ia->second, ib->second), j = std::max(ia->second, ib->second);
      if (!live[i] || !live[j]) continue;  // already contracted
      double c = merged_dense(*live[i], *live[j], partner);
      if (c < best) {
        best = c;
        bi = i;
        bj = j;
      }
    }
    if (bi < 0) {  // nothing connected left: outer products, lowest slots first
      for (std::size_t i = 0; i < live.size() && bj < 0; ++i)
        if (live[i]) (bi < 0 ? bi : bj) = static_cast<int>(i);
    }
    auto merged = merged_axes(*live[bi], *live[bj], partner);
    live[bi].reset();
    live[bj].reset();
    int slot = static_cast<int>(live.size());
    for (const auto& x : merged) owner[x.label] = slot;
    live.emplace_back(std::move(merged));
    plan.merges.push_back({bi, bj});
  }
  return plan;
}

double plan_cost(const std::vector<std::vector<Axis>>& shapes,
                 const std::vector<ContractionEdge>& edges, const ContractionPlan& plan) {
  auto partner = partner_map(edges);
  auto live = after_traces(shapes, partner);
  double worst = 0;
  for (auto [i, j] : plan.merges) {
    auto m = merged_axes(live.at(i), live.at(j), partner);
    double d = 1;
    for (const auto& x : m) d *= x.weight + 1;
    worst = std::max(worst, d);
    live.push_back(std::move(m));
  }
  return worst;
}

template <class Scalar>
BasicSymTensor<Scalar> contract(std::vector<BasicSymTensor<Scalar>> tensors,
                                const std::vector<ContractionEdge>& edges,
                                const ContractionPlan* plan, ContractionStats* stats) {
  if (tensors.empty()) return BasicSymTensor<Scalar>::constant(Scalar(1));
  auto partner = partner_map(edges);
  std::map<int, int> weight_of;
  for (const auto& e : edges) weight_of[e.label_a] = weight_of[e.label_b] = e.weight;
  std::map<int, int> seen;
  for (const auto& t : tensors)
    for (const auto& x : t.axes()) {
      if (seen[x.label]++) throw domain_error("duplicate leg label in contraction");
      auto w = weight_of.find(x.label);
      if (w != weight_of.end() && w->second != x.weight)
        throw domain_error("contraction edge weight does not match its leg");
    }
  for (const auto& [l, w] : weight_of)
    if (!seen.count(l)) throw domain_error("contraction edge names a missing leg");

  // self-contractions first
  for (auto& t : tensors) {
    bool again = true;
    while (again) {
      again = false;
      for (int x = 0; x < t.rank() && !again; ++x) {
        auto it = partner.find(t.axes()[x].label);
        if (it == partner.end()) continue;
        int y = t.position(it->second);
        if (y < 0) continue;
        t = trace_pair(t, x, y, t.axes()[x].weight);
        again = true;
      }
    }
  }

  ContractionPlan greedy;
  if (!plan) {
    std::vector<std::vector<Axis>> shapes;
    for (const auto& t : tensors) shapes.push_back(t.axes());
    greedy = plan_contraction(shapes, edges);
    plan = &greedy;
  }

  std::vector<std::optional<BasicSymTensor<Scalar>>> live;
  for (auto& t : tensors) live.emplace_back(std::move(t));
  for (auto [i, j] : plan->merges) {
    if (i == j || !live.at(i) || !live.at(j)) throw domain_error("invalid contraction plan");
    const auto& A = *live[i];
    const auto& B = *live[j];
    std::vector<SharedLeg> shared;
    for (int x = 0; x < A.rank(); ++x) {
      auto it = partner.find(A.axes()[x].label);
      if (it == partner.end()) continue;
      int y = B.position(it->second);
      if (y >= 0) shared.push_back({x, y, A.axes()[x].weight});
    }
    auto R = merge_pair(A, B, shared);
    if (stats) {
      stats->max_nonzeros = std::max(stats->max_nonzeros, R.nonzeros());
      stats->max_dense = std::max(stats->max_dense, R.dense_size());
    }
    live[i].reset();
    live[j].reset();
    live.emplace_back(std::move(R));
  }
  std::optional<BasicSymTensor<Scalar>> result;
  for (auto& l : live)
    if (l) {
      if (result) throw domain_error("contraction plan leaves several tensors");
      result = std::move(l);
    }
  return std::move(*result);
}

template SymTensor contract(std::vector<SymTensor>, const std::vector<ContractionEdge>&,
                            const ContractionPlan*, ContractionStats*);
template FloatSymTensor contract(std::vector<FloatSymTensor>, const std::vector<ContractionEdge>&,
                                 const ContractionPlan*, ContractionStats*);

} // namespace spinnet
