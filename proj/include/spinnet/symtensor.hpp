#pragma once

#include "spinnet/error.hpp"
#include "spinnet/numeric.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <utility>
#include <vector>

namespace spinnet {

// A symmetric leg of weight a is one index p in [0, a]: the number of 2s among
// its a spin-1/2 indices. Contracting two legs of weight a weighs each p by C(a, p).
struct Axis {
  int label;
  int weight;
  bool operator==(const Axis&) const = default;
};

using TensorKey = unsigned __int128;

struct TensorKeyHash {
  std::size_t operator()(TensorKey k) const noexcept {
    auto lo = static_cast<std::uint64_t>(k), hi = static_cast<std::uint64_t>(k >> 64);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x632BE59BD9B4E019ull + (lo << 6) + (lo >> 2));
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

inline bool is_zero(const BigRational& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

// Sparse tensor on a product of symmetric legs. Only nonzero entries are stored.
template <class Scalar>
class BasicSymTensor {
 public:
  using Map = std::unordered_map<TensorKey, Scalar, TensorKeyHash>;

  BasicSymTensor() { layout(); }
  explicit BasicSymTensor(std::vector<Axis> axes) : axes_(std::move(axes)) { layout(); }

  static BasicSymTensor constant(const Scalar& v) {
    BasicSymTensor t;
    if (!is_zero(v)) t.data_[0] = v;
    return t;
  }

  const std::vector<Axis>& axes() const { return axes_; }
  int rank() const { return static_cast<int>(axes_.size()); }
  int position(int label) const {
    for (int i = 0; i < rank(); ++i)
      if (axes_[i].label == label) return i;
    return -1;
  }
  std::size_t nonzeros() const { return data_.size(); }
  double dense_size() const {
    double s = 1;
    for (const auto& a : axes_) s *= a.weight + 1;
    return s;
  }

  TensorKey pack(const std::vector<int>& idx) const {
    TensorKey k = 0;
    for (int i = 0; i < rank(); ++i) {
      if (idx[i] < 0 || idx[i] > axes_[i].weight) throw domain_error("tensor index out of range");
      k |= static_cast<TensorKey>(idx[i]) << shift_[i];
    }
    return k;
  }
  int index(TensorKey k, int axis) const {
    return static_cast<int>((k >> shift_[axis]) & ((TensorKey(1) << bits_[axis]) - 1));
  }
  void unpack(TensorKey k, std::vector<int>& idx) const {
    idx.resize(rank());
    for (int i = 0; i < rank(); ++i) idx[i] = index(k, i);
  }
  int shift(int axis) const { return shift_[axis]; }

  Scalar at(const std::vector<int>& idx) const {
    auto it = data_.find(pack(idx));
    return it == data_.end() ? Scalar(0) : it->second;
  }
  void set(const std::vector<int>& idx, const Scalar& v) { set_key(pack(idx), v); }
  void add(const std::vector<int>& idx, const Scalar& v) { add_key(pack(idx), v); }
  void set_key(TensorKey k, const Scalar& v) {
    if (is_zero(v))
      data_.erase(k);
    else
      data_[k] = v;
  }
  void add_key(TensorKey k, const Scalar& v) {
    auto [it, fresh] = data_.try_emplace(k, v);
    if (!fresh) it->second += v;
  }
  // drop entries that cancelled to zero
  void prune() {
    std::erase_if(data_, [](const auto& kv) { return is_zero(kv.second); });
  }

  Scalar value() const {
    if (rank() != 0) throw domain_error("value() on a tensor with open legs");
    auto it = data_.find(0);
    return it == data_.end() ? Scalar(0) : it->second;
  }

  const Map& data() const { return data_; }

  // visit(idx, value) in increasing key order, for deterministic output
  template <class F>
  void for_each_sorted(F&& visit) const {
    std::vector<TensorKey> keys;
    keys.reserve(data_.size());
    for (const auto& kv : data_) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    std::vector<int> idx;
    for (TensorKey k : keys) {
      unpack(k, idx);
      visit(idx, data_.at(k));
    }
  }

  BasicSymTensor relabeled(const std::vector<int>& labels) const {
    BasicSymTensor t = *this;
    for (int i = 0; i < rank(); ++i) t.axes_[i].label = labels.at(i);
    return t;
  }

  // same tensor with axes reordered to the given label order
  BasicSymTensor permuted(const std::vector<int>& label_order) const {
    std::vector<Axis> ax;
    std::vector<int> from;
    for (int l : label_order) {
      int p = position(l);
      if (p < 0) throw domain_error("permuted: unknown label");
      ax.push_back(axes_[p]);
      from.push_back(p);
    }
    if (static_cast<int>(ax.size()) != rank()) throw domain_error("permuted: wrong label count");
    BasicSymTensor t(ax);
    for (const auto& [k, v] : data_) {
      TensorKey nk = 0;
      for (int i = 0; i < rank(); ++i) nk |= static_cast<TensorKey>(index(k, from[i])) << t.shift_[i];
      t.data_.emplace(nk, v);
    }
    return t;
  }

  BasicSymTensor scaled(const Scalar& s) const {
    BasicSymTensor t(axes_);
    if (is_zero(s)) return t;
    for (const auto& [k, v] : data_) t.data_.emplace(k, v * s);
    return t;
  }

  bool operator==(const BasicSymTensor& o) const {
    if (!(axes_ == o.axes_) || data_.size() != o.data_.size()) return false;
    for (const auto& [k, v] : data_) {
      auto it = o.data_.find(k);
      if (it == o.data_.end() || !(it->second == v)) return false;
    }
    return true;
  }

 private:
  void layout() {
    shift_.clear();
    bits_.clear();
    int s = 0;
    for (const auto& a : axes_) {
      if (a.weight < 0) throw domain_error("negative axis weight");
      int b = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(a.weight))));
      shift_.push_back(s);
      bits_.push_back(b);
      s += b;
    }
    if (s > 128) throw resource_error("tensor has too many open legs for the index encoding");
  }

  std::vector<Axis> axes_;
  std::vector<int> shift_, bits_;
  Map data_;
};

using SymTensor = BasicSymTensor<BigRational>;
using FloatSymTensor = BasicSymTensor<double>;

FloatSymTensor to_float(const SymTensor& t);

// Compressed vertex tensor. Axis 0 and 1 are the gate legs (weights m, n),
// axis 2 the odd leg (weight p). The k = (m+n-p)/2 epsilon strands run between
// the gate legs, oriented from the first gate leg to the second when gate_order
// is true; false flips all of them, a factor (-1)^k. Axis labels are 0, 1, 2.
// Throws domain_error when (m, n, p) is not admissible.
const SymTensor& vertex_tensor(int m, int n, int p, bool gate_order = true);

// Identity on Sym^a with the contraction weight folded in: entry (q, q) is 1/C(a, q).
SymTensor identity_tensor(int a, int label_in, int label_out);

// --- contraction ---------------------------------------------------------

// Joins the axis labelled label_a (on one tensor) with label_b (on the same or
// another tensor). Both legs must have the given weight.
struct ContractionEdge {
  int label_a, label_b, weight;
};

// Pairwise merges; tensor slots are numbered 0..N-1 for the inputs and N, N+1, ...
// for merge results in the order they are produced.
struct ContractionPlan {
  std::vector<std::pair<int, int>> merges;
};

struct ContractionStats {
  std::size_t max_nonzeros = 0;  // largest intermediate, stored entries
  double max_dense = 0;          // largest intermediate, dense size
};

// Greedy: always perform the merge whose result has the smallest dense size,
// ties broken by the lowest edge id joining the pair. Disconnected pieces are
// multiplied together last, lowest slots first.
ContractionPlan plan_contraction(const std::vector<std::vector<Axis>>& shapes,
                                 const std::vector<ContractionEdge>& edges);

// Largest dense intermediate a plan produces, without doing the contraction.
double plan_cost(const std::vector<std::vector<Axis>>& shapes,
                 const std::vector<ContractionEdge>& edges, const ContractionPlan& plan);

// Contracts all edges; legs not named by any edge stay open. With no plan the
// greedy plan is used.
template <class Scalar>
BasicSymTensor<Scalar> contract(std::vector<BasicSymTensor<Scalar>> tensors,
                                const std::vector<ContractionEdge>& edges,
                                const ContractionPlan* plan = nullptr,
                                ContractionStats* stats = nullptr);

extern template SymTensor contract(std::vector<SymTensor>, const std::vector<ContractionEdge>&,
                                   const ContractionPlan*, ContractionStats*);
extern template FloatSymTensor contract(std::vector<FloatSymTensor>,
                                        const std::vector<ContractionEdge>&,
                                        const ContractionPlan*, ContractionStats*);

} // namespace spinnet
