#include "spinnet/micro.hpp"
#include "spinnet/error.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace spinnet {

namespace {

using Mat = std::array<std::array<long, 2>, 2>;

constexpr Mat kDelta{{{1, 0}, {0, 1}}};
constexpr Mat kEpsilon{{{0, 1}, {-1, 0}}};

Mat mul(const Mat& a, const Mat& b) {
  Mat r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

Mat transpose(const Mat& a) { return {{{a[0][0], a[1][0]}, {a[0][1], a[1][1]}}}; }

struct Piece {
  Mat m;
  int wire[2];
};

struct Path {
  int from, to;
  Mat m;
};

} // namespace

SymTensor micro_contract(const MicroDiagram& d, std::uint64_t term_limit) {
  // incidence check
  std::vector<int> count(d.wires, 0), open(d.wires, 0);
  auto touch = [&](int w) {
    if (w < 0 || w >= d.wires) throw domain_error("micro diagram: wire out of range");
    ++count[w];
  };
  for (const auto& s : d.strands) {
    touch(s.wire_a);
    touch(s.wire_b);
  }
  for (const auto& s : d.symmetrizers) {
    if (s.in.size() != s.out.size()) throw domain_error("micro diagram: ragged symmetrizer");
    for (int w : s.in) touch(w);
    for (int w : s.out) touch(w);
  }
  for (const auto& leg : d.legs)
    for (int w : leg) {
      touch(w);
      open[w] = 1;
    }
  for (int w = 0; w < d.wires; ++w)
    if (count[w] != 2) throw domain_error("micro diagram: wire " + std::to_string(w) + " is not used twice");

  std::uint64_t terms = 1;
  for (const auto& s : d.symmetrizers) {
    for (std::size_t i = 2; i <= s.in.size(); ++i) {
      terms *= i;
      if (terms > term_limit) throw resource_error("micro_contract: too many symmetrizer terms");
    }
  }

  std::vector<Axis> axes;
  for (std::size_t l = 0; l < d.legs.size(); ++l)
    axes.push_back({static_cast<int>(l), static_cast<int>(d.legs[l].size())});
  std::size_t entries = 1;
  for (const auto& a : axes) entries *= a.weight + 1;
  std::vector<long> acc(entries, 0);

  std::vector<std::vector<int>> perms;
  for (const auto& s : d.symmetrizers) {
    std::vector<int> p(s.in.size());
    std::iota(p.begin(), p.end(), 0);
    perms.push_back(p);
  }

  std::vector<int> wire_val(d.wires, 0);
  std::vector<int> idx(axes.size(), 0);
  while (true) {
    std::vector<Piece> pieces;
    for (const auto& s : d.strands)
      pieces.push_back({s.kind == StrandKind::delta ? kDelta : kEpsilon, {s.wire_a, s.wire_b}});
    for (std::size_t k = 0; k < d.symmetrizers.size(); ++k)
      for (std::size_t r = 0; r < perms[k].size(); ++r)
        pieces.push_back({kDelta, {d.symmetrizers[k].in[r], d.symmetrizers[k].out[perms[k][r]]}});

    // wire -> incident (piece, end)
    std::vector<std::array<std::pair<int, int>, 2>> inc(d.wires, {{{-1, -1}, {-1, -1}}});
    for (int p = 0; p < static_cast<int>(pieces.size()); ++p)
      for (int e = 0; e < 2; ++e) {
        auto& slot = inc[pieces[p].wire[e]];
        (slot[0].first == -1 ? slot[0] : slot[1]) = {p, e};
      }
    std::vector<char> used(pieces.size(), 0);
    auto step = [&](int w, Mat& m) {
      // follow the unused piece at w, returning the wire at its far end
      for (const auto& [p, e] : inc[w]) {
        if (p < 0 || used[p]) continue;
        used[p] = 1;
        m = mul(m, e == 0 ? pieces[p].m : transpose(pieces[p].m));
        return pieces[p].wire[1 - e];
      }
      return -1;
    };
    std::vector<Path> paths;
    for (int w = 0; w < d.wires; ++w) {
      if (!open[w]) continue;
      bool fresh = false;
      for (const auto& [p, e] : inc[w]) fresh |= (p >= 0 && !used[p]);
      if (!fresh) continue;
      Mat m = kDelta;
      int cur = w;
      do cur = step(cur, m);
      while (!open[cur]);
      paths.push_back({w, cur, m});
    }
    long cycles = 1;
    for (int p = 0; p < static_cast<int>(pieces.size()) && cycles != 0; ++p) {
      if (used[p]) continue;
      used[p] = 1;
      Mat m = pieces[p].m;
      int start = pieces[p].wire[0];
      int cur = pieces[p].wire[1];
      while (cur != start) cur = step(cur, m);
      cycles *= m[0][0] + m[1][1];
    }

    if (cycles != 0) {
      std::fill(idx.begin(), idx.end(), 0);
      for (std::size_t flat = 0; flat < entries; ++flat) {
        for (std::size_t l = 0; l < axes.size(); ++l) {
          const auto& leg = d.legs[l];
          const int a = static_cast<int>(leg.size());
          for (int r = 0; r < a; ++r) wire_val[leg[r]] = r >= a - idx[l] ? 1 : 0;
        }
        long v = cycles;
        for (const auto& pa : paths) {
          v *= pa.m[wire_val[pa.from]][wire_val[pa.to]];
          if (v == 0) break;
        }
        acc[flat] += v;
        for (std::size_t l = 0; l < axes.size(); ++l) {
          if (++idx[l] <= axes[l].weight) break;
          idx[l] = 0;
        }
      }
    }

    std::size_t k = 0;
    for (; k < perms.size(); ++k)
      if (std::next_permutation(perms[k].begin(), perms[k].end())) break;
    if (k == perms.size()) break;
  }

  BigInt denom = 1;
  for (const auto& s : d.symmetrizers) denom *= factorial(static_cast<int>(s.in.size()));
  SymTensor t(axes);
  std::fill(idx.begin(), idx.end(), 0);
  for (std::size_t flat = 0; flat < entries; ++flat) {
    if (acc[flat] != 0) {
      BigRational v(BigInt(acc[flat]), denom);
      v.canonicalize();
      t.set(idx, v);
    }
    for (std::size_t l = 0; l < axes.size(); ++l) {
      if (++idx[l] <= axes[l].weight) break;
      idx[l] = 0;
    }
  }
  return t;
}

MicroDiagram vertex_diagram(int m, int n, int p, bool gate_order) {
  if (!((m + n + p) % 2 == 0 && std::abs(m - n) <= p && p <= m + n))
    throw domain_error("vertex_diagram: inadmissible triple");
  const int k = (m + n - p) / 2;
  MicroDiagram d;
  d.wires = 2 * (m + n + p);
  auto range = [](int start, int len) {
    std::vector<int> v(len);
    std::iota(v.begin(), v.end(), start);
    return v;
  };
  const int A = 0, B = m, C = m + n;
  const int Ai = m + n + p, Bi = Ai + m, Ci = Bi + n;
  d.legs = {range(A, m), range(B, n), range(C, p)};
  d.symmetrizers = {{range(A, m), range(Ai, m)}, {range(B, n), range(Bi, n)}, {range(C, p), range(Ci, p)}};
  for (int r = 0; r < k; ++r)
    d.strands.push_back(gate_order ? MicroStrand{StrandKind::epsilon, Ai + r, Bi + r}
                                   : MicroStrand{StrandKind::epsilon, Bi + r, Ai + r});
  for (int r = 0; r < m - k; ++r) d.strands.push_back({StrandKind::delta, Ai + k + r, Ci + r});
  for (int r = 0; r < n - k; ++r) d.strands.push_back({StrandKind::delta, Bi + k + r, Ci + (m - k) + r});
  return d;
}

} // namespace spinnet
