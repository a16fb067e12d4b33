#include <doctest.h>

#include "spinnet/error.hpp"
#include "spinnet/penrose.hpp"

#include <functional>

using namespace spinnet;

namespace {

// Every perfect matching of the cyclic slot sequence that is non-crossing and
// never pairs two slots of the same bundle.
std::vector<std::vector<int>> valid_matchings(const std::vector<int>& bundle) {
  const int n = static_cast<int>(bundle.size());
  std::vector<std::vector<int>> out;
  std::vector<int> partner(n, -1);
  // pair the smallest unmatched slot with every candidate
  std::function<void()> go = [&]() {
    int i = 0;
    while (i < n && partner[i] != -1) ++i;
    if (i == n) {
      // crossing test: chords (i,j),(k,l) with i<k<j<l
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          int j = partner[a], l = partner[b];
          if (a < b && b < j && j < l) return;
        }
      out.push_back(partner);
      return;
    }
    for (int j = i + 1; j < n; ++j) {
      if (partner[j] != -1 || bundle[i] == bundle[j]) continue;
      partner[i] = j;
      partner[j] = i;
      go();
      partner[i] = partner[j] = -1;
    }
  };
  go();
  return out;
}

BigInt signed_factorial(int a) { return (a % 2 ? -1 : 1) * factorial(a + 1); }

} // namespace

TEST_CASE("vertex matching is the unique non-crossing one") {
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      for (int c = 0; c <= 6; ++c) {
        if (!admissible_triple(a, b, c) || a + b + c > 14) continue;
        std::vector<int> bundle;
        for (int k = 0; k < a; ++k) bundle.push_back(0);
        for (int k = 0; k < b; ++k) bundle.push_back(1);
        for (int k = 0; k < c; ++k) bundle.push_back(2);
        auto all = valid_matchings(bundle);
        REQUIRE(all.size() == 1);
        CHECK(vertex_matching(a, b, c).partner == all[0]);
      }
  auto m = vertex_matching(6, 7, 5);
  CHECK(m.between(0, 1) == 4);
  CHECK(m.between(1, 2) == 3);
  CHECK(m.between(2, 0) == 2);
  CHECK_THROWS_AS(vertex_matching(1, 1, 1), domain_error);
}

TEST_CASE("theta(2,2,2) is -24") {
  auto r = penrose_evaluate(make_theta(2, 2, 2));
  CHECK(r.value == -24);
  CHECK(r.states_visited == 8);
}

TEST_CASE("vertex-less circle") {
  for (int a = 0; a <= 8; ++a) {
    CHECK(penrose_trivial_state_sum(a) == signed_factorial(a));
    PenroseOptions opt;
    opt.trivial_by_state_sum = true;
    CHECK(penrose_evaluate(make_trivial(a), opt).value == signed_factorial(a));
    CHECK(penrose_evaluate(make_trivial(a)).value == signed_factorial(a));
  }
}

TEST_CASE("zero decorations give one") {
  CHECK(penrose_evaluate(make_tetrahedron({0, 0, 0, 0, 0, 0})).value == 1);
  CHECK(penrose_evaluate(make_theta(0, 0, 0)).value == 1);
}

TEST_CASE("nonzero bridge vanishes") {
  CHECK(penrose_evaluate(make_dumbbell(1, 1, 2)).value == 0);
  CHECK(penrose_evaluate(make_dumbbell(2, 2, 2)).value == 0);
  CHECK(penrose_evaluate(make_dumbbell(2, 3, 0)).value == signed_factorial(2) * signed_factorial(3));
}

TEST_CASE("factorizes over disjoint union") {
  auto a = make_theta(2, 2, 2), b = make_tetrahedron({2, 2, 2, 2, 2, 2});
  auto pa = penrose_evaluate(a).value, pb = penrose_evaluate(b).value;
  CHECK(penrose_evaluate(disjoint_union(a, b)).value == pa * pb);
  auto c = disjoint_union(a, make_trivial(3));
  CHECK(penrose_evaluate(c).value == pa * signed_factorial(3));
}

TEST_CASE("flipping a vertex multiplies by the flip sign") {
  auto flip_sign = [](std::array<int, 3> d) {
    int e = 0;
    for (int x : d) e += x * (x - 1) / 2;
    return e % 2 ? -1 : 1;
  };
  std::vector<SpinNetwork> nets;
  for_each_admissible_decoration(make_theta(0, 0, 0), 3, [&](const std::vector<int>& d) {
    nets.push_back(make_theta(d[0], d[1], d[2]));
  });
  for (const auto& n : nets) {
    auto p = penrose_evaluate(n).value;
    for (VertexId v = 0; v < n.num_vertices(); ++v)
      CHECK(penrose_evaluate(flip_cyclic_order(n, v)).value == flip_sign(n.vertex_decorations(v)) * p);
  }
}

TEST_CASE("planar theta sign and magnitude") {
  // |P| = (s+1)! x! y! z!, sign (-1)^s on the planar embedding
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 4; ++c) {
        if (!admissible_triple(a, b, c)) continue;
        int s = (a + b + c) / 2;
        BigInt want = factorial(s + 1) * factorial(s - a) * factorial(s - b) * factorial(s - c);
        if (s % 2) want = -want;
        CHECK(penrose_evaluate(make_theta(a, b, c)).value == want);
      }
}

TEST_CASE("state guard") {
  PenroseOptions opt;
  opt.state_limit = 100;
  CHECK_THROWS_AS(penrose_evaluate(make_tetrahedron({4, 4, 4, 4, 4, 4}), opt), resource_error);
  CHECK_THROWS_AS(penrose_evaluate(make_theta(1, 1, 1)), domain_error);
  CHECK(penrose_state_count(make_theta(2, 2, 2)) == 8);
}

TEST_CASE("threads do not change the result") {
  auto t = make_tetrahedron({2, 2, 2, 2, 2, 2});
  PenroseOptions one, four;
  four.threads = 4;
  CHECK(penrose_evaluate(t, one).value == penrose_evaluate(t, four).value);
}
