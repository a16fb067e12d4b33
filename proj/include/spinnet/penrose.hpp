#pragma once

#include "spinnet/network.hpp"
#include "spinnet/numeric.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace spinnet {

// Slot pairing at a vertex with bundle sizes (a, b, c) laid out counterclockwise:
// bundle a occupies slots [0, a), b the next b slots, c the last c.
struct VertexMatching {
  std::vector<int> partner;  // partner[slot]
  int between(int x, int y) const;  // number of strands joining bundles x and y
  std::array<int, 3> sizes{};
};

// The unique non-crossing matching with no strand inside a bundle.
// Throws domain_error when (a, b, c) is not admissible.
VertexMatching vertex_matching(int a, int b, int c);

struct PenroseOptions {
  std::uint64_t state_limit = 0;  // 0: use default_state_limit()
  int threads = 1;
  bool trivial_by_state_sum = false;  // expand vertex-less circles as bands too
};

// 10^7 unless SPINNET_STATE_LIMIT is set in the environment
std::uint64_t default_state_limit();

struct StateSumResult {
  BigInt value;
  std::uint64_t states_visited = 0;
};

// Number of states the evaluation would enumerate; saturates at UINT64_MAX.
std::uint64_t penrose_state_count(const SpinNetwork& net, bool trivial_by_state_sum = false);

// Penrose evaluation: sum over bar permutations of sign * (-2)^#curves,
// factorized over connected components. Throws domain_error when inadmissible
// and resource_error when the state count exceeds the limit.
StateSumResult penrose_evaluate(const SpinNetwork& net, const PenroseOptions& opt = {});

// The vertex-less circle with a strands as an explicit state sum.
BigInt penrose_trivial_state_sum(int a);

// prod over vertices of the three half-sum factorials (loops counted twice)
BigInt half_factorial_product(const SpinNetwork& net);
BigRational standard_from_penrose(const SpinNetwork& net, const BigInt& penrose);

} // namespace spinnet
