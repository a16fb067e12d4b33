#pragma once

#include "spinnet/network.hpp"
#include "spinnet/radical.hpp"

#include <vector>

namespace spinnet {

// U(net) = factor * prod U(components) when !zero; U(net) = 0 when zero.
// Components are connected and bridge-free; a vertex-less circle is its own
// component.
struct BridgeReduction {
  bool zero = false;
  Radical factor = Radical::from_rational(1);
  std::vector<SpinNetwork> components;
};

// Removes zero-decorated bridges one at a time (lowest edge id first), erasing
// both endpoints: a plain endpoint fuses its two equal edges, a loop endpoint
// turns its loop into a circle. Each erased vertex contributes 1/sqrt(a+1), a
// loop vertex 1/(a! sqrt(a+1)). Any bridge with nonzero decoration gives zero.
BridgeReduction bridge_reduce(const SpinNetwork& net);

} // namespace spinnet
