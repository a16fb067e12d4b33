#pragma once

#include "spinnet/numeric.hpp"
#include "spinnet/symtensor.hpp"

#include <cstdint>
#include <vector>

namespace spinnet {

// Microscopic diagram over spin-1/2 index wires. Every wire is shared by exactly
// two piece ends, or by one piece end and one open leg.
enum class StrandKind { delta, epsilon };

struct MicroStrand {
  StrandKind kind;
  int wire_a, wire_b;  // epsilon_{ij}: i on wire_a, epsilon_12 = +1
};

// (1/a!) sum over sigma of prod_r delta(in[r], out[sigma(r)])
struct MicroSymmetrizer {
  std::vector<int> in, out;
};

struct MicroDiagram {
  int wires = 0;
  std::vector<MicroStrand> strands;
  std::vector<MicroSymmetrizer> symmetrizers;
  // open wires grouped into symmetric legs; compressed index p sets the last p wires to 2
  std::vector<std::vector<int>> legs;
};

// Evaluates the diagram by expanding every symmetrizer and tracing strand chains.
// Legs become axes labelled 0, 1, ... in order. Throws resource_error when the
// number of expanded terms exceeds term_limit.
SymTensor micro_contract(const MicroDiagram& d, std::uint64_t term_limit = 20'000'000);

// The vertex piece: symmetrized legs of sizes m, n (gate) and p (odd), k epsilons
// between the gate legs, the remaining strands deltas to the odd leg.
MicroDiagram vertex_diagram(int m, int n, int p, bool gate_order = true);

} // namespace spinnet
