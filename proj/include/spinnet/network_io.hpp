#pragma once

#include "spinnet/cg_eval.hpp"
#include "spinnet/network.hpp"
#include "spinnet/orientation.hpp"

#include <optional>
#include <string>

namespace spinnet {

// A network file: the ribbon graph with its decoration, optionally with a
// smooth orientation and gates.
struct NetworkFile {
  SpinNetwork net;
  std::optional<SmoothOrientation> orientation;
  std::optional<GateSignage> gates;  // only together with an orientation
};

// JSON layout:
//   {"vertices":[{"id":0,"rotation":[h,h,h]},...],
//    "edges":[{"id":0,"halfedges":[h,h]},...],
//    "decoration":{"0":2,...},
//    "trivial_components":[...],
//    "orientation":{"0":[tail,head],...},   optional
//    "gates":{"0":[h,h],...}}               optional
// Ids must be 0..n-1 (any order). Unknown keys, missing entries, bad types, a
// malformed graph, a non-smooth orientation or invalid gates all throw
// schema_error naming the offending key, and the line for syntax errors.
NetworkFile parse_network(const std::string& text);
// Canonical text: ids ascending, two-space indent, trailing newline.
std::string serialize_network(const NetworkFile& file);

NetworkFile read_network_file(const std::string& path);

// Orientation and gates from the file, or canonical ones where absent.
CgNetwork to_cg_network(const NetworkFile& file);

} // namespace spinnet
