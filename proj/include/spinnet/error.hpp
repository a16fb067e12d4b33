#pragma once

#include <stdexcept>
#include <string>

namespace spinnet {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// malformed ribbon graph: dangling or duplicated half-edges, wrong arity
struct structure_error : error {
  using error::error;
};

// well-formed input outside the domain of an operation (inadmissible decorations etc.)
struct domain_error : error {
  using error::error;
};

// a cost guard tripped before any work was done
struct resource_error : error {
  using error::error;
};

// network file does not follow the schema
struct schema_error : error {
  using error::error;
};

} // namespace spinnet
