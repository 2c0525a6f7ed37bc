#pragma once

#include <cstdint>
#include <string>

#include "zxcut/diagram.hpp"

namespace zxcut {

// Weisfeiler-Lehman style digest of kinds, phases, edges and boundary order.
// Invariant under relabelling of non-boundary vertices; the scalar is not included.
uint64_t structural_hash(const Diagram& d);

// Structural digest combined with the exact scalar, as 32 hex digits.
std::string canonical_hash(const Diagram& d);

// Exact check that b is a relabelling of a which keeps the boundary order. Scalars are ignored.
bool isomorphic(const Diagram& a, const Diagram& b);

}  // namespace zxcut
