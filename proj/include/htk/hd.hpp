#pragma once

#include <cstddef>
#include <functional>

#include "htk/deadline.hpp"
#include "htk/decomposition.hpp"
#include "htk/hypergraph.hpp"

namespace htk {

struct HdOptions {
  // failure/success cache entries, drop-oldest eviction
  std::size_t memo_limit = 1 << 20;
};

// CHECK(HD,k) by the top-down det-k-decomp procedure. Answer::yes carries an
// HD of width <= k that passes validate_decomposition.
SolveResult check_hd(const Hypergraph& h, int k, Deadline deadline = {},
                     const HdOptions& opts = {});

}  // namespace htk
