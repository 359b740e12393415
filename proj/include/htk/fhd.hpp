#pragma once

#include <utility>
#include <vector>

#include "htk/deadline.hpp"
#include "htk/decomposition.hpp"
#include "htk/hd.hpp"
#include "htk/hypergraph.hpp"
#include "htk/rational.hpp"

namespace htk {

struct FractionalCoverSolution {
  bool feasible = true;
  std::vector<std::pair<int, Rat>> weights;  // edge index -> weight, positive entries only
  Rat total = 0;
  DynBitset covered;  // B(gamma)
};

// Exact optimum of min sum gamma(e) s.t. every target vertex accumulates
// weight >= 1, 0 <= gamma <= 1. Infeasible iff some target vertex lies in no
// usable edge. Rational simplex, no floating point.
FractionalCoverSolution fractional_cover(const Hypergraph& h, const DynBitset& target,
                                         const DynBitset& usable_edges);

// Same tree and bags, each integral cover replaced by an optimal fractional
// one. Width never increases.
Decomposition simple_improve_hd(const Hypergraph& h, const Decomposition& d);

// Searches for an HD of width <= k whose fractional improvement has width
// <= k_prime; candidate bags are pruned by their exact LP value.
SolveResult frac_improve_hd(const Hypergraph& h, int k, const Rat& k_prime,
                            Deadline deadline = {}, const HdOptions& opts = {});

}  // namespace htk
