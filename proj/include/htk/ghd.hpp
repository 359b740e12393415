#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "htk/components.hpp"
#include "htk/deadline.hpp"
#include "htk/decomposition.hpp"
#include "htk/hd.hpp"
#include "htk/hypergraph.hpp"

namespace htk {

// Candidate subedges: all non-empty subsets of intersections of one edge with
// a union of up to k other edges, minus sets already present as edges. Each
// entry keeps one base edge containing it, for cover repair.
struct SubedgeCatalog {
  std::vector<DynBitset> entries;  // vertex sets, distinct
  std::vector<int> witness;        // lowest-index base edge containing the entry
  bool overflow = false;           // cap exceeded, entries unusable
};

struct GhdOptions {
  std::size_t catalog_cap = 5'000'000;
  std::size_t memo_limit = 1 << 20;
  // test hook: observes every separator BalSep accepts, at selection time
  std::function<void(const ExtendedSubhypergraph&, const Cover&)> on_separator_accepted;
};

SubedgeCatalog subedges_global(const Hypergraph& h, int k, std::size_t cap = 5'000'000);
// as subedges_global, but the union partners range over the component only
SubedgeCatalog subedges_local(const Hypergraph& h, const DynBitset& component, int k,
                              std::size_t cap = 5'000'000);

// CHECK(GHD,k) by reduction to CHECK(HD,k) on the subedge-augmented
// hypergraph, covers repaired back to base edges. Answer::infeasible signals
// that the global catalog exceeded its cap.
SolveResult check_ghd_global(const Hypergraph& h, int k, Deadline deadline = {},
                             const GhdOptions& opts = {});

// CHECK(GHD,k) extending the HD search with per-node local subedge pools,
// tried only after the full-edge combinations of a node are exhausted.
SolveResult check_ghd_local(const Hypergraph& h, int k, Deadline deadline = {},
                            const GhdOptions& opts = {});

// CHECK(GHD,k) by recursive balanced-separator decomposition.
SolveResult check_ghd_balsep(const Hypergraph& h, int k, Deadline deadline = {},
                             const GhdOptions& opts = {});

// One extended subhypergraph per [bag]-component: its base edges, the old
// special edges meeting it, plus the bag as a new special edge.
std::vector<ExtendedSubhypergraph> compute_subhypergraphs(const ExtendedSubhypergraph& ext,
                                                          const DynBitset& bag);

// Merges child GHDs below a new root (bag, cover): each child is rerooted at
// its node carrying the parent bag and that node's subtrees are attached.
Decomposition build_ghd(const Hypergraph& h, const DynBitset& bag, const Cover& cover,
                        std::vector<Decomposition> children);

// Replaces subedge cover members by base edges (witness or any superset not
// already in the node's cover). Drops a member only if another member
// contains it.
void repair_cover_to_base(const Hypergraph& h, Decomposition& d);

}  // namespace htk
