#pragma once

#include <vector>

#include "htk/bitset.hpp"
#include "htk/decomposition.hpp"
#include "htk/hypergraph.hpp"

namespace htk {

// A subset of a base hypergraph's edges plus special edges (vertex sets
// standing for parent bags). Slots 0..edge_count-1 address base edges, slots
// edge_count.. address the specials.
struct ExtendedSubhypergraph {
  const Hypergraph* base = nullptr;
  DynBitset sub_edges;              // over base edge indices
  std::vector<DynBitset> specials;  // vertex sets over base vertices

  static ExtendedSubhypergraph whole(const Hypergraph& h) {
    return {&h, h.all_edges(), {}};
  }

  int size() const { return sub_edges.count() + static_cast<int>(specials.size()); }
  int slot_limit() const { return base->edge_count() + static_cast<int>(specials.size()); }
  bool slot_is_special(int slot) const { return slot >= base->edge_count(); }
  const DynBitset& slot_vertices(int slot) const {
    return slot_is_special(slot) ? specials[slot - base->edge_count()]
                                 : base->edge_set(slot);
  }
};

struct ComponentSplit {
  std::vector<int> contained;            // slots fully inside U (the C0 of a split)
  std::vector<std::vector<int>> parts;   // [U]-components; members sorted, parts by first member
};

// [U]-components of an extended subhypergraph: two slots are adjacent when
// they share a vertex outside U.
ComponentSplit components(const ExtendedSubhypergraph& ext, const DynBitset& u);

// U is balanced iff no [U]-component holds more than half of the slots
// (special edges counted).
bool is_balanced_separator(const ExtendedSubhypergraph& ext, const DynBitset& u);
bool is_balanced_separator(const ExtendedSubhypergraph& ext, const Cover& sep);

}  // namespace htk
