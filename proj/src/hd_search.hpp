#pragma once

// Internal det-k-decomp engine shared by check_hd, the LocalBIP GHD search
// (per-node subedge pools) and the fractional-improvement search (bag
// filter). Not installed.

#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "htk/decomposition.hpp"
#include "htk/deadline.hpp"
#include "htk/hd.hpp"
#include "htk/hypergraph.hpp"

namespace htk::detail {

// thrown by pool providers when a subedge catalog exceeds its cap
struct CatalogOverflow {};

struct SearchConfig {
  std::size_t memo_limit = 1 << 20;
  // extra candidate atoms for a component (LocalBIP); tried only after all
  // pure base-edge combinations of the node failed
  std::function<const std::vector<CoverEntry>*(const DynBitset& comp)> local_pool;
  // reject bags (fractional-improvement pruning)
  std::function<bool(const DynBitset& bag)> bag_ok;
};

class HdSearch {
 public:
  HdSearch(const Hypergraph& h, int k, Deadline deadline, SearchConfig cfg)
      : h_(h), k_(k), deadline_(std::move(deadline)), cfg_(std::move(cfg)) {}

  SolveResult run();

 private:
  // subtree fragment with local node indices, root 0
  struct Sub {
    std::vector<DecompNode> nodes;
  };

  struct Key {
    DynBitset comp, conn;
    bool operator==(const Key& o) const { return comp == o.comp && conn == o.conn; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return k.comp.hash() * 31 + k.conn.hash(); }
  };

  std::optional<Sub> decompose(const DynBitset& comp, const DynBitset& conn);
  bool try_candidate(const std::vector<CoverEntry>& atoms, const std::vector<int>& pick,
                     const DynBitset& comp, const DynBitset& comp_verts,
                     const DynBitset& conn, std::optional<Sub>& out);
  void memo_put(const Key& key, std::optional<Sub> value);

  const Hypergraph& h_;
  int k_;
  Deadline deadline_;
  SearchConfig cfg_;
  bool timed_out_ = false;

  std::unordered_map<Key, std::optional<Sub>, KeyHash> memo_;
  std::deque<Key> memo_order_;
  std::unordered_set<Key, KeyHash> open_;
};

}  // namespace htk::detail
