#include "htk/hd.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "htk/components.hpp"
#include "hd_search.hpp"

namespace htk::detail {

namespace {

// ascending index combinations of size l from [0,n); f(pick) -> true stops
template <typename F>
bool for_each_combo(int n, int l, F&& f) {
  if (l > n || l <= 0) return false;
  std::vector<int> pick(l);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    if (f(pick)) return true;
    int i = l - 1;
    while (i >= 0 && pick[i] == n - l + i) --i;
    if (i < 0) return false;
    ++pick[i];
    for (int j = i + 1; j < l; ++j) pick[j] = pick[j - 1] + 1;
  }
}

void attach_sub(std::vector<DecompNode>& nodes, int parent, std::vector<DecompNode> child) {
  int off = static_cast<int>(nodes.size());
  nodes[parent].children.push_back(off);
  for (auto& n : child) {
    for (auto& c : n.children) c += off;
    nodes.push_back(std::move(n));
  }
}

}  // namespace

bool HdSearch::try_candidate(const std::vector<CoverEntry>& atoms, const std::vector<int>& pick,
                             const DynBitset& comp, const DynBitset& comp_verts,
                             const DynBitset& conn, std::optional<Sub>& out) {
  if (deadline_.expired()) {
    timed_out_ = true;
    return true;
  }

  DynBitset u(h_.vertex_count());
  for (int i : pick) u |= entry_verts(h_, atoms[i]);
  if (!conn.subset_of(u)) return false;

  // the special condition fixes the bag: B(lambda) restricted to the
  // component plus the inherited connector
  DynBitset bag = u & (comp_verts | conn);
  if (!bag.intersects(comp_verts)) return false;  // no progress
  if (cfg_.bag_ok && !cfg_.bag_ok(bag)) return false;

  ExtendedSubhypergraph ext{&h_, comp, {}};
  ComponentSplit split = components(ext, bag);

  std::vector<std::vector<DecompNode>> child_trees;
  for (const auto& part : split.parts) {
    DynBitset ci(h_.edge_count());
    for (int slot : part) ci.set(slot);
    DynBitset conn_i = h_.vertices_of(ci) & bag;
    auto sub = decompose(ci, conn_i);
    if (timed_out_) return true;
    if (!sub) return false;
    child_trees.push_back(std::move(sub->nodes));
  }

  Sub result;
  DecompNode root;
  root.bag = bag;
  for (int i : pick) root.cover.push_back(atoms[i]);
  result.nodes.push_back(std::move(root));
  for (auto& t : child_trees) attach_sub(result.nodes, 0, std::move(t));
  out = std::move(result);
  return true;
}

std::optional<HdSearch::Sub> HdSearch::decompose(const DynBitset& comp, const DynBitset& conn) {
  if (timed_out_ || deadline_.expired()) {
    timed_out_ = true;
    return std::nullopt;
  }
  Key key{comp, conn};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  // re-entering an open pair can only yield an infinite descent; the caller
  // keeps trying its other candidates
  if (open_.count(key)) return std::nullopt;
  open_.insert(key);

  DynBitset comp_verts = h_.vertices_of(comp);

  std::vector<int> pool;
  for (int e = 0; e < h_.edge_count(); ++e)
    if (h_.edge_set(e).intersects(comp_verts)) pool.push_back(e);
  std::stable_sort(pool.begin(), pool.end(), [&](int a, int b) {
    return (h_.edge_set(a) & comp_verts).count() > (h_.edge_set(b) & comp_verts).count();
  });

  std::vector<CoverEntry> atoms;
  atoms.reserve(pool.size());
  for (int e : pool) atoms.push_back(CoverEntry::base(e));
  int n_base = static_cast<int>(atoms.size());

  std::optional<Sub> result;
  for (int l = 1; l <= k_ && !result && !timed_out_; ++l) {
    for_each_combo(n_base, l, [&](const std::vector<int>& pick) {
      return try_candidate(atoms, pick, comp, comp_verts, conn, result);
    });
  }

  // subedge phase: only after every pure base-edge combination failed
  if (!result && !timed_out_ && cfg_.local_pool) {
    const std::vector<CoverEntry>* extra = cfg_.local_pool(comp);
    if (extra) {
      for (const auto& e : *extra)
        if (e.verts.intersects(comp_verts)) atoms.push_back(e);
      int n_all = static_cast<int>(atoms.size());
      for (int l = 1; l <= k_ && !result && !timed_out_; ++l) {
        for_each_combo(n_all, l, [&](const std::vector<int>& pick) {
          if (pick.back() < n_base) return false;  // pure base combo, already tried
          return try_candidate(atoms, pick, comp, comp_verts, conn, result);
        });
      }
    }
  }

  open_.erase(key);
  if (timed_out_) return std::nullopt;  // partial exploration proves nothing
  memo_put(key, result);
  return result;
}

void HdSearch::memo_put(const Key& key, std::optional<Sub> value) {
  if (cfg_.memo_limit == 0) return;
  while (memo_.size() >= cfg_.memo_limit && !memo_order_.empty()) {
    memo_.erase(memo_order_.front());
    memo_order_.pop_front();
  }
  if (memo_.emplace(key, std::move(value)).second) memo_order_.push_back(key);
}

SolveResult HdSearch::run() {
  if (k_ < 1) throw std::invalid_argument("k must be >= 1");

  Decomposition d;
  d.kind = Decomposition::Kind::HD;
  if (h_.edge_count() == 0) {
    d.nodes.push_back(DecompNode{DynBitset(h_.vertex_count()), {}, {}});
    d.root = 0;
    return {Answer::yes, std::move(d)};
  }

  auto sub = decompose(h_.all_edges(), h_.empty_vertex_set());
  if (timed_out_) return {Answer::timeout, std::nullopt};
  if (!sub) return {Answer::no, std::nullopt};
  d.nodes = std::move(sub->nodes);
  d.root = 0;
  return {Answer::yes, std::move(d)};
}

}  // namespace htk::detail

namespace htk {

SolveResult check_hd(const Hypergraph& h, int k, Deadline deadline, const HdOptions& opts) {
  detail::SearchConfig cfg;
  cfg.memo_limit = opts.memo_limit;
  return detail::HdSearch(h, k, deadline, std::move(cfg)).run();
}

}  // namespace htk
