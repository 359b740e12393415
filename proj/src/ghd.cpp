#include "htk/ghd.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "hd_search.hpp"

namespace htk {

namespace {

struct CatalogBuilder {
  const Hypergraph& h;
  std::size_t cap;
  std::unordered_map<DynBitset, int, DynBitsetHash> seen;  // entry -> witness
  std::unordered_set<DynBitset, DynBitsetHash> base_sets;
  bool overflow = false;

  CatalogBuilder(const Hypergraph& h, std::size_t cap) : h(h), cap(cap) {
    for (int e = 0; e < h.edge_count(); ++e) base_sets.insert(h.edge_set(e));
  }

  bool add_subsets_of(const DynBitset& u, int owner_edge) {
    // enumerate non-empty subsets of u
    std::vector<int> verts = u.to_vector();
    if (verts.size() > 24) {  // subset count alone would dwarf any sane cap
      overflow = true;
      return false;
    }
    std::uint64_t total = std::uint64_t{1} << verts.size();
    for (std::uint64_t mask = 1; mask < total; ++mask) {
      DynBitset s(h.vertex_count());
      for (std::size_t i = 0; i < verts.size(); ++i)
        if (mask & (std::uint64_t{1} << i)) s.set(verts[i]);
      if (base_sets.count(s)) continue;
      auto [it, fresh] = seen.emplace(std::move(s), owner_edge);
      (void)it;
      if (fresh && seen.size() > cap) {
        overflow = true;
        return false;
      }
    }
    return true;
  }

  // unions of min(k, |partners|) intersection sets cover all smaller unions
  bool run_for_edge(int e, const std::vector<int>& partners, int k) {
    std::vector<DynBitset> xs;
    std::unordered_set<DynBitset, DynBitsetHash> xs_seen;
    for (int f : partners) {
      if (f == e) continue;
      DynBitset x = h.edge_set(e) & h.edge_set(f);
      if (x.none()) continue;
      if (xs_seen.insert(x).second) xs.push_back(std::move(x));
    }
    if (xs.empty()) return true;
    int take = std::min<int>(k, static_cast<int>(xs.size()));
    std::vector<int> pick(take);
    std::iota(pick.begin(), pick.end(), 0);
    std::unordered_set<DynBitset, DynBitsetHash> union_seen;
    while (true) {
      DynBitset u(h.vertex_count());
      for (int i : pick) u |= xs[i];
      if (union_seen.insert(u).second) {
        if (!add_subsets_of(u, e)) return false;
      }
      int i = take - 1;
      while (i >= 0 && pick[i] == static_cast<int>(xs.size()) - take + i) --i;
      if (i < 0) return true;
      ++pick[i];
      for (int j = i + 1; j < take; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  SubedgeCatalog finish() {
    SubedgeCatalog cat;
    cat.overflow = overflow;
    if (overflow) return cat;
    cat.entries.reserve(seen.size());
    for (auto& [s, w] : seen) {
      (void)w;
      cat.entries.push_back(s);
    }
    // larger entries first; deterministic
    std::sort(cat.entries.begin(), cat.entries.end(), [](const DynBitset& a, const DynBitset& b) {
      if (a.count() != b.count()) return a.count() > b.count();
      return a.lex_less(b);
    });
    cat.witness.reserve(cat.entries.size());
    for (const auto& s : cat.entries) {
      int w = -1;
      for (int e = 0; e < h.edge_count() && w < 0; ++e)
        if (s.subset_of(h.edge_set(e))) w = e;
      assert(w >= 0);
      cat.witness.push_back(w);
    }
    return cat;
  }
};

}  // namespace

SubedgeCatalog subedges_global(const Hypergraph& h, int k, std::size_t cap) {
  CatalogBuilder b(h, cap);
  std::vector<int> all(h.edge_count());
  std::iota(all.begin(), all.end(), 0);
  for (int e = 0; e < h.edge_count() && !b.overflow; ++e) b.run_for_edge(e, all, k);
  return b.finish();
}

SubedgeCatalog subedges_local(const Hypergraph& h, const DynBitset& component, int k,
                              std::size_t cap) {
  CatalogBuilder b(h, cap);
  std::vector<int> partners = component.to_vector();
  for (int e = 0; e < h.edge_count() && !b.overflow; ++e) b.run_for_edge(e, partners, k);
  return b.finish();
}

void repair_cover_to_base(const Hypergraph& h, Decomposition& d) {
  for (auto& node : d.nodes) {
    std::vector<char> used(h.edge_count(), 0);
    for (const auto& e : node.cover)
      if (e.edge >= 0) used[e.edge] = 1;
    Cover repaired;
    for (auto& e : node.cover) {
      if (e.edge >= 0) {
        repaired.push_back(e);
        continue;
      }
      assert(!e.special);
      int pick = -1;
      if (e.witness >= 0 && !used[e.witness] && e.verts.subset_of(h.edge_set(e.witness)))
        pick = e.witness;
      for (int b = 0; b < h.edge_count() && pick < 0; ++b)
        if (!used[b] && e.verts.subset_of(h.edge_set(b))) pick = b;
      if (pick >= 0) {
        used[pick] = 1;
        repaired.push_back(CoverEntry::base(pick, e.weight));
      } else {
        // every base edge containing this subedge is already a cover member,
        // so the member is redundant
        bool dominated = false;
        for (const auto& o : node.cover)
          if (&o != &e && e.verts.subset_of(entry_verts(h, o))) dominated = true;
        assert(dominated);
        (void)dominated;
      }
    }
    node.cover = std::move(repaired);
  }
}

namespace {

// augmented hypergraph: base edges plus catalog entries, same vertex universe
Hypergraph augment(const Hypergraph& h, const SubedgeCatalog& cat, std::string* prefix_out) {
  std::string prefix = "_s";
  while (true) {
    bool clash = false;
    for (int e = 0; e < h.edge_count() && !clash; ++e)
      clash = h.edge(e).name.rfind(prefix, 0) == 0;
    if (!clash) break;
    prefix.insert(prefix.begin(), '_');
  }
  std::vector<std::pair<std::string, std::vector<std::string>>> edges;
  for (int e = 0; e < h.edge_count(); ++e) {
    std::vector<std::string> verts;
    for (int v : h.edge(e).verts) verts.push_back(h.vertex_name(v));
    edges.emplace_back(h.edge(e).name, std::move(verts));
  }
  for (std::size_t i = 0; i < cat.entries.size(); ++i) {
    std::vector<std::string> verts;
    cat.entries[i].for_each([&](int v) { verts.push_back(h.vertex_name(v)); });
    edges.emplace_back(prefix + std::to_string(i), std::move(verts));
  }
  Hypergraph aug = Hypergraph::build(h.name() + "+subedges", edges, nullptr);
  assert(aug.vertex_count() == h.vertex_count());
  *prefix_out = prefix;
  return aug;
}

}  // namespace

SolveResult check_ghd_global(const Hypergraph& h, int k, Deadline deadline,
                             const GhdOptions& opts) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  SubedgeCatalog cat = subedges_global(h, k, opts.catalog_cap);
  if (cat.overflow) return {Answer::infeasible, std::nullopt};

  std::string prefix;
  Hypergraph aug = augment(h, cat, &prefix);
  SolveResult res = check_hd(aug, k, deadline, HdOptions{opts.memo_limit});
  if (res.answer != Answer::yes) return res;

  // rewrite catalog-edge cover members as explicit subedges, then repair
  Decomposition d = std::move(*res.decomposition);
  d.kind = Decomposition::Kind::GHD;
  for (auto& node : d.nodes)
    for (auto& e : node.cover)
      if (e.edge >= h.edge_count()) {
        std::size_t ci = static_cast<std::size_t>(e.edge - h.edge_count());
        e = CoverEntry::subedge(cat.entries[ci], cat.witness[ci]);
      }
  repair_cover_to_base(h, d);
  return {Answer::yes, std::move(d)};
}

SolveResult check_ghd_local(const Hypergraph& h, int k, Deadline deadline,
                            const GhdOptions& opts) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");

  std::unordered_map<DynBitset, std::vector<CoverEntry>, DynBitsetHash> pools;
  detail::SearchConfig cfg;
  cfg.memo_limit = opts.memo_limit;
  cfg.local_pool = [&](const DynBitset& comp) -> const std::vector<CoverEntry>* {
    auto it = pools.find(comp);
    if (it == pools.end()) {
      SubedgeCatalog cat = subedges_local(h, comp, k, opts.catalog_cap);
      if (cat.overflow) throw detail::CatalogOverflow{};
      std::vector<CoverEntry> entries;
      entries.reserve(cat.entries.size());
      for (std::size_t i = 0; i < cat.entries.size(); ++i)
        entries.push_back(CoverEntry::subedge(cat.entries[i], cat.witness[i]));
      it = pools.emplace(comp, std::move(entries)).first;
    }
    return &it->second;
  };

  SolveResult res;
  try {
    res = detail::HdSearch(h, k, deadline, std::move(cfg)).run();
  } catch (const detail::CatalogOverflow&) {
    return {Answer::infeasible, std::nullopt};
  }
  if (res.answer != Answer::yes) return res;

  Decomposition d = std::move(*res.decomposition);
  d.kind = Decomposition::Kind::GHD;
  repair_cover_to_base(h, d);
  return {Answer::yes, std::move(d)};
}

std::vector<ExtendedSubhypergraph> compute_subhypergraphs(const ExtendedSubhypergraph& ext,
                                                          const DynBitset& bag) {
  std::vector<ExtendedSubhypergraph> out;
  ComponentSplit split = components(ext, bag);
  for (const auto& part : split.parts) {
    ExtendedSubhypergraph sub;
    sub.base = ext.base;
    sub.sub_edges = DynBitset(ext.base->edge_count());
    for (int slot : part) {
      if (ext.slot_is_special(slot))
        sub.specials.push_back(ext.slot_vertices(slot));
      else
        sub.sub_edges.set(slot);
    }
    sub.specials.push_back(bag);  // connects the component back to its parent
    out.push_back(std::move(sub));
  }
  return out;
}

namespace {

// rebuild a decomposition tree rooted at new_root
Decomposition reroot(const Decomposition& d, int new_root) {
  std::vector<std::vector<int>> adj(d.nodes.size());
  for (std::size_t u = 0; u < d.nodes.size(); ++u)
    for (int c : d.nodes[u].children) {
      adj[u].push_back(c);
      adj[c].push_back(static_cast<int>(u));
    }
  Decomposition out;
  out.kind = d.kind;
  std::vector<int> remap(d.nodes.size(), -1);
  std::vector<std::pair<int, int>> stack{{new_root, -1}};  // node, parent
  while (!stack.empty()) {
    auto [u, parent] = stack.back();
    stack.pop_back();
    remap[u] = static_cast<int>(out.nodes.size());
    out.nodes.push_back(DecompNode{d.nodes[u].bag, d.nodes[u].cover, {}});
    if (parent >= 0) out.nodes[remap[parent]].children.push_back(remap[u]);
    for (int w : adj[u])
      if (w != parent) stack.emplace_back(w, u);
  }
  out.root = 0;
  return out;
}

bool is_special_for(const CoverEntry& e, const DynBitset& bag) {
  return e.special && e.verts == bag;
}

}  // namespace

Decomposition build_ghd(const Hypergraph& h, const DynBitset& bag, const Cover& cover,
                        std::vector<Decomposition> children) {
  Decomposition out;
  out.kind = Decomposition::Kind::GHD;
  out.root = 0;
  out.nodes.push_back(DecompNode{bag, cover, {}});

  for (auto& child : children) {
    // preferred merge point: the node introduced for this bag's special edge
    int special_node = -1, superset_node = -1;
    for (std::size_t u = 0; u < child.nodes.size(); ++u) {
      const auto& n = child.nodes[u];
      if (special_node < 0 && n.bag == bag && n.cover.size() == 1 &&
          is_special_for(n.cover[0], bag))
        special_node = static_cast<int>(u);
      if (superset_node < 0 && bag.subset_of(n.bag)) superset_node = static_cast<int>(u);
    }
    if (special_node < 0 && superset_node < 0)
      throw std::logic_error("build_ghd: child has no node covering the parent bag");

    if (special_node >= 0) {
      Decomposition r = reroot(child, special_node);
      // drop the special node, lift its subtrees
      int off = static_cast<int>(out.nodes.size()) - 1;  // shifted by removed root
      for (std::size_t u = 1; u < r.nodes.size(); ++u) {
        DecompNode n = std::move(r.nodes[u]);
        for (auto& c : n.children) c += off - 1 + 1;  // local index u maps to off + u
        out.nodes.push_back(std::move(n));
      }
      for (int c : r.nodes[0].children) out.nodes[0].children.push_back(off + c);
    } else {
      // the special edge was absorbed by a separator bag further down; the
      // subtree hangs below its covering node instead
      Decomposition r = superset_node == 0 && child.root == 0 ? std::move(child)
                                                              : reroot(child, superset_node);
      int off = static_cast<int>(out.nodes.size());
      for (std::size_t u = 0; u < r.nodes.size(); ++u) {
        DecompNode n = std::move(r.nodes[u]);
        for (auto& c : n.children) c += off;
        out.nodes.push_back(std::move(n));
      }
      out.nodes[0].children.push_back(off);
    }
  }
  return out;
}

namespace {

// lazily materialized f(H,k) with per-edge containment lists
struct BalsepCatalog {
  const Hypergraph& h;
  int k;
  std::size_t cap;
  bool built = false;
  bool overflow = false;
  SubedgeCatalog cat;
  std::vector<std::vector<int>> entries_in_edge;  // per base edge

  BalsepCatalog(const Hypergraph& h, int k, std::size_t cap) : h(h), k(k), cap(cap) {}

  bool ensure() {
    if (built) return !overflow;
    built = true;
    cat = subedges_global(h, k, cap);
    overflow = cat.overflow;
    if (overflow) return false;
    entries_in_edge.assign(h.edge_count(), {});
    for (std::size_t i = 0; i < cat.entries.size(); ++i)
      for (int e = 0; e < h.edge_count(); ++e)
        if (cat.entries[i].subset_of(h.edge_set(e)))
          entries_in_edge[e].push_back(static_cast<int>(i));
    return true;
  }
};

// Iterator over balanced separators of size <= k: all full-edge combinations
// first, then combinations drawing subedges from f(H,k).
class SeparatorIterator {
 public:
  SeparatorIterator(const Hypergraph& h, const ExtendedSubhypergraph& ext, int k,
                    BalsepCatalog& cat, Deadline deadline)
      : h_(h), ext_(ext), k_(k), cat_(cat), deadline_(deadline) {}

  enum class Status { found, exhausted, timeout, catalog_overflow };

  Status next(Cover& out) {
    while (true) {
      if (deadline_.expired()) return Status::timeout;
      if (!advance()) {
        if (overflow_) return Status::catalog_overflow;
        return Status::exhausted;
      }
      if (!is_balanced_separator(ext_, current_)) continue;
      out = current_;
      return Status::found;
    }
  }

 private:
  // produce the next candidate into current_; false when exhausted
  bool advance() {
    while (true) {
      if (phase_ == 0) {
        if (next_full_combo()) {
          current_.clear();
          for (int e : combo_) current_.push_back(CoverEntry::base(e));
          return true;
        }
        if (!cat_.ensure()) {
          overflow_ = cat_.overflow;
          return false;
        }
        phase_ = 1;
        l_ = 0;
        continue;
      }
      if (!next_mixed()) return false;
      return true;
    }
  }

  bool next_full_combo() {
    int n = h_.edge_count();
    while (true) {
      if (l_ == 0) {
        l_ = 1;
        if (l_ > std::min(k_, n)) return false;
        combo_.assign(1, 0);
        if (n == 0) return false;
        return true;
      }
      int i = static_cast<int>(combo_.size()) - 1;
      while (i >= 0 && combo_[i] == n - static_cast<int>(combo_.size()) + i) --i;
      if (i < 0) {
        ++l_;
        if (l_ > std::min(k_, n)) return false;
        combo_.resize(l_);
        std::iota(combo_.begin(), combo_.end(), 0);
        return true;
      }
      ++combo_[i];
      for (std::size_t j = i + 1; j < combo_.size(); ++j) combo_[j] = combo_[j - 1] + 1;
      return true;
    }
  }

  // phase 1: multisets of base edges, each position replaced by the full edge
  // or one of its subedges, at least one replacement, members distinct
  bool next_mixed() {
    int n = h_.edge_count();
    while (true) {
      if (deadline_.expired()) return false;  // caller re-checks the deadline
      if (!odometer_live_) {
        // advance the base multiset (non-decreasing index vector)
        if (l_ == 0) {
          l_ = 1;
          if (l_ > k_ || n == 0) return false;
          multiset_.assign(1, 0);
        } else {
          int i = static_cast<int>(multiset_.size()) - 1;
          while (i >= 0 && multiset_[i] == n - 1) --i;
          if (i < 0) {
            ++l_;
            if (l_ > k_) return false;
            multiset_.assign(l_, 0);
          } else {
            ++multiset_[i];
            for (std::size_t j = i + 1; j < multiset_.size(); ++j)
              multiset_[j] = multiset_[i];
          }
        }
        // option lists: 0 = full edge, 1.. = subedges inside it
        options_.clear();
        for (int e : multiset_) options_.push_back(&cat_.entries_in_edge[e]);
        odo_.assign(multiset_.size(), 0);
        odometer_live_ = true;
        if (candidate_ok()) return true;
        continue;
      }
      // advance odometer
      int i = static_cast<int>(odo_.size()) - 1;
      while (i >= 0 && odo_[i] == static_cast<int>(options_[i]->size())) --i;
      if (i < 0) {
        odometer_live_ = false;
        continue;
      }
      ++odo_[i];
      for (std::size_t j = i + 1; j < odo_.size(); ++j) odo_[j] = 0;
      if (candidate_ok()) return true;
    }
  }

  bool candidate_ok() {
    // member ids: base edge e -> e, subedge i -> edge_count + i
    ids_.clear();
    bool any_sub = false;
    for (std::size_t p = 0; p < multiset_.size(); ++p) {
      if (odo_[p] == 0) {
        ids_.push_back(multiset_[p]);
      } else {
        ids_.push_back(h_.edge_count() + (*options_[p])[odo_[p] - 1]);
        any_sub = true;
      }
    }
    if (!any_sub) return false;  // pure full-edge combos belong to phase 0
    std::sort(ids_.begin(), ids_.end());
    if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) return false;
    if (!emitted_.insert(ids_).second) return false;  // same set reachable twice
    current_.clear();
    for (int id : ids_) {
      if (id < h_.edge_count()) {
        current_.push_back(CoverEntry::base(id));
      } else {
        int ci = id - h_.edge_count();
        current_.push_back(CoverEntry::subedge(cat_.cat.entries[ci], cat_.cat.witness[ci]));
      }
    }
    return true;
  }

  struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
      std::size_t h = v.size();
      for (int x : v) h = h * 1000003 + static_cast<std::size_t>(x);
      return h;
    }
  };

  const Hypergraph& h_;
  const ExtendedSubhypergraph& ext_;
  int k_;
  BalsepCatalog& cat_;
  Deadline deadline_;

  int phase_ = 0;
  int l_ = 0;
  std::vector<int> combo_;     // phase 0
  std::vector<int> multiset_;  // phase 1
  std::vector<const std::vector<int>*> options_;
  std::vector<int> odo_;
  bool odometer_live_ = false;
  bool overflow_ = false;
  std::vector<int> ids_;
  Cover current_;
  std::unordered_set<std::vector<int>, VecHash> emitted_;
};

class BalsepSearch {
 public:
  BalsepSearch(const Hypergraph& h, int k, Deadline deadline, const GhdOptions& opts)
      : h_(h), k_(k), deadline_(deadline), opts_(opts), catalog_(h, k, opts.catalog_cap) {}

  SolveResult run() {
    if (k_ < 1) throw std::invalid_argument("k must be >= 1");
    if (h_.edge_count() == 0) {
      Decomposition d;
      d.kind = Decomposition::Kind::GHD;
      d.nodes.push_back(DecompNode{DynBitset(h_.vertex_count()), {}, {}});
      d.root = 0;
      return {Answer::yes, std::move(d)};
    }
    auto d = decompose(ExtendedSubhypergraph::whole(h_));
    if (timed_out_) return {Answer::timeout, std::nullopt};
    if (overflow_) return {Answer::timeout, std::nullopt};  // cannot prove "no" without f(H,k)
    if (!d) return {Answer::no, std::nullopt};
    assert(!has_special(*d));
    repair_cover_to_base(h_, *d);
    return {Answer::yes, std::move(*d)};
  }

 private:
  static bool has_special(const Decomposition& d) {
    for (const auto& n : d.nodes)
      for (const auto& e : n.cover)
        if (e.special) return true;
    return false;
  }

  DecompNode slot_node(const ExtendedSubhypergraph& ext, int slot) const {
    DecompNode n;
    n.bag = ext.slot_vertices(slot);
    if (ext.slot_is_special(slot))
      n.cover.push_back(CoverEntry::special_edge(n.bag));
    else
      n.cover.push_back(CoverEntry::base(slot));
    return n;
  }

  std::optional<Decomposition> decompose(const ExtendedSubhypergraph& ext) {
    if (timed_out_ || overflow_ || deadline_.expired()) {
      timed_out_ = true;
      return std::nullopt;
    }

    std::vector<int> slots = ext.sub_edges.to_vector();
    for (std::size_t i = 0; i < ext.specials.size(); ++i)
      slots.push_back(h_.edge_count() + static_cast<int>(i));

    Decomposition d;
    d.kind = Decomposition::Kind::GHD;
    if (slots.size() == 1) {
      d.nodes.push_back(slot_node(ext, slots[0]));
      d.root = 0;
      return d;
    }
    if (slots.size() == 2) {
      // base edges sort before specials, keeping special nodes as leaves
      d.nodes.push_back(slot_node(ext, slots[0]));
      d.nodes.push_back(slot_node(ext, slots[1]));
      d.nodes[0].children.push_back(1);
      d.root = 0;
      return d;
    }

    SeparatorIterator it(h_, ext, k_, catalog_, deadline_);
    Cover sep;
    while (true) {
      auto status = it.next(sep);
      if (status == SeparatorIterator::Status::timeout) {
        timed_out_ = true;
        return std::nullopt;
      }
      if (status == SeparatorIterator::Status::catalog_overflow) {
        overflow_ = true;
        return std::nullopt;
      }
      if (status == SeparatorIterator::Status::exhausted) return std::nullopt;

      assert(is_balanced_separator(ext, sep));
      if (opts_.on_separator_accepted) opts_.on_separator_accepted(ext, sep);

      DynBitset bag = cover_union(h_, sep);  // B_u = B(lambda_u)
      std::vector<Decomposition> children;
      bool ok = true;
      for (const auto& sub : compute_subhypergraphs(ext, bag)) {
        auto child = decompose(sub);
        if (!child) {
          ok = false;
          break;
        }
        children.push_back(std::move(*child));
      }
      if (timed_out_ || overflow_) return std::nullopt;
      if (!ok) continue;
      return build_ghd(h_, bag, sep, std::move(children));
    }
  }

  const Hypergraph& h_;
  int k_;
  Deadline deadline_;
  const GhdOptions& opts_;
  BalsepCatalog catalog_;
  bool timed_out_ = false;
  bool overflow_ = false;
};

}  // namespace

SolveResult check_ghd_balsep(const Hypergraph& h, int k, Deadline deadline,
                             const GhdOptions& opts) {
  return BalsepSearch(h, k, deadline, opts).run();
}

}  // namespace htk
