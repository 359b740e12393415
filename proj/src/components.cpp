#include "htk/components.hpp"

#include <algorithm>
#include <numeric>

namespace htk {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

ComponentSplit components(const ExtendedSubhypergraph& ext, const DynBitset& u) {
  const Hypergraph& h = *ext.base;
  std::vector<int> live;  // slots with a vertex outside U
  ComponentSplit out;

  std::vector<int> slots;
  ext.sub_edges.for_each([&](int e) { slots.push_back(e); });
  for (std::size_t i = 0; i < ext.specials.size(); ++i)
    slots.push_back(h.edge_count() + static_cast<int>(i));

  for (int s : slots) {
    if (ext.slot_vertices(s).subset_of(u))
      out.contained.push_back(s);
    else
      live.push_back(s);
  }

  // union slots sharing a vertex outside U
  UnionFind uf(static_cast<int>(live.size()));
  std::vector<std::vector<int>> by_vertex(h.vertex_count());
  for (std::size_t i = 0; i < live.size(); ++i) {
    ext.slot_vertices(live[i]).for_each([&](int v) {
      if (!u.test(v)) by_vertex[v].push_back(static_cast<int>(i));
    });
  }
  for (const auto& bucket : by_vertex)
    for (std::size_t j = 1; j < bucket.size(); ++j) uf.unite(bucket[0], bucket[j]);

  std::vector<std::vector<int>> groups(live.size());
  for (std::size_t i = 0; i < live.size(); ++i) groups[uf.find(static_cast<int>(i))].push_back(live[i]);
  for (auto& g : groups) {
    if (g.empty()) continue;
    std::sort(g.begin(), g.end());
    out.parts.push_back(std::move(g));
  }
  std::sort(out.parts.begin(), out.parts.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

bool is_balanced_separator(const ExtendedSubhypergraph& ext, const DynBitset& u) {
  int total = ext.size();
  for (const auto& part : components(ext, u).parts)
    if (2 * static_cast<int>(part.size()) > total) return false;
  return true;
}

bool is_balanced_separator(const ExtendedSubhypergraph& ext, const Cover& sep) {
  DynBitset u = cover_union(*ext.base, sep);
  return is_balanced_separator(ext, u);
}

}  // namespace htk
