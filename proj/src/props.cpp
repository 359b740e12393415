#include "htk/props.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace htk {

int degree(const Hypergraph& h) {
  int d = 0;
  for (int v = 0; v < h.vertex_count(); ++v)
    d = std::max(d, h.incident_edges(v).count());
  return d;
}

namespace {

// DFS over c-subsets; a partial intersection can only shrink, so any branch
// whose intersection is already <= best cannot improve it.
void mis_rec(const Hypergraph& h, int c, int next, int picked, const DynBitset& inter,
             int& best) {
  if (picked == c) {
    best = std::max(best, inter.count());
    return;
  }
  int remaining = c - picked;
  for (int e = next; e + remaining <= h.edge_count(); ++e) {
    DynBitset x = inter & h.edge_set(e);
    if (x.count() <= best) continue;
    mis_rec(h, c, e + 1, picked + 1, x, best);
  }
}

}  // namespace

int multi_intersection_size(const Hypergraph& h, int c) {
  if (h.edge_count() < c) return 0;
  int best = 0;
  for (int e = 0; e + c <= h.edge_count(); ++e) {
    if (h.edge_set(e).count() <= best) continue;
    mis_rec(h, c, e + 1, 1, h.edge_set(e), best);
  }
  return best;
}

namespace {

bool shattered(const Hypergraph& h, const std::vector<int>& x) {
  std::size_t need = std::size_t{1} << x.size();
  std::vector<char> hit(need, 0);
  std::size_t found = 0;
  for (int e = 0; e < h.edge_count() && found < need; ++e) {
    std::size_t pattern = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (h.edge_set(e).test(x[i])) pattern |= std::size_t{1} << i;
    if (!hit[pattern]) {
      hit[pattern] = 1;
      ++found;
    }
  }
  return found == need;
}

}  // namespace

std::optional<int> vc_dimension(const Hypergraph& h, Deadline deadline) {
  if (h.edge_count() == 0) return 0;
  // 2^|X| distinct restrictions are needed, so |X| <= log2(|E|)
  int cap = 0;
  while ((std::int64_t{1} << (cap + 1)) <= h.edge_count()) ++cap;
  cap = std::min(cap, h.vertex_count());

  // level-wise search: a set can be shattered only if all its subsets are,
  // so level q+1 candidates extend shattered q-sets by a larger vertex
  std::vector<std::vector<int>> level;  // shattered sets of the current size
  for (int v = 0; v < h.vertex_count(); ++v) {
    if (deadline.expired()) return std::nullopt;
    std::vector<int> x{v};
    if (shattered(h, x)) level.push_back(std::move(x));
  }
  if (level.empty()) return 0;

  int dim = 1;
  while (dim < cap) {
    std::vector<std::vector<int>> next;
    for (const auto& x : level) {
      for (int v = x.back() + 1; v < h.vertex_count(); ++v) {
        if (deadline.expired()) return std::nullopt;
        std::vector<int> y = x;
        y.push_back(v);
        if (shattered(h, y)) next.push_back(std::move(y));
      }
    }
    if (next.empty()) break;
    level = std::move(next);
    ++dim;
  }
  return dim;
}

bool is_acyclic(const Hypergraph& h) {
  // GYO reduction on copies of the edge sets
  std::vector<DynBitset> edges;
  for (int e = 0; e < h.edge_count(); ++e) edges.push_back(h.edge_set(e));

  bool changed = true;
  while (changed && !edges.empty()) {
    changed = false;
    // remove vertices occurring in exactly one edge
    std::vector<int> occ(h.vertex_count(), 0);
    for (const auto& e : edges)
      e.for_each([&](int v) { ++occ[v]; });
    for (auto& e : edges)
      e.for_each([&](int v) {
        if (occ[v] == 1) {
          e.reset(v);
          changed = true;
        }
      });
    // remove edges contained in another edge (empty ones included)
    for (std::size_t i = 0; i < edges.size();) {
      bool drop = edges[i].none();
      for (std::size_t j = 0; j < edges.size() && !drop; ++j)
        if (i != j && edges[i].subset_of(edges[j]) &&
            (edges[i] != edges[j] || i > j))
          drop = true;
      if (drop) {
        edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
      } else {
        ++i;
      }
    }
    if (edges.size() == 1) return true;  // a single edge always reduces away
  }
  return edges.empty();
}

PropertyReport analyze_properties(const Hypergraph& h, Deadline vc_deadline) {
  PropertyReport r;
  r.name = h.name();
  r.vertex_count = h.vertex_count();
  r.edge_count = h.edge_count();
  for (int e = 0; e < h.edge_count(); ++e)
    r.arity = std::max(r.arity, h.edge_set(e).count());
  r.degree = degree(h);
  r.intersection_size = multi_intersection_size(h, 2);
  r.multi_intersection[3] = multi_intersection_size(h, 3);
  r.multi_intersection[4] = multi_intersection_size(h, 4);
  r.vc_dimension = vc_dimension(h, vc_deadline);
  r.acyclic = is_acyclic(h);
  return r;
}

std::string property_csv_header() {
  return "name,vertices,edges,arity,degree,bip,bmip3,bmip4,vc,acyclic";
}

std::string property_csv_row(const PropertyReport& r) {
  std::ostringstream out;
  out << r.name << ',' << r.vertex_count << ',' << r.edge_count << ',' << r.arity << ','
      << r.degree << ',' << r.intersection_size << ',' << r.multi_intersection.at(3) << ','
      << r.multi_intersection.at(4) << ',';
  if (r.vc_dimension)
    out << *r.vc_dimension;
  else
    out << "timeout";
  out << ',' << (r.acyclic ? "true" : "false");
  return out.str();
}

}  // namespace htk
