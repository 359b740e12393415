#include "htk/decomposition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

namespace htk {

const DynBitset& entry_verts(const Hypergraph& h, const CoverEntry& e) {
  return e.edge >= 0 ? h.edge_set(e.edge) : e.verts;
}

Rat cover_weight(const Cover& c) {
  Rat w = 0;
  for (const auto& e : c) w += e.weight;
  return w;
}

DynBitset cover_b_set(const Hypergraph& h, const Cover& c) {
  std::map<int, Rat> acc;
  for (const auto& e : c)
    entry_verts(h, e).for_each([&](int v) { acc[v] += e.weight; });
  DynBitset b(h.vertex_count());
  for (const auto& [v, w] : acc)
    if (w >= 1) b.set(v);
  return b;
}

DynBitset cover_union(const Hypergraph& h, const Cover& c) {
  DynBitset b(h.vertex_count());
  for (const auto& e : c) b |= entry_verts(h, e);
  return b;
}

Rat Decomposition::width() const {
  Rat w = 0;
  for (const auto& n : nodes) w = std::max(w, cover_weight(n.cover));
  return w;
}

bool Decomposition::has_nonbase_cover_entries() const {
  for (const auto& n : nodes)
    for (const auto& e : n.cover)
      if (e.edge < 0) return true;
  return false;
}

const char* answer_str(Answer a) {
  switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::timeout: return "timeout";
    case Answer::infeasible: return "infeasible";
  }
  return "?";
}

namespace {

// union of bags in each subtree, by iterative post-order
std::vector<DynBitset> subtree_vertex_unions(const Decomposition& d, int nverts) {
  std::vector<DynBitset> acc(d.nodes.size(), DynBitset(nverts));
  if (d.root < 0) return acc;
  std::vector<std::pair<int, bool>> stack{{d.root, false}};
  while (!stack.empty()) {
    auto [u, done] = stack.back();
    stack.pop_back();
    if (done) {
      acc[u] = d.nodes[u].bag;
      for (int c : d.nodes[u].children) acc[u] |= acc[c];
    } else {
      stack.emplace_back(u, true);
      for (int c : d.nodes[u].children) stack.emplace_back(c, false);
    }
  }
  return acc;
}

}  // namespace

Validation validate_decomposition(const Hypergraph& h, const Decomposition& d, const Rat& k,
                                  const ValidateOptions& opts) {
  auto fail = [](std::string why) { return Validation{false, std::move(why)}; };

  if (d.root < 0 || d.nodes.empty()) {
    if (h.edge_count() == 0) return {};
    return fail("empty decomposition for non-empty hypergraph");
  }
  if (d.root >= static_cast<int>(d.nodes.size())) return fail("root index out of range");

  // structural sanity: every node reachable exactly once from the root
  std::vector<int> seen(d.nodes.size(), 0);
  std::vector<int> order;
  std::vector<int> stack{d.root};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    if (u < 0 || u >= static_cast<int>(d.nodes.size())) return fail("child index out of range");
    if (seen[u]++) return fail("node visited twice (not a tree)");
    order.push_back(u);
    for (int c : d.nodes[u].children) stack.push_back(c);
  }
  if (order.size() != d.nodes.size()) return fail("unreachable nodes (not a tree)");

  bool integral = d.kind != Decomposition::Kind::FHD;
  for (int u = 0; u < static_cast<int>(d.nodes.size()); ++u) {
    for (const auto& e : d.nodes[u].cover) {
      if (e.special) return fail("special edge left in cover at node " + std::to_string(u));
      if (e.edge >= h.edge_count()) return fail("cover references unknown edge");
      if (e.edge < 0) {
        if (!opts.allow_subedges)
          return fail("non-base cover member at node " + std::to_string(u));
        bool contained = false;
        for (int b = 0; b < h.edge_count() && !contained; ++b)
          contained = e.verts.subset_of(h.edge_set(b));
        if (!contained) return fail("subedge not contained in any base edge");
      }
      if (e.weight < 0 || e.weight > 1) return fail("cover weight outside [0,1]");
      if (integral && e.weight != 1)
        return fail("non-integral weight in " +
                    std::string(d.kind == Decomposition::Kind::HD ? "HD" : "GHD"));
    }
  }

  // (1) every edge inside some bag
  for (int e = 0; e < h.edge_count(); ++e) {
    bool covered = false;
    for (const auto& n : d.nodes)
      if (h.edge_set(e).subset_of(n.bag)) {
        covered = true;
        break;
      }
    if (!covered) return fail("condition (1) violated for edge " + h.edge(e).name);
  }

  // (2) connectedness: for each vertex the nodes containing it form a subtree
  {
    std::vector<std::vector<int>> adj(d.nodes.size());
    for (int u = 0; u < static_cast<int>(d.nodes.size()); ++u)
      for (int c : d.nodes[u].children) {
        adj[u].push_back(c);
        adj[c].push_back(u);
      }
    for (int v = 0; v < h.vertex_count(); ++v) {
      std::vector<int> holders;
      for (int u = 0; u < static_cast<int>(d.nodes.size()); ++u)
        if (d.nodes[u].bag.test(v)) holders.push_back(u);
      if (holders.size() <= 1) continue;
      std::vector<char> in(d.nodes.size(), 0), vis(d.nodes.size(), 0);
      for (int u : holders) in[u] = 1;
      std::vector<int> bfs{holders[0]};
      vis[holders[0]] = 1;
      std::size_t reached = 1;
      while (!bfs.empty()) {
        int u = bfs.back();
        bfs.pop_back();
        for (int w : adj[u])
          if (in[w] && !vis[w]) {
            vis[w] = 1;
            ++reached;
            bfs.push_back(w);
          }
      }
      if (reached != holders.size())
        return fail("condition (2) violated for vertex " + h.vertex_name(v));
    }
  }

  // (3) bags covered by their cover
  for (int u = 0; u < static_cast<int>(d.nodes.size()); ++u) {
    DynBitset b = cover_b_set(h, d.nodes[u].cover);
    if (!d.nodes[u].bag.subset_of(b)) {
      int v = (d.nodes[u].bag - b).find_first();
      return fail("condition (3) violated at node " + std::to_string(u) + " (vertex " +
                  h.vertex_name(v) + " not covered)");
    }
  }

  // (4) special condition, HDs only
  if (d.kind == Decomposition::Kind::HD) {
    auto sub = subtree_vertex_unions(d, h.vertex_count());
    for (int u = 0; u < static_cast<int>(d.nodes.size()); ++u) {
      DynBitset viol = (sub[u] & cover_b_set(h, d.nodes[u].cover)) - d.nodes[u].bag;
      if (viol.any())
        return fail("condition (4) violated at node " + std::to_string(u) + " (vertex " +
                    h.vertex_name(viol.find_first()) + ")");
    }
  }

  Rat w = d.width();
  if (w > k) return fail("width " + rat_str(w) + " > " + rat_str(k));
  return {};
}

namespace {

std::string entry_label(const Hypergraph& h, const CoverEntry& e) {
  if (e.edge >= 0) return h.edge(e.edge).name;
  std::string s = e.special ? "sp{" : "sub{";
  bool first = true;
  e.verts.for_each([&](int v) {
    if (!first) s += ',';
    first = false;
    s += h.vertex_name(v);
  });
  return s + "}";
}

void render_node(const Hypergraph& h, const Decomposition& d, int u, int depth,
                 std::ostringstream& out) {
  if (depth > 0) out << std::string(depth, '>') << ' ';
  out << '{';
  bool first = true;
  d.nodes[u].bag.for_each([&](int v) {
    if (!first) out << ',';
    first = false;
    out << h.vertex_name(v);
  });
  out << "} cover: ";
  Cover cov = d.nodes[u].cover;
  std::sort(cov.begin(), cov.end(),
            [](const CoverEntry& a, const CoverEntry& b) { return a.edge < b.edge; });
  for (std::size_t i = 0; i < cov.size(); ++i) {
    if (i) out << ',';
    out << entry_label(h, cov[i]);
    if (cov[i].weight != 1) out << "(=" << rat_str(cov[i].weight) << ')';
  }
  out << '\n';
  for (int c : d.nodes[u].children) render_node(h, d, c, depth + 1, out);
}

}  // namespace

std::string render_decomposition(const Hypergraph& h, const Decomposition& d) {
  std::ostringstream out;
  if (d.root >= 0) render_node(h, d, d.root, 0, out);
  return out.str();
}

std::string render_decomposition_json(const Hypergraph& h, const Decomposition& d) {
  using nlohmann::json;
  std::function<json(int)> node_json = [&](int u) {
    json j;
    std::vector<std::string> bag;
    d.nodes[u].bag.for_each([&](int v) { bag.push_back(h.vertex_name(v)); });
    j["bag"] = bag;
    json cov = json::array();
    Cover sorted = d.nodes[u].cover;
    std::sort(sorted.begin(), sorted.end(),
              [](const CoverEntry& a, const CoverEntry& b) { return a.edge < b.edge; });
    for (const auto& e : sorted)
      cov.push_back({{"edge", entry_label(h, e)}, {"weight", rat_str(e.weight)}});
    j["cover"] = cov;
    json ch = json::array();
    for (int c : d.nodes[u].children) ch.push_back(node_json(c));
    j["children"] = ch;
    return j;
  };
  nlohmann::json j;
  j["kind"] = d.kind == Decomposition::Kind::HD    ? "HD"
              : d.kind == Decomposition::Kind::GHD ? "GHD"
                                                   : "FHD";
  j["width"] = rat_str(d.width());
  j["tree"] = d.root >= 0 ? node_json(d.root) : nlohmann::json(nullptr);
  return j.dump(2);
}

}  // namespace htk
