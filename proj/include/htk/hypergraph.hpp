#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "htk/bitset.hpp"

namespace htk {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                           std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Immutable named hypergraph. Vertices and edges are interned to dense
// indices at construction; every solver works on the indices only.
class Hypergraph {
 public:
  struct Edge {
    std::string name;
    std::vector<int> verts;  // original order, duplicate-free
    DynBitset set;
  };

  Hypergraph() = default;

  // Normalizing constructor: drops duplicate vertex sets (keeping the first
  // identifier, one warning per drop), rejects duplicate edge identifiers and
  // empty edges. Vertex indices follow first appearance.
  static Hypergraph build(std::string name,
                          const std::vector<std::pair<std::string, std::vector<std::string>>>& edges,
                          std::vector<std::string>* warnings = nullptr);

  const std::string& name() const { return name_; }
  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::string& vertex_name(int v) const { return vertex_names_[v]; }
  int vertex_index(std::string_view name) const;

  const Edge& edge(int e) const { return edges_[e]; }
  const DynBitset& edge_set(int e) const { return edges_[e].set; }
  int edge_index(std::string_view name) const;

  // edges incident to a vertex, as a bitset over edge indices
  const DynBitset& incident_edges(int v) const { return incidence_[v]; }

  DynBitset empty_vertex_set() const { return DynBitset(vertex_count()); }
  DynBitset empty_edge_set() const { return DynBitset(edge_count()); }
  DynBitset all_vertices() const;
  DynBitset all_edges() const;

  // union of the vertex sets of the given edges
  DynBitset vertices_of(const DynBitset& edges) const;

  bool operator==(const Hypergraph& o) const;

 private:
  std::string name_;
  std::vector<std::string> vertex_names_;
  std::unordered_map<std::string, int> vertex_index_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> edge_index_;
  std::vector<DynBitset> incidence_;  // per vertex, over edges
};

// Edge-list format, e.g. "e1(a,b),\ne2(b,c)."; '%' starts a comment.
Hypergraph parse_hypergraph(std::string_view text, std::string name = "",
                            std::vector<std::string>* warnings = nullptr);

// Round-trips through parse_hypergraph.
std::string serialize_hypergraph(const Hypergraph& h);

Hypergraph load_hypergraph_file(const std::string& path,
                                std::vector<std::string>* warnings = nullptr);

}  // namespace htk
