#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "htk/hypergraph.hpp"

namespace htk::sql {

struct Attr {
  std::string alias;
  std::string column;
  bool operator==(const Attr& o) const { return alias == o.alias && column == o.column; }
};

struct Relation {
  std::string alias;
  std::string table;
  std::vector<std::string> attrs;  // inline schema or inferred from references
};

// The conjunctive core of one (sub)query: plain relations, attr=attr joins
// and attr=constant bindings. No subqueries, negation or disjunction remain.
struct SimpleQuery {
  std::string name;
  std::vector<Relation> relations;
  std::vector<std::pair<Attr, Attr>> equalities;
  std::vector<std::pair<Attr, std::string>> constants;
  int line_begin = 0, line_end = 0;
  std::vector<std::string> warnings;  // dropped predicates etc.
};

// Subquery dependency graph of one top-level query; node 0 is the outer
// query "q", nested queries are "s1", "s2", ... in source order. An arc
// (a,b) means a depends on b.
struct DependencyGraph {
  std::vector<std::string> nodes;
  std::vector<std::pair<int, int>> arcs;

  std::vector<std::pair<std::string, std::string>> arc_labels() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto [a, b] : arcs) out.emplace_back(nodes[a], nodes[b]);
    return out;
  }
};

struct ExtractionResult {
  // one graph per top-level query (compound operands are split first)
  std::vector<DependencyGraph> graphs;
  std::vector<SimpleQuery> queries;
  std::vector<std::string> warnings;
};

// Full pipeline over a script: CREATE VIEW statements register views, every
// other statement is split, analyzed and reduced to simple queries.
// base_name seeds SimpleQuery names ("<base>_1", ...).
ExtractionResult extract_sql(std::string_view text, const std::string& base_name = "query");

std::vector<DependencyGraph> build_dependency_graphs(std::string_view text);

std::vector<SimpleQuery> extract_simple_queries(std::string_view text,
                                                const std::string& base_name = "query");

// Vertex-merging conversion: a vertex per (alias, attribute) named
// "alias:column", an edge per relation, equalities merged (representative =
// lexicographically least member), constant-bound vertices deleted, then
// empty and duplicate edges removed.
Hypergraph query_to_hypergraph(const SimpleQuery& q);

}  // namespace htk::sql
