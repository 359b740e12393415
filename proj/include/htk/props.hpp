#pragma once

#include <map>
#include <optional>
#include <string>

#include "htk/deadline.hpp"
#include "htk/hypergraph.hpp"

namespace htk {

// Structural invariants of one instance: the axes of the tabulation the
// analyze subcommand emits.
struct PropertyReport {
  std::string name;
  int vertex_count = 0;
  int edge_count = 0;
  int arity = 0;   // max edge size
  int degree = 0;
  int intersection_size = 0;            // c = 2
  std::map<int, int> multi_intersection;  // c in {3,4}
  std::optional<int> vc_dimension;      // nullopt = timed out
  bool acyclic = false;
};

// max number of edges any vertex occurs in
int degree(const Hypergraph& h);

// smallest d such that every c of the edges intersect in <= d vertices;
// 0 when there are fewer than c edges
int multi_intersection_size(const Hypergraph& h, int c);

// exact VC-dimension; nullopt once the deadline expires
std::optional<int> vc_dimension(const Hypergraph& h, Deadline deadline = {});

// GYO reduction: alpha-acyclicity (equivalently, hw = 1)
bool is_acyclic(const Hypergraph& h);

PropertyReport analyze_properties(const Hypergraph& h, Deadline vc_deadline = {});

// CSV row matching "name,vertices,edges,arity,degree,bip,bmip3,bmip4,vc,acyclic"
std::string property_csv_header();
std::string property_csv_row(const PropertyReport& r);

}  // namespace htk
