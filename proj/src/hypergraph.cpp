#include "htk/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace htk {

Hypergraph Hypergraph::build(
    std::string name,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& edges,
    std::vector<std::string>* warnings) {
  Hypergraph h;
  h.name_ = std::move(name);

  // intern vertices in first-appearance order
  for (const auto& [ename, verts] : edges) {
    if (verts.empty()) throw std::invalid_argument("empty edge '" + ename + "'");
    for (const auto& v : verts) {
      if (!h.vertex_index_.count(v)) {
        h.vertex_index_.emplace(v, static_cast<int>(h.vertex_names_.size()));
        h.vertex_names_.push_back(v);
      }
    }
  }

  int n = h.vertex_count();
  std::vector<Edge> kept;
  for (const auto& [ename, verts] : edges) {
    if (h.edge_index_.count(ename))
      throw std::invalid_argument("duplicate edge identifier '" + ename + "'");
    Edge e;
    e.name = ename;
    e.set = DynBitset(n);
    for (const auto& v : verts) {
      int vi = h.vertex_index_.at(v);
      if (!e.set.test(vi)) {
        e.set.set(vi);
        e.verts.push_back(vi);
      }
    }
    // duplicate vertex sets are dropped, first identifier wins
    auto dup = std::find_if(kept.begin(), kept.end(),
                            [&](const Edge& o) { return o.set == e.set; });
    if (dup != kept.end()) {
      if (warnings)
        warnings->push_back("duplicate edge '" + ename + "' dropped (same vertex set as '" +
                            dup->name + "')");
      continue;
    }
    h.edge_index_.emplace(ename, static_cast<int>(kept.size()));
    kept.push_back(std::move(e));
  }
  h.edges_ = std::move(kept);

  h.incidence_.assign(n, DynBitset(h.edge_count()));
  for (int ei = 0; ei < h.edge_count(); ++ei)
    for (int v : h.edges_[ei].verts) h.incidence_[v].set(ei);

  // dropping duplicate edges cannot orphan a vertex (the kept copy covers it),
  // so the no-isolated-vertices invariant holds by construction
  return h;
}

int Hypergraph::vertex_index(std::string_view name) const {
  auto it = vertex_index_.find(std::string(name));
  return it == vertex_index_.end() ? -1 : it->second;
}

int Hypergraph::edge_index(std::string_view name) const {
  auto it = edge_index_.find(std::string(name));
  return it == edge_index_.end() ? -1 : it->second;
}

DynBitset Hypergraph::all_vertices() const {
  DynBitset b(vertex_count());
  for (int i = 0; i < vertex_count(); ++i) b.set(i);
  return b;
}

DynBitset Hypergraph::all_edges() const {
  DynBitset b(edge_count());
  for (int i = 0; i < edge_count(); ++i) b.set(i);
  return b;
}

DynBitset Hypergraph::vertices_of(const DynBitset& edges) const {
  DynBitset b(vertex_count());
  edges.for_each([&](int e) { b |= edges_[e].set; });
  return b;
}

bool Hypergraph::operator==(const Hypergraph& o) const {
  if (vertex_names_ != o.vertex_names_ || edge_count() != o.edge_count()) return false;
  for (int i = 0; i < edge_count(); ++i)
    if (edges_[i].name != o.edges_[i].name || edges_[i].set != o.edges_[i].set) return false;
  return true;
}

namespace {

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1, col = 1;

  void advance() {
    if (pos < text.size()) {
      if (text[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  void skip_ws_and_comments() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '%') {
        while (pos < text.size() && text[pos] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  static bool ident_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '_' || c == ':';
  }
  static bool ident_cont(char c) { return ident_start(c) || c == '-'; }

  bool eof() {
    skip_ws_and_comments();
    return pos >= text.size();
  }

  char peek() {
    skip_ws_and_comments();
    return pos < text.size() ? text[pos] : '\0';
  }

  void expect(char c, const char* what) {
    skip_ws_and_comments();
    if (pos >= text.size() || text[pos] != c)
      throw ParseError(std::string("expected ") + what, line, col);
    advance();
  }

  std::string ident() {
    skip_ws_and_comments();
    if (pos >= text.size() || !ident_start(text[pos]))
      throw ParseError("expected identifier", line, col);
    std::string s;
    while (pos < text.size() && ident_cont(text[pos])) {
      s.push_back(text[pos]);
      advance();
    }
    return s;
  }
};

}  // namespace

Hypergraph parse_hypergraph(std::string_view text, std::string name,
                            std::vector<std::string>* warnings) {
  Lexer lx{text};
  std::vector<std::pair<std::string, std::vector<std::string>>> edges;
  std::vector<std::string> seen_names;

  while (!lx.eof() && lx.peek() != '.') {
    int eline = lx.line, ecol = lx.col;
    std::string ename = lx.ident();
    lx.expect('(', "'('");
    if (lx.peek() == ')') throw ParseError("empty edge '" + ename + "'", eline, ecol);
    std::vector<std::string> verts;
    verts.push_back(lx.ident());
    while (lx.peek() == ',') {
      lx.expect(',', "','");
      verts.push_back(lx.ident());
    }
    lx.expect(')', "')'");
    if (std::find(seen_names.begin(), seen_names.end(), ename) != seen_names.end())
      throw ParseError("duplicate edge identifier '" + ename + "'", eline, ecol);
    seen_names.push_back(ename);
    edges.emplace_back(std::move(ename), std::move(verts));
    if (lx.peek() == ',') {
      lx.expect(',', "','");
    } else {
      break;
    }
  }
  if (lx.peek() == '.') lx.expect('.', "'.'");
  if (!lx.eof()) throw ParseError("trailing input", lx.line, lx.col);

  return Hypergraph::build(std::move(name), edges, warnings);
}

std::string serialize_hypergraph(const Hypergraph& h) {
  std::ostringstream out;
  for (int i = 0; i < h.edge_count(); ++i) {
    const auto& e = h.edge(i);
    if (i) out << ",\n";
    out << e.name << '(';
    for (std::size_t j = 0; j < e.verts.size(); ++j) {
      if (j) out << ',';
      out << h.vertex_name(e.verts[j]);
    }
    out << ')';
  }
  out << '.';
  return out.str();
}

Hypergraph load_hypergraph_file(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string stem = path;
  if (auto p = stem.find_last_of("/\\"); p != std::string::npos) stem = stem.substr(p + 1);
  if (auto p = stem.rfind('.'); p != std::string::npos) stem = stem.substr(0, p);
  return parse_hypergraph(ss.str(), stem, warnings);
}

}  // namespace htk
