#pragma once

#include <optional>
#include <string>
#include <vector>

#include "htk/bitset.hpp"
#include "htk/hypergraph.hpp"
#include "htk/rational.hpp"

namespace htk {

// One cover member: either a real edge of the target hypergraph (edge >= 0)
// or an explicit vertex set (subedge candidates and BalSep special edges,
// which only appear in solver-internal trees; repair removes them before a
// decomposition is returned).
struct CoverEntry {
  int edge = -1;
  DynBitset verts;       // used when edge < 0
  Rat weight = 1;
  int witness = -1;      // base edge containing verts, for subedge repair
  bool special = false;  // BalSep special edge marker

  static CoverEntry base(int e, Rat w = 1) {
    CoverEntry c;
    c.edge = e;
    c.weight = std::move(w);
    return c;
  }
  static CoverEntry subedge(DynBitset vs, int witness) {
    CoverEntry c;
    c.verts = std::move(vs);
    c.witness = witness;
    return c;
  }
  static CoverEntry special_edge(DynBitset vs) {
    CoverEntry c;
    c.verts = std::move(vs);
    c.special = true;
    return c;
  }
};

using Cover = std::vector<CoverEntry>;

const DynBitset& entry_verts(const Hypergraph& h, const CoverEntry& e);
Rat cover_weight(const Cover& c);
// B(gamma): vertices whose accumulated weight reaches 1
DynBitset cover_b_set(const Hypergraph& h, const Cover& c);
// union of member vertex sets (equals B for integral covers)
DynBitset cover_union(const Hypergraph& h, const Cover& c);

struct DecompNode {
  DynBitset bag;
  Cover cover;
  std::vector<int> children;
};

struct Decomposition {
  enum class Kind { HD, GHD, FHD };
  Kind kind = Kind::HD;
  int root = -1;
  std::vector<DecompNode> nodes;

  Rat width() const;
  bool has_nonbase_cover_entries() const;
};

enum class Answer { yes, no, timeout, infeasible };
const char* answer_str(Answer a);

struct SolveResult {
  Answer answer = Answer::no;
  std::optional<Decomposition> decomposition;
};

struct Validation {
  bool ok = true;
  std::string reason;
};

struct ValidateOptions {
  // accept cover members given as explicit vertex sets contained in some base
  // edge (pre-repair GHD trees)
  bool allow_subedges = false;
};

// Checks the decomposition conditions for d.kind against h, width <= k.
// Failures name the violated condition and a witness.
Validation validate_decomposition(const Hypergraph& h, const Decomposition& d, const Rat& k,
                                  const ValidateOptions& opts = {});

// Line-oriented text form: one node per line, pre-order,
// "<'>' x depth> {v1,v2,...} cover: name(=weight),..." with weight omitted when 1.
std::string render_decomposition(const Hypergraph& h, const Decomposition& d);
std::string render_decomposition_json(const Hypergraph& h, const Decomposition& d);

}  // namespace htk
