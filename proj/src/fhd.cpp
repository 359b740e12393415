#include "htk/fhd.hpp"

#include <cassert>
#include <stdexcept>
#include <unordered_map>

#include "hd_search.hpp"

namespace htk {

namespace {

// Dense two-phase tableau simplex over exact rationals, Bland's rule.
// Solves min c.x s.t. A x <= b, x >= 0.
class Simplex {
 public:
  Simplex(std::vector<std::vector<Rat>> a, std::vector<Rat> b, std::vector<Rat> c)
      : m_(static_cast<int>(a.size())), n_(static_cast<int>(c.size())), c_(std::move(c)) {
    // columns: n_ vars, m_ slacks, artificials for negative-rhs rows, rhs
    art_base_ = n_ + m_;
    int n_art = 0;
    for (const auto& bi : b)
      if (bi < 0) ++n_art;
    cols_ = art_base_ + n_art;
    t_.assign(m_, std::vector<Rat>(cols_ + 1, 0));
    basis_.assign(m_, -1);
    int art = 0;
    for (int i = 0; i < m_; ++i) {
      Rat sign = b[i] < 0 ? -1 : 1;
      for (int j = 0; j < n_; ++j) t_[i][j] = sign * a[i][j];
      t_[i][n_ + i] = sign;
      t_[i][cols_] = sign * b[i];
      if (b[i] < 0) {
        int col = art_base_ + art++;
        t_[i][col] = 1;
        basis_[i] = col;
      } else {
        basis_[i] = n_ + i;
      }
    }
  }

  // returns false when infeasible
  bool solve(std::vector<Rat>& x, Rat& objective) {
    if (cols_ > art_base_) {
      std::vector<Rat> phase1(cols_, 0);
      for (int j = art_base_; j < cols_; ++j) phase1[j] = 1;
      optimize(phase1, /*allow_art=*/true);
      if (objective_value(phase1) != 0) return false;
      // pivot surviving artificials out of the basis where possible
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] < art_base_) continue;
        int col = -1;
        for (int j = 0; j < art_base_ && col < 0; ++j)
          if (t_[i][j] != 0) col = j;
        if (col >= 0) pivot(i, col);
        // an all-zero row is redundant; its artificial stays basic at zero
      }
    }
    std::vector<Rat> phase2(cols_, 0);
    for (int j = 0; j < n_; ++j) phase2[j] = c_[j];
    optimize(phase2, /*allow_art=*/false);
    x.assign(n_, 0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = t_[i][cols_];
    objective = objective_value(phase2);
    return true;
  }

 private:
  Rat objective_value(const std::vector<Rat>& cost) const {
    Rat v = 0;
    for (int i = 0; i < m_; ++i) v += cost[basis_[i]] * t_[i][cols_];
    return v;
  }

  void optimize(const std::vector<Rat>& cost, bool allow_art) {
    int limit = allow_art ? cols_ : art_base_;
    while (true) {
      // reduced costs, entering column by Bland: lowest index, negative cost
      int enter = -1;
      for (int j = 0; j < limit && enter < 0; ++j) {
        Rat r = cost[j];
        for (int i = 0; i < m_; ++i)
          if (cost[basis_[i]] != 0) r -= cost[basis_[i]] * t_[i][j];
        if (r < 0) enter = j;
      }
      if (enter < 0) return;
      int leave = -1;
      Rat best = 0;
      for (int i = 0; i < m_; ++i) {
        if (t_[i][enter] <= 0) continue;
        Rat ratio = t_[i][cols_] / t_[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      // our feasible regions are bounded; an unbounded direction is a bug
      if (leave < 0) throw std::logic_error("simplex: unbounded");
      pivot(leave, enter);
    }
  }

  void pivot(int row, int col) {
    Rat p = t_[row][col];
    assert(p != 0);
    for (auto& v : t_[row]) v /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == row || t_[i][col] == 0) continue;
      Rat f = t_[i][col];
      for (int j = 0; j <= cols_; ++j) t_[i][j] -= f * t_[row][j];
    }
    basis_[row] = col;
  }

  int m_, n_, art_base_, cols_;
  std::vector<Rat> c_;
  std::vector<std::vector<Rat>> t_;
  std::vector<int> basis_;
};

}  // namespace

FractionalCoverSolution fractional_cover(const Hypergraph& h, const DynBitset& target,
                                         const DynBitset& usable_edges) {
  FractionalCoverSolution out;
  out.covered = DynBitset(h.vertex_count());
  if (target.none()) {
    out.covered = cover_b_set(h, {});
    return out;
  }

  std::vector<int> vars = usable_edges.to_vector();
  std::vector<int> verts = target.to_vector();
  for (int v : verts) {
    bool coverable = false;
    for (int e : vars)
      if (h.edge_set(e).test(v)) coverable = true;
    if (!coverable) {
      out.feasible = false;
      return out;
    }
  }

  int n = static_cast<int>(vars.size());
  std::vector<std::vector<Rat>> a;
  std::vector<Rat> b;
  for (int v : verts) {  // coverage: -sum_{e contains v} x_e <= -1
    std::vector<Rat> row(n, 0);
    for (int j = 0; j < n; ++j)
      if (h.edge_set(vars[j]).test(v)) row[j] = -1;
    a.push_back(std::move(row));
    b.push_back(-1);
  }
  for (int j = 0; j < n; ++j) {  // x_e <= 1
    std::vector<Rat> row(n, 0);
    row[j] = 1;
    a.push_back(std::move(row));
    b.push_back(1);
  }
  std::vector<Rat> c(n, 1);

  std::vector<Rat> x;
  Rat obj;
  bool ok = Simplex(std::move(a), std::move(b), std::move(c)).solve(x, obj);
  assert(ok);  // coverability checked above
  (void)ok;

  std::unordered_map<int, Rat> wmap;
  for (int j = 0; j < n; ++j) {
    assert(x[j] >= 0 && x[j] <= 1);
    if (x[j] > 0) {
      out.weights.emplace_back(vars[j], x[j]);
      wmap.emplace(vars[j], x[j]);
    }
  }
  out.total = obj;

  for (int v = 0; v < h.vertex_count(); ++v) {
    Rat s = 0;
    h.incident_edges(v).for_each([&](int e) {
      auto it = wmap.find(e);
      if (it != wmap.end()) s += it->second;
    });
    if (s >= 1) out.covered.set(v);
  }
  assert(target.subset_of(out.covered));
  return out;
}

Decomposition simple_improve_hd(const Hypergraph& h, const Decomposition& d) {
  Decomposition out = d;
  out.kind = Decomposition::Kind::FHD;
  DynBitset all = h.all_edges();
  for (auto& node : out.nodes) {
    FractionalCoverSolution fc = fractional_cover(h, node.bag, all);
    assert(fc.feasible);
    Cover cover;
    for (const auto& [e, w] : fc.weights) cover.push_back(CoverEntry::base(e, w));
    node.cover = std::move(cover);
  }
  return out;
}

SolveResult frac_improve_hd(const Hypergraph& h, int k, const Rat& k_prime, Deadline deadline,
                            const HdOptions& opts) {
  if (!(k_prime > 0 && k_prime < k))
    throw std::invalid_argument("frac_improve_hd requires 0 < k' < k");

  std::unordered_map<DynBitset, bool, DynBitsetHash> lp_ok;
  DynBitset all = h.all_edges();
  detail::SearchConfig cfg;
  cfg.memo_limit = opts.memo_limit;
  cfg.bag_ok = [&](const DynBitset& bag) {
    auto it = lp_ok.find(bag);
    if (it == lp_ok.end()) {
      FractionalCoverSolution fc = fractional_cover(h, bag, all);
      it = lp_ok.emplace(bag, fc.feasible && fc.total <= k_prime).first;
    }
    return it->second;
  };

  SolveResult res = detail::HdSearch(h, k, deadline, std::move(cfg)).run();
  if (res.answer != Answer::yes) return res;
  Decomposition fhd = simple_improve_hd(h, *res.decomposition);
  assert(fhd.width() <= k_prime);
  return {Answer::yes, std::move(fhd)};
}

}  // namespace htk
