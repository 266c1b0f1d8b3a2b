#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "guessgraph/bits.hpp"
#include "guessgraph/error.hpp"

namespace guessgraph {

// Undirected simple graph stored as adjacency bit-rows.
class BitGraph {
 public:
  BitGraph() = default;
  explicit BitGraph(std::size_t n) : rows_(n, Bits(n)) {}

  std::size_t size() const { return rows_.size(); }

  void add_edge(std::size_t u, std::size_t v) {
    if (u == v) return;
    rows_[u].set(v);
    rows_[v].set(u);
  }

  bool adjacent(std::size_t u, std::size_t v) const { return rows_[u].test(v); }
  const Bits& row(std::size_t v) const { return rows_[v]; }
  Bits& mutable_row(std::size_t v) { return rows_[v]; }
  std::size_t degree(std::size_t v) const { return rows_[v].count(); }

  std::size_t edge_count() const {
    std::size_t c = 0;
    for (const auto& r : rows_) c += r.count();
    return c / 2;
  }

  bool is_symmetric_irreflexive() const {
    for (std::size_t u = 0; u < size(); ++u) {
      if (rows_[u].test(u)) return false;
      for (std::size_t v = rows_[u].first(); v < size(); v = rows_[u].next(v + 1))
        if (!rows_[v].test(u)) return false;
    }
    return true;
  }

  friend bool operator==(const BitGraph&, const BitGraph&) = default;

 private:
  std::vector<Bits> rows_;
};

inline bool is_independent(const BitGraph& g, const std::vector<std::size_t>& set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (set[i] == set[j] || g.adjacent(set[i], set[j])) return false;
  return true;
}

inline bool is_proper_coloring(const BitGraph& g, const std::vector<int>& colour) {
  if (colour.size() != g.size()) return false;
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (colour[u] < 0) return false;
    const Bits& r = g.row(u);
    for (std::size_t v = r.first(); v < g.size(); v = r.next(v + 1))
      if (colour[u] == colour[v]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Maximum independent set

struct MisOptions {
  std::uint64_t budget = std::uint64_t{1} << 26;  // search nodes
  // Known upper bound on alpha; the search stops as soon as it is reached.
  std::size_t upper_bound = std::numeric_limits<std::size_t>::max();
  // Optional partition of the vertex set into cliques, used as an extra bound.
  const std::vector<Bits>* clique_cover = nullptr;
};

struct MisResult {
  std::size_t alpha = 0;
  std::vector<std::size_t> witness;  // ascending
  bool exact = false;
  std::uint64_t nodes = 0;
};

namespace detail {

// Branch and bound in the style of MCQ/BBMC, run on the complement: candidate
// vertices are greedily partitioned into cliques of g, whose count bounds the
// independent sets still reachable.
class MisSearch {
 public:
  MisSearch(const BitGraph& g, const MisOptions& opt) : g_(g), opt_(opt), n_(g.size()) {
    comp_.reserve(n_);
    const Bits all = Bits::full(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      Bits c = all;
      c.subtract(g.row(v));
      c.reset(v);
      comp_.push_back(std::move(c));
    }
  }

  MisResult run() {
    // Greedy in ascending vertex order.
    Bits p = Bits::full(n_);
    while (p.any()) {
      std::size_t v = p.first();
      best_.push_back(v);
      p &= comp_[v];
    }
    if (n_ > 0 && best_.size() < opt_.upper_bound) {
      Bits all = Bits::full(n_);
      expand(all);
    }
    MisResult r;
    r.witness = best_;
    std::sort(r.witness.begin(), r.witness.end());
    r.alpha = r.witness.size();
    r.exact = !aborted_;
    r.nodes = nodes_;
    return r;
  }

 private:
  bool done() const { return aborted_ || best_.size() >= opt_.upper_bound; }

  std::size_t cover_bound(const Bits& p) const {
    std::size_t c = 0;
    for (const Bits& q : *opt_.clique_cover)
      if (q.intersects(p)) ++c;
    return c;
  }

  void expand(Bits& p) {
    if (++nodes_ > opt_.budget) {
      aborted_ = true;
      return;
    }
    if (opt_.clique_cover && current_.size() + cover_bound(p) <= best_.size()) return;

    std::vector<std::size_t> order;
    std::vector<std::size_t> colour;
    Bits uncoloured = p;
    std::size_t k = 0;
    while (uncoloured.any()) {
      ++k;
      Bits q = uncoloured;
      while (q.any()) {
        std::size_t v = q.first();
        uncoloured.reset(v);
        q.reset(v);
        q &= g_.row(v);
        order.push_back(v);
        colour.push_back(k);
      }
    }

    for (std::size_t i = order.size(); i-- > 0;) {
      if (current_.size() + colour[i] <= best_.size()) return;
      const std::size_t v = order[i];
      current_.push_back(v);
      Bits np = p;
      np &= comp_[v];
      if (np.any()) {
        expand(np);
      } else if (current_.size() > best_.size()) {
        best_ = current_;
      }
      current_.pop_back();
      p.reset(v);
      if (done()) return;
    }
  }

  const BitGraph& g_;
  MisOptions opt_;
  std::size_t n_;
  std::vector<Bits> comp_;
  std::vector<std::size_t> current_, best_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace detail

inline MisResult max_independent_set(const BitGraph& g, const MisOptions& opt = {}) {
  detail::MisSearch search(g, opt);
  return search.run();
}

// ---------------------------------------------------------------------------
// Chromatic number

struct ColoringOptions {
  std::uint64_t budget = std::uint64_t{1} << 24;
  std::size_t lower_bound = 0;
  // Known proper colouring; used as the starting upper bound when better than DSATUR.
  std::optional<std::vector<int>> initial;
};

struct ColoringResult {
  std::size_t chi = 0;
  std::vector<int> colour;
  bool exact = false;
  std::uint64_t nodes = 0;
};

namespace detail {

// DSATUR; ties on saturation go to the lowest vertex index.
class Dsatur {
 public:
  Dsatur(const BitGraph& g, std::size_t max_colours)
      : g_(g), n_(g.size()), cap_(max_colours + 1), colour_(n_, -1),
        seen_(n_ * cap_, 0), saturation_(n_, 0) {}

  std::size_t pick() const {
    std::size_t best = n_;
    for (std::size_t v = 0; v < n_; ++v)
      if (colour_[v] < 0 && (best == n_ || saturation_[v] > saturation_[best])) best = v;
    return best;
  }

  bool allowed(std::size_t v, int c) const { return seen_[v * cap_ + static_cast<std::size_t>(c)] == 0; }

  void assign(std::size_t v, int c) {
    colour_[v] = c;
    const Bits& r = g_.row(v);
    for (std::size_t w = r.first(); w < n_; w = r.next(w + 1))
      if (seen_[w * cap_ + static_cast<std::size_t>(c)]++ == 0) ++saturation_[w];
  }

  void unassign(std::size_t v) {
    const int c = colour_[v];
    colour_[v] = -1;
    const Bits& r = g_.row(v);
    for (std::size_t w = r.first(); w < n_; w = r.next(w + 1))
      if (--seen_[w * cap_ + static_cast<std::size_t>(c)] == 0) --saturation_[w];
  }

  const std::vector<int>& colours() const { return colour_; }
  std::size_t capacity() const { return cap_ - 1; }

 private:
  const BitGraph& g_;
  std::size_t n_;
  std::size_t cap_;
  std::vector<int> colour_;
  std::vector<std::uint32_t> seen_;
  std::vector<std::size_t> saturation_;
};

inline std::vector<int> dsatur_greedy(const BitGraph& g) {
  const std::size_t n = g.size();
  std::size_t max_deg = 0;
  for (std::size_t v = 0; v < n; ++v) max_deg = std::max(max_deg, g.degree(v));
  Dsatur st(g, max_deg + 1);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t v = st.pick();
    int c = 0;
    while (!st.allowed(v, c)) ++c;
    st.assign(v, c);
  }
  return st.colours();
}

}  // namespace detail

inline std::size_t colour_count(const std::vector<int>& colour) {
  int m = -1;
  for (int c : colour) m = std::max(m, c);
  return static_cast<std::size_t>(m + 1);
}

inline ColoringResult chromatic_number(const BitGraph& g, const ColoringOptions& opt = {}) {
  ColoringResult r;
  const std::size_t n = g.size();
  if (n == 0) {
    r.exact = true;
    return r;
  }
  r.colour = detail::dsatur_greedy(g);
  r.chi = colour_count(r.colour);
  if (opt.initial && is_proper_coloring(g, *opt.initial) && colour_count(*opt.initial) < r.chi) {
    r.colour = *opt.initial;
    r.chi = colour_count(r.colour);
  }
  const std::size_t lower = std::max<std::size_t>(opt.lower_bound, 1);
  if (r.chi <= lower) {
    r.exact = true;
    return r;
  }

  detail::Dsatur st(g, r.chi);
  bool aborted = false;
  std::uint64_t nodes = 0;
  std::size_t best = r.chi;
  auto rec = [&](auto&& self, std::size_t coloured, std::size_t used) -> void {
    if (aborted || best <= lower) return;
    if (++nodes > opt.budget) {
      aborted = true;
      return;
    }
    if (coloured == n) {
      best = used;
      r.colour = st.colours();
      return;
    }
    const std::size_t v = st.pick();
    for (std::size_t c = 0; c < used && used < best; ++c) {
      if (!st.allowed(v, static_cast<int>(c))) continue;
      st.assign(v, static_cast<int>(c));
      self(self, coloured + 1, used);
      st.unassign(v);
      if (aborted || best <= lower) return;
    }
    if (used + 1 < best) {
      st.assign(v, static_cast<int>(used));
      self(self, coloured + 1, used + 1);
      st.unassign(v);
    }
  };
  rec(rec, 0, 0);
  r.chi = best;
  r.exact = !aborted;
  r.nodes = nodes;
  return r;
}

// ---------------------------------------------------------------------------
// Graph products. Vertex (u1,u2) has index u1 + |V(G1)|*u2.

enum class GraphProduct { conormal, lexicographic, strong, cartesian };

inline BitGraph graph_product(GraphProduct kind, const BitGraph& g1, const BitGraph& g2) {
  const std::size_t n1 = g1.size(), n2 = g2.size();
  BitGraph out(n1 * n2);
  for (std::size_t u1 = 0; u1 < n1; ++u1)
    for (std::size_t u2 = 0; u2 < n2; ++u2)
      for (std::size_t v1 = 0; v1 < n1; ++v1)
        for (std::size_t v2 = 0; v2 < n2; ++v2) {
          if (u1 == v1 && u2 == v2) continue;
          const bool a1 = g1.adjacent(u1, v1), a2 = g2.adjacent(u2, v2);
          const bool e1 = u1 == v1, e2 = u2 == v2;
          bool adj = false;
          switch (kind) {
            case GraphProduct::conormal: adj = a1 || a2; break;
            case GraphProduct::lexicographic: adj = a1 || (e1 && a2); break;
            case GraphProduct::strong: adj = (e1 && a2) || (e2 && a1) || (a1 && a2); break;
            case GraphProduct::cartesian: adj = (e1 && a2) || (e2 && a1); break;
          }
          if (adj) out.add_edge(u1 + n1 * u2, v1 + n1 * v2);
        }
  return out;
}

}  // namespace guessgraph
