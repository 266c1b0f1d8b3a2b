#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "guessgraph/error.hpp"

namespace guessgraph {

struct Edge {
  int from = 0;
  int to = 0;
  auto operator<=>(const Edge&) const = default;
};

// Simple digraph on vertices 0..n-1: no loops, no repeated edges, bidirectional
// pairs allowed. Immutable once built.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n) : n_(n), out_(static_cast<std::size_t>(n)), in_(static_cast<std::size_t>(n)) {
    if (n < 0) throw Error(Errc::bad_params, "negative vertex count");
  }

  // Duplicates are collapsed; loops and out-of-range ids are rejected.
  static Digraph from_edges(int n, std::span<const Edge> edges) {
    Digraph d(n);
    for (const Edge& e : edges) {
      if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
        throw Error(Errc::vertex_out_of_range, "edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
                                                   ") outside 0.." + std::to_string(n - 1));
      if (e.from == e.to) throw Error(Errc::loop_edge, "loop at vertex " + std::to_string(e.from));
      d.out_[e.from].push_back(e.to);
      d.in_[e.to].push_back(e.from);
    }
    for (auto* lists : {&d.out_, &d.in_}) {
      for (auto& l : *lists) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
      }
    }
    for (const auto& l : d.out_) d.edge_count_ += l.size();
    return d;
  }

  int size() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }

  const std::vector<int>& out(int v) const { return out_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& in(int v) const { return in_[static_cast<std::size_t>(v)]; }
  int in_degree(int v) const { return static_cast<int>(in(v).size()); }
  int out_degree(int v) const { return static_cast<int>(out(v).size()); }

  bool has_edge(int u, int v) const {
    const auto& o = out(u);
    return std::binary_search(o.begin(), o.end(), v);
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> es;
    es.reserve(edge_count_);
    for (int u = 0; u < n_; ++u)
      for (int v : out(u)) es.push_back({u, v});
    return es;
  }

  // Subgraph induced by `vertices`; new vertex i is vertices[i].
  Digraph induced(std::span<const int> vertices) const {
    std::vector<int> local(static_cast<std::size_t>(n_), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<int>(i);
    std::vector<Edge> es;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (int v : out(vertices[i]))
        if (local[v] >= 0) es.push_back({static_cast<int>(i), local[v]});
    return from_edges(static_cast<int>(vertices.size()), es);
  }

  // Bitmask of in-neighbours; only valid for n <= 64.
  std::uint64_t in_mask(int v) const { return to_mask(in(v)); }
  std::uint64_t out_mask(int v) const { return to_mask(out(v)); }

  friend bool operator==(const Digraph& a, const Digraph& b) { return a.n_ == b.n_ && a.out_ == b.out_; }

 private:
  static std::uint64_t to_mask(const std::vector<int>& l) {
    std::uint64_t m = 0;
    for (int u : l) m |= std::uint64_t{1} << u;
    return m;
  }

  int n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

inline Digraph from_edge_list(int n, std::span<const Edge> edges) { return Digraph::from_edges(n, edges); }

// ---------------------------------------------------------------------------
// Standard families

enum class Family { empty, clique, cycle, path, complete_bipartite };

inline Digraph empty_digraph(int n) {
  if (n < 1) throw Error(Errc::bad_params, "empty digraph needs n >= 1");
  return Digraph(n);
}

inline Digraph clique(int n) {
  if (n < 1) throw Error(Errc::bad_params, "clique needs n >= 1");
  std::vector<Edge> es;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) es.push_back({u, v});
  return Digraph::from_edges(n, es);
}

inline Digraph cycle(int n) {
  if (n < 2) throw Error(Errc::bad_params, "cycle needs n >= 2");
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.push_back({i, (i + 1) % n});
  return Digraph::from_edges(n, es);
}

inline Digraph path(int n) {
  if (n < 1) throw Error(Errc::bad_params, "path needs n >= 1");
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  return Digraph::from_edges(n, es);
}

// Parts {0..m-1} and {m..m+n-1}, every cross pair joined in both directions.
inline Digraph complete_bipartite(int m, int n) {
  if (m < 1 || n < 1) throw Error(Errc::bad_params, "complete bipartite needs both parts >= 1");
  std::vector<Edge> es;
  for (int u = 0; u < m; ++u)
    for (int v = m; v < m + n; ++v) {
      es.push_back({u, v});
      es.push_back({v, u});
    }
  return Digraph::from_edges(m + n, es);
}

inline Digraph standard(Family kind, std::span<const int> sizes) {
  auto need = [&](std::size_t k) {
    if (sizes.size() != k) throw Error(Errc::bad_params, "wrong number of size parameters");
  };
  switch (kind) {
    case Family::empty: need(1); return empty_digraph(sizes[0]);
    case Family::clique: need(1); return clique(sizes[0]);
    case Family::cycle: need(1); return cycle(sizes[0]);
    case Family::path: need(1); return path(sizes[0]);
    case Family::complete_bipartite: need(2); return complete_bipartite(sizes[0], sizes[1]);
  }
  throw Error(Errc::bad_params, "unknown family");
}

// ---------------------------------------------------------------------------
// Structure

struct StructureReport {
  int n = 0;
  std::size_t edge_count = 0;
  int min_in_degree = 0;
  int max_in_degree = 0;
  int min_out_degree = 0;
  int max_out_degree = 0;
  bool regular_in_out = false;
  std::size_t bidirectional_edge_count = 0;  // unordered pairs
  bool is_tournament = false;
  std::optional<int> girth;  // empty when the digraph is acyclic
  bool strong = false;
  int component_count = 0;
};

struct Condensation {
  // Strong components in reverse topological order of the condensation.
  std::vector<std::vector<int>> components;
  std::vector<int> component_of;
  Digraph dag;
};

inline Condensation strong_components(const Digraph& d) {
  const int n = d.size();
  Condensation c;
  c.component_of.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  int counter = 0;

  // Iterative Tarjan; frame = (vertex, next out-edge position).
  std::vector<std::pair<int, std::size_t>> frames;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto& out = d.out(v);
      if (pos < out.size()) {
        int w = out[pos++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          c.component_of[w] = static_cast<int>(c.components.size());
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        c.components.push_back(std::move(comp));
      }
      int finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        int parent = frames.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }

  std::vector<Edge> es;
  for (const Edge& e : d.edges()) {
    int a = c.component_of[e.from], b = c.component_of[e.to];
    if (a != b) es.push_back({a, b});
  }
  c.dag = Digraph::from_edges(static_cast<int>(c.components.size()), es);
  return c;
}

// Shortest directed cycle length (a bidirectional pair counts as 2).
inline std::optional<int> girth(const Digraph& d) {
  const int n = d.size();
  std::optional<int> best;
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<int> queue;
  for (int src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    queue.assign(1, src);
    for (std::size_t h = 0; h < queue.size(); ++h) {
      int u = queue[h];
      if (best && dist[u] + 1 >= *best) break;
      for (int w : d.out(u)) {
        if (w == src) {
          best = dist[u] + 1;
          break;
        }
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
  }
  return best;
}

inline StructureReport structure_report(const Digraph& d) {
  StructureReport r;
  r.n = d.size();
  r.edge_count = d.edge_count();
  if (r.n > 0) {
    r.min_in_degree = r.min_out_degree = r.n;
    for (int v = 0; v < r.n; ++v) {
      r.min_in_degree = std::min(r.min_in_degree, d.in_degree(v));
      r.max_in_degree = std::max(r.max_in_degree, d.in_degree(v));
      r.min_out_degree = std::min(r.min_out_degree, d.out_degree(v));
      r.max_out_degree = std::max(r.max_out_degree, d.out_degree(v));
    }
  }
  r.regular_in_out = r.min_in_degree == r.max_in_degree && r.min_out_degree == r.max_out_degree &&
                     r.min_in_degree == r.min_out_degree;
  for (const Edge& e : d.edges())
    if (e.from < e.to && d.has_edge(e.to, e.from)) ++r.bidirectional_edge_count;
  const std::size_t pairs = static_cast<std::size_t>(r.n) * static_cast<std::size_t>(r.n > 0 ? r.n - 1 : 0) / 2;
  r.is_tournament = r.bidirectional_edge_count == 0 && r.edge_count == pairs;
  r.girth = girth(d);
  r.component_count = static_cast<int>(strong_components(d).components.size());
  r.strong = r.component_count == 1;
  return r;
}

// True when the vertices induce an acyclic subgraph (Kahn's algorithm).
inline bool is_acyclic_subset(const Digraph& d, std::span<const int> vertices) {
  std::vector<int> local(static_cast<std::size_t>(d.size()), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<int>(i);
  std::vector<int> indeg(vertices.size(), 0);
  for (int v : vertices)
    for (int w : d.out(v))
      if (local[w] >= 0) ++indeg[local[w]];
  std::vector<int> ready;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (indeg[i] == 0) ready.push_back(vertices[i]);
  std::size_t seen = 0;
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    ++seen;
    for (int w : d.out(v))
      if (local[w] >= 0 && --indeg[local[w]] == 0) ready.push_back(w);
  }
  return seen == vertices.size();
}

inline bool is_acyclic(const Digraph& d) {
  std::vector<int> all(static_cast<std::size_t>(d.size()));
  std::iota(all.begin(), all.end(), 0);
  return is_acyclic_subset(d, all);
}

// ---------------------------------------------------------------------------
// Maximum induced acyclic subgraph

struct MasResult {
  int size = 0;
  std::vector<int> witness;  // sorted
  bool exact = false;
  std::uint64_t nodes = 0;
};

namespace detail {

// Repeatedly take a vertex of least remaining in-degree and discard its
// remaining in-neighbours. Result is acyclic with size >= n/(max in-degree+1).
inline std::vector<int> greedy_acyclic(const Digraph& d) {
  const int n = d.size();
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  std::vector<int> indeg(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) indeg[v] = d.in_degree(v);
  std::vector<int> chosen;
  auto kill = [&](int u) {
    alive[u] = 0;
    for (int w : d.out(u)) --indeg[w];
  };
  while (true) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (alive[v] && (pick < 0 || indeg[v] < indeg[pick])) pick = v;
    if (pick < 0) break;
    chosen.push_back(pick);
    std::vector<int> drop;
    for (int u : d.in(pick))
      if (alive[u]) drop.push_back(u);
    kill(pick);
    for (int u : drop) kill(u);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

class MasSearch {
 public:
  MasSearch(const Digraph& d, std::uint64_t budget) : d_(d), k_(d.size()), budget_(budget) {
    for (int v = 0; v < k_; ++v) {
      out_.push_back(d.out_mask(v));
      in_.push_back(d.in_mask(v));
    }
  }

  void run(std::uint64_t seed_set) {
    best_set_ = seed_set;
    best_ = std::popcount(seed_set) - 1;
    rec(0, 0);
    if (std::popcount(best_set_) > best_) best_ = std::popcount(best_set_);
  }

  std::uint64_t best_set() const { return best_set_; }
  bool aborted() const { return aborted_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool closes_cycle(std::uint64_t s, int v) const {
    std::uint64_t reached = out_[v] & s;
    std::uint64_t frontier = reached;
    while (frontier) {
      if (reached & in_[v]) return true;
      int u = std::countr_zero(frontier);
      frontier &= frontier - 1;
      std::uint64_t fresh = out_[u] & s & ~reached;
      reached |= fresh;
      frontier |= fresh;
    }
    return (reached & in_[v]) != 0;
  }

  void rec(std::uint64_t s, int from) {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    const int size = std::popcount(s);
    if (size > best_) {
      best_ = size;
      best_set_ = s;
    }
    std::uint64_t cand = 0;
    for (int v = from; v < k_; ++v)
      if (!closes_cycle(s, v)) cand |= std::uint64_t{1} << v;
    if (size + std::popcount(cand) <= best_) return;
    const int v = std::countr_zero(cand);
    rec(s | (std::uint64_t{1} << v), v + 1);
    rec(s, v + 1);
  }

  const Digraph& d_;
  int k_;
  std::uint64_t budget_;
  std::vector<std::uint64_t> out_, in_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  int best_ = -1;
  std::uint64_t best_set_ = 0;
};

}  // namespace detail

// Exact branch-and-bound per strong component (components are independent:
// every cycle lies inside one). Components above 64 vertices or exhausting the
// node budget fall back to the greedy bound and clear `exact`. With an exact
// result the witness is the lexicographically smallest optimum.
inline MasResult mas_exact(const Digraph& d, std::uint64_t budget = std::uint64_t{1} << 25) {
  MasResult r;
  r.exact = true;
  const Condensation c = strong_components(d);
  for (const auto& comp : c.components) {
    if (comp.size() == 1) {
      r.witness.push_back(comp[0]);
      continue;
    }
    const Digraph sub = d.induced(comp);
    std::vector<int> local;
    if (sub.size() <= 64) {
      detail::MasSearch search(sub, budget > r.nodes ? budget - r.nodes : 0);
      std::uint64_t seed = 0;
      for (int v : detail::greedy_acyclic(sub)) seed |= std::uint64_t{1} << v;
      search.run(seed);
      r.nodes += search.nodes();
      if (search.aborted()) r.exact = false;
      for (std::uint64_t m = search.best_set(); m; m &= m - 1) local.push_back(std::countr_zero(m));
    } else {
      r.exact = false;
      local = detail::greedy_acyclic(sub);
    }
    for (int v : local) r.witness.push_back(comp[v]);
  }
  std::sort(r.witness.begin(), r.witness.end());
  r.size = static_cast<int>(r.witness.size());
  return r;
}

// ---------------------------------------------------------------------------
// Combinators

enum class UnionKind { disjoint, unidirectional, bidirectional };

// D1 keeps ids 0..n1-1, D2 is shifted by n1.
inline Digraph digraph_union(UnionKind kind, const Digraph& d1, const Digraph& d2) {
  const int n1 = d1.size(), n2 = d2.size();
  std::vector<Edge> es = d1.edges();
  for (const Edge& e : d2.edges()) es.push_back({e.from + n1, e.to + n1});
  if (kind != UnionKind::disjoint) {
    for (int u = 0; u < n1; ++u)
      for (int v = n1; v < n1 + n2; ++v) {
        es.push_back({u, v});
        if (kind == UnionKind::bidirectional) es.push_back({v, u});
      }
  }
  return Digraph::from_edges(n1 + n2, es);
}

// Vertex (u1,u2) has id u1*n2+u2; (u1,u2)->(v1,v2) iff each coordinate is
// either fixed or an edge, and not both fixed.
inline Digraph strong_product(const Digraph& d1, const Digraph& d2) {
  const int n1 = d1.size(), n2 = d2.size();
  std::vector<Edge> es;
  for (int u1 = 0; u1 < n1; ++u1) {
    std::vector<int> c1 = d1.out(u1);
    c1.push_back(u1);
    for (int u2 = 0; u2 < n2; ++u2) {
      std::vector<int> c2 = d2.out(u2);
      c2.push_back(u2);
      for (int v1 : c1)
        for (int v2 : c2)
          if (v1 != u1 || v2 != u2) es.push_back({u1 * n2 + u2, v1 * n2 + v2});
    }
  }
  return Digraph::from_edges(n1 * n2, es);
}

// k-fold strong power; coordinates ordered most-significant first.
inline Digraph strong_power(const Digraph& d, int k) {
  if (k < 1) throw Error(Errc::bad_params, "strong power needs k >= 1");
  Digraph r = d;
  for (int i = 1; i < k; ++i) r = strong_product(r, d);
  return r;
}

// Vertex (v,i) has id v*k+i; ((u,i),(v,j)) is an edge iff (u,v) is.
inline Digraph k_expand(const Digraph& d, int k) {
  if (k < 1) throw Error(Errc::bad_params, "expansion needs k >= 1");
  std::vector<Edge> es;
  for (const Edge& e : d.edges())
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) es.push_back({e.from * k + i, e.to * k + j});
  return Digraph::from_edges(d.size() * k, es);
}

// m copies of C_l^k (copy a occupies ids a*l^k ..), joined by an edge from the
// lexicographically last vertex of copy a to the first vertex of copy a+1 mod m.
inline Digraph theorem3_family(int l, int k, int m) {
  if (l < 3 || k < 1 || m < 1) throw Error(Errc::bad_params, "need l >= 3, k >= 1, m >= 1");
  const Digraph base = strong_power(cycle(l), k);
  const int block = base.size();
  for (int i = 0; i < block; ++i)
    if (!base.has_edge(i, (i + 1) % block))
      throw std::logic_error("lexicographic successor edge missing in strong power of a cycle");
  std::vector<Edge> es;
  for (int a = 0; a < m; ++a) {
    for (const Edge& e : base.edges()) es.push_back({a * block + e.from, a * block + e.to});
    es.push_back({a * block + block - 1, ((a + 1) % m) * block});
  }
  return Digraph::from_edges(m * block, es);
}

// ---------------------------------------------------------------------------
// Clique partition (cliques must be bidirectionally complete)

struct CliquePartition {
  int count = 0;
  std::vector<std::vector<int>> cliques;
  bool exact = false;  // false: count is only an upper bound
};

inline CliquePartition clique_partition_number(const Digraph& d, std::uint64_t budget = std::uint64_t{1} << 22) {
  const int n = d.size();
  CliquePartition r;

  // Greedy first-fit cover; also the fallback above 64 vertices.
  for (int v = 0; v < n; ++v) {
    bool placed = false;
    for (auto& c : r.cliques) {
      bool ok = true;
      for (int u : c) ok = ok && d.has_edge(u, v) && d.has_edge(v, u);
      if (ok) {
        c.push_back(v);
        placed = true;
        break;
      }
    }
    if (!placed) r.cliques.push_back({v});
  }
  r.count = static_cast<int>(r.cliques.size());
  if (n > 64) return r;

  std::vector<std::uint64_t> both(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) both[v] = d.out_mask(v) & d.in_mask(v);

  int best = r.count;
  std::vector<std::uint64_t> best_classes;
  std::vector<std::uint64_t> classes;
  std::uint64_t nodes = 0;
  bool aborted = false;

  auto rec = [&](auto&& self, int v) -> void {
    if (aborted) return;
    if (++nodes > budget) {
      aborted = true;
      return;
    }
    if (static_cast<int>(classes.size()) >= best) return;
    if (v == n) {
      best = static_cast<int>(classes.size());
      best_classes = classes;
      return;
    }
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if ((classes[i] & both[v]) == classes[i]) {
        classes[i] |= std::uint64_t{1} << v;
        self(self, v + 1);
        classes[i] &= ~(std::uint64_t{1} << v);
      }
    }
    if (static_cast<int>(classes.size()) + 1 < best) {
      classes.push_back(std::uint64_t{1} << v);
      self(self, v + 1);
      classes.pop_back();
    }
  };
  rec(rec, 0);

  r.exact = !aborted;
  if (!best_classes.empty()) {
    r.count = best;
    r.cliques.clear();
    for (std::uint64_t m : best_classes) {
      std::vector<int> c;
      for (; m; m &= m - 1) c.push_back(std::countr_zero(m));
      r.cliques.push_back(std::move(c));
    }
  }
  return r;
}

}  // namespace guessgraph
