#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "guessgraph/bits.hpp"
#include "guessgraph/digraph.hpp"
#include "guessgraph/error.hpp"
#include "guessgraph/gf_linear.hpp"
#include "guessgraph/graph_search.hpp"
#include "guessgraph/guessing_graph.hpp"

namespace guessgraph {

// ---------------------------------------------------------------------------
// Protocols. Table for v is indexed by the word sum_j x_{u_j} s^j over the
// in-neighbours u_0 < u_1 < ... of v.

struct Protocol {
  int n = 0;
  int s = 2;
  std::vector<std::vector<int>> in;
  std::vector<std::vector<int>> table;

  std::size_t word(const ConfigSpace& sp, int v, ConfigCode x) const {
    std::size_t w = 0, mult = 1;
    for (int u : in[v]) {
      w += static_cast<std::size_t>(sp.digit(x, u)) * mult;
      mult *= static_cast<std::size_t>(s);
    }
    return w;
  }

  ConfigCode apply(const ConfigSpace& sp, ConfigCode x) const {
    ConfigCode y = 0;
    for (int v = 0; v < n; ++v) y += static_cast<ConfigCode>(table[v][word(sp, v, x)]) * sp.power(v);
    return y;
  }

  bool fixes(const ConfigSpace& sp, ConfigCode x) const {
    for (int v = 0; v < n; ++v)
      if (table[v][word(sp, v, x)] != sp.digit(x, v)) return false;
    return true;
  }
};

inline constexpr std::uint64_t kTableGuard = std::uint64_t{1} << 24;

// All-zero protocol with correctly sized tables.
inline Protocol zero_protocol(const Digraph& d, int s) {
  Protocol p;
  p.n = d.size();
  p.s = s;
  for (int v = 0; v < p.n; ++v) {
    p.in.push_back(d.in(v));
    std::uint64_t size = 1;
    for (std::size_t j = 0; j < d.in(v).size(); ++j) {
      size *= static_cast<std::uint64_t>(s);
      if (size > kTableGuard)
        throw Error(Errc::size_guard, "protocol table of vertex " + std::to_string(v) + " exceeds " + std::to_string(kTableGuard) + " entries");
    }
    p.table.emplace_back(static_cast<std::size_t>(size), 0);
  }
  return p;
}

inline bool valid_protocol(const Digraph& d, const Protocol& p) {
  if (p.n != d.size() || static_cast<int>(p.table.size()) != p.n) return false;
  for (int v = 0; v < p.n; ++v) {
    if (p.in[v] != d.in(v)) return false;
    std::uint64_t size = 1;
    for (std::size_t j = 0; j < p.in[v].size(); ++j) size *= static_cast<std::uint64_t>(p.s);
    if (p.table[v].size() != size) return false;
    for (int y : p.table[v])
      if (y < 0 || y >= p.s) return false;
  }
  return true;
}

// f_v maps the restriction of each x in S to x_v, and everything else to 0.
// A clash in some table is exactly an edge of G(D,s) inside S.
inline Protocol protocol_from_independent_set(const Digraph& d, int s, std::span<const ConfigCode> set) {
  const ConfigSpace sp(d.size(), s);
  Protocol p = zero_protocol(d, s);
  std::vector<std::unordered_map<std::size_t, ConfigCode>> owner(static_cast<std::size_t>(d.size()));
  for (ConfigCode x : set) {
    sp.check(x);
    for (int v = 0; v < d.size(); ++v) {
      const std::size_t w = p.word(sp, v, x);
      auto [it, fresh] = owner[v].try_emplace(w, x);
      if (!fresh && sp.digit(it->second, v) != sp.digit(x, v))
        throw Error(Errc::not_independent, "configurations " + sp.to_string(it->second) + " and " + sp.to_string(x) +
                                               " are adjacent (they differ at vertex " + std::to_string(v) +
                                               " but agree on its in-neighbourhood)");
      p.table[v][w] = sp.digit(x, v);
    }
  }
  return p;
}

inline std::vector<ConfigCode> fixed_configurations(const Digraph& d, int s, const Protocol& p,
                                                    std::uint64_t guard = kDefaultMaterializeGuard) {
  if (!valid_protocol(d, p) || p.s != s) throw Error(Errc::alphabet_mismatch, "protocol does not match the digraph and alphabet");
  const ConfigSpace sp(d.size(), s);
  if (sp.size() > guard) throw Error(Errc::size_guard, "fixed-point enumeration over " + std::to_string(sp.size()) + " configurations");
  std::vector<ConfigCode> out;
  for (ConfigCode x = 0; x < sp.size(); ++x)
    if (p.fixes(sp, x)) out.push_back(x);
  return out;
}

// ---------------------------------------------------------------------------
// Subgroups of Z_s^n and their coset tilings.

inline bool is_subgroup(const ConfigSpace& sp, std::span<const ConfigCode> set, std::size_t limit = 4096) {
  if (set.empty() || set.size() > limit || sp.size() > kDefaultMaterializeGuard) return false;
  Bits member(sp.size());
  for (ConfigCode x : set) member.set(x);
  if (!member.test(0)) return false;
  for (ConfigCode a : set)
    for (ConfigCode b : set)
      if (!member.test(sp.add(a, b))) return false;
  return true;
}

// Colour x by the coset x + W it lies in, cosets numbered by smallest element.
inline std::vector<int> coset_colouring(const ConfigSpace& sp, std::span<const ConfigCode> subgroup) {
  std::vector<int> colour(sp.size(), -1);
  int next = 0;
  for (ConfigCode x = 0; x < sp.size(); ++x) {
    if (colour[x] >= 0) continue;
    for (ConfigCode w : subgroup) colour[sp.add(x, w)] = next;
    ++next;
  }
  return colour;
}

// Elements of the GF(p)-span of a basis, as configuration codes.
inline std::vector<ConfigCode> span_codes(const ConfigSpace& sp, const std::vector<std::vector<std::uint32_t>>& basis) {
  std::vector<ConfigCode> out{0};
  for (const auto& b : basis) {
    std::vector<int> w(b.begin(), b.end());
    const ConfigCode g = sp.encode(w);
    const std::size_t m = out.size();
    for (int k = 1; k < sp.alphabet(); ++k) {
      ConfigCode mult = 0;
      for (int t = 0; t < k; ++t) mult = sp.add(mult, g);
      for (std::size_t i = 0; i < m; ++i) out.push_back(sp.add(out[i], mult));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Guessing number

struct SolveOptions {
  std::uint64_t guard = kDefaultMaterializeGuard;
  std::uint64_t budget = std::uint64_t{1} << 26;  // MIS search nodes per component
  std::uint64_t colour_budget = std::uint64_t{1} << 24;
  bool linear_shortcut = true;  // prime s: accept a linear fixed space that meets s^{n-mas}
  bool clique_cover = true;
};

struct ComponentSolve {
  std::vector<int> vertices;
  std::uint64_t alpha = 1;
  bool exact = true;
  int mas = 1;
  std::vector<ConfigCode> witness;  // codes over the component's own coordinates
  std::string method;
};

struct GuessingResult {
  int n = 0;
  int s = 2;
  std::uint64_t alpha = 1;
  double g = 0.0;
  bool exact = true;
  std::optional<int> g_integer;  // set when alpha is a power of s
  std::vector<ComponentSolve> components;
  Protocol protocol;

  // Every configuration whose restriction to each component lies in that
  // component's witness and which is 0 off the strong components.
  std::vector<ConfigCode> witness(std::uint64_t guard = kDefaultMaterializeGuard) const {
    if (alpha > guard) throw Error(Errc::size_guard, "witness set of size " + std::to_string(alpha) + " exceeds guard");
    const ConfigSpace sp(n, s);
    std::vector<ConfigCode> out{0};
    for (const auto& c : components) {
      const ConfigSpace local(static_cast<int>(c.vertices.size()), s);
      std::vector<ConfigCode> next;
      for (ConfigCode base : out)
        for (ConfigCode w : c.witness) {
          ConfigCode x = base;
          for (std::size_t i = 0; i < c.vertices.size(); ++i)
            x += static_cast<ConfigCode>(local.digit(w, static_cast<int>(i))) * sp.power(c.vertices[i]);
          next.push_back(x);
        }
      out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline std::optional<int> exact_log(std::uint64_t value, int s) {
  std::uint64_t p = 1;
  for (int k = 0; k < 64; ++k) {
    if (p == value) return k;
    if (p > value / static_cast<std::uint64_t>(s)) break;
    p *= static_cast<std::uint64_t>(s);
  }
  return std::nullopt;
}

inline double log_base(double x, int s) { return std::log(x) / std::log(static_cast<double>(s)); }

inline std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

namespace detail {

// Cliques {x : x agrees with e outside M}, one per word e on the complement of
// the acyclic set M.
inline std::vector<Bits> mas_clique_cover(const ConfigSpace& sp, const std::vector<int>& mas_set) {
  const int n = sp.length();
  std::vector<char> in_m(static_cast<std::size_t>(n), 0);
  for (int v : mas_set) in_m[v] = 1;
  std::map<ConfigCode, std::size_t> index;
  std::vector<Bits> cover;
  for (ConfigCode x = 0; x < sp.size(); ++x) {
    ConfigCode key = 0;
    for (int v = 0; v < n; ++v)
      if (!in_m[v]) key += static_cast<ConfigCode>(sp.digit(x, v)) * sp.power(v);
    auto [it, fresh] = index.try_emplace(key, cover.size());
    if (fresh) cover.emplace_back(sp.size());
    cover[it->second].set(x);
  }
  return cover;
}

inline ComponentSolve solve_component(const Digraph& sub, int s, const SolveOptions& opt) {
  ComponentSolve c;
  const int k = sub.size();
  const ConfigSpace sp(k, s);
  const MasResult mas = mas_exact(sub);
  c.mas = mas.size;
  const std::uint64_t cap = ipow(static_cast<std::uint64_t>(s), k - mas.size);

  if (opt.linear_shortcut && is_prime(static_cast<std::uint64_t>(s))) {
    LinearOptions lo;
    lo.budget = 0;  // heuristics only
    const LinearResult lr = linear_guessing_number(sub, static_cast<std::uint32_t>(s), lo);
    if (lr.lower == k - mas.size && cap <= opt.guard) {
      c.alpha = cap;
      c.witness = span_codes(sp, LinearProtocol{lr.witness}.fixed_space());
      c.method = "linear";
      return c;
    }
  }
  if (sp.size() > kDenseLimit)
    throw Error(Errc::size_guard, "strong component with " + std::to_string(k) + " vertices has " + std::to_string(sp.size()) +
                                      " configurations; exact search needs at most " + std::to_string(kDenseLimit));
  const GuessingGraph h = materialize(sub, s, opt.guard);
  MisOptions mo;
  mo.budget = opt.budget;
  mo.upper_bound = cap;
  std::vector<Bits> cover;
  if (opt.clique_cover && mas.exact && cap <= 4096) {
    cover = mas_clique_cover(sp, mas.witness);
    mo.clique_cover = &cover;
  }
  const MisResult r = max_independent_set(h.adjacency(), mo);
  c.alpha = r.alpha;
  c.exact = r.exact || r.alpha == cap;
  c.witness.assign(r.witness.begin(), r.witness.end());
  c.method = "mis";
  return c;
}

}  // namespace detail

// Strong components are solved separately and multiplied.
inline GuessingResult guessing_number(const Digraph& d, int s, const SolveOptions& opt = {}) {
  const ConfigSpace sp(d.size(), s);
  if (sp.size() > opt.guard)
    throw Error(Errc::size_guard, std::to_string(s) + "^" + std::to_string(d.size()) + " configurations exceed guard " + std::to_string(opt.guard));
  GuessingResult r;
  r.n = d.size();
  r.s = s;
  r.protocol = zero_protocol(d, s);
  const Condensation cond = strong_components(d);
  for (const auto& comp : cond.components) {
    if (comp.size() == 1) continue;
    std::vector<int> verts = comp;
    std::sort(verts.begin(), verts.end());
    const Digraph sub = d.induced(verts);
    ComponentSolve c = detail::solve_component(sub, s, opt);
    c.vertices = verts;
    r.alpha *= c.alpha;
    r.exact = r.exact && c.exact;

    // Lift the component protocol: in-neighbours outside the component are ignored.
    const Protocol local = protocol_from_independent_set(sub, s, c.witness);
    const ConfigSpace lsp(sub.size(), s);
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const int v = verts[i];
      const auto& gin = d.in(v);
      for (std::size_t w = 0; w < r.protocol.table[v].size(); ++w) {
        std::size_t rest = w, lw = 0, mult = 1;
        std::size_t li = 0;
        for (int u : gin) {
          const std::size_t digit = rest % static_cast<std::size_t>(s);
          rest /= static_cast<std::size_t>(s);
          if (li < local.in[i].size() && verts[local.in[i][li]] == u) {
            lw += digit * mult;
            mult *= static_cast<std::size_t>(s);
            ++li;
          }
        }
        r.protocol.table[v][w] = local.table[i][lw];
      }
    }
    r.components.push_back(std::move(c));
  }
  r.g = log_base(static_cast<double>(r.alpha), s);
  r.g_integer = exact_log(r.alpha, s);
  return r;
}

// ---------------------------------------------------------------------------
// Chromatic number and information defect

struct DefectResult {
  int n = 0;
  int s = 2;
  std::uint64_t chi = 0;
  double b = 0.0;
  bool exact = false;
  std::uint64_t lower = 1;
  std::vector<int> colour;  // indexed by configuration code
  std::string method;

  std::vector<std::vector<ConfigCode>> classes() const {
    std::vector<std::vector<ConfigCode>> out(chi);
    for (std::size_t x = 0; x < colour.size(); ++x) out[static_cast<std::size_t>(colour[x])].push_back(x);
    return out;
  }
};

inline DefectResult information_defect(const Digraph& d, int s, const SolveOptions& opt = {}) {
  const GuessingGraph h = materialize(d, s, opt.guard);
  const BitGraph& g = h.adjacency();
  const ConfigSpace& sp = h.space();
  DefectResult r;
  r.n = d.size();
  r.s = s;
  const MasResult mas = mas_exact(d);
  r.lower = ipow(static_cast<std::uint64_t>(s), mas.size);

  ColoringOptions co;
  co.budget = opt.colour_budget;
  const GuessingResult gr = guessing_number(d, s, opt);
  if (gr.exact) r.lower = std::max(r.lower, (sp.size() + gr.alpha - 1) / gr.alpha);
  std::string method = "dsatur";
  const std::vector<ConfigCode> w = gr.witness(opt.guard);
  if (is_subgroup(sp, w)) {
    co.initial = coset_colouring(sp, w);
    method = "coset";
  }
  co.lower_bound = r.lower;
  const ColoringResult c = chromatic_number(g, co);
  r.chi = c.chi;
  r.colour = c.colour;
  r.exact = c.exact;
  r.method = (co.initial && colour_count(*co.initial) == c.chi) ? method : "dsatur";
  if (!is_proper_coloring(g, r.colour)) throw std::logic_error("colouring of the guessing graph is not proper");
  r.b = log_base(static_cast<double>(r.chi), s);
  return r;
}

inline DefectResult chromatic_number(const GuessingGraph& h, const SolveOptions& opt = {}) {
  return information_defect(h.digraph(), h.alphabet(), opt);
}

// ---------------------------------------------------------------------------
// Codes: A_s(n, d), the largest code of length n and minimum distance d.

struct CodeBounds {
  int n = 0, d = 0, s = 2;
  std::uint64_t singleton = 0;
  std::uint64_t sphere_packing = 0;
  std::uint64_t gilbert_varshamov = 0;
  std::optional<std::uint64_t> exact;

  std::uint64_t upper() const { return exact ? *exact : std::min(singleton, sphere_packing); }
  std::uint64_t lower() const { return exact ? *exact : gilbert_varshamov; }
};

namespace detail {

inline std::uint64_t hamming_ball(int n, int r, int s) {
  std::uint64_t total = 0, term = 1;  // C(n,i) (s-1)^i
  for (int i = 0; i <= std::min(r, n); ++i) {
    total += term;
    term = term * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1) * static_cast<std::uint64_t>(s - 1);
  }
  return total;
}

inline int hamming_distance(const ConfigSpace& sp, ConfigCode x, ConfigCode y) {
  int dist = 0;
  for (int i = 0; i < sp.length(); ++i) dist += sp.digit(x, i) != sp.digit(y, i);
  return dist;
}

}  // namespace detail

inline CodeBounds code_bounds(int n, int d, int s) {
  const ConfigSpace sp(n, s);
  CodeBounds b;
  b.n = n;
  b.d = d;
  b.s = s;
  const std::uint64_t total = sp.size();
  if (d <= 1) {
    b.singleton = b.sphere_packing = b.gilbert_varshamov = total;
    b.exact = total;
    return b;
  }
  if (d > n) {
    b.singleton = b.sphere_packing = b.gilbert_varshamov = 1;
    b.exact = 1;
    return b;
  }
  b.singleton = ipow(static_cast<std::uint64_t>(s), n - d + 1);
  b.sphere_packing = total / detail::hamming_ball(n, (d - 1) / 2, s);
  const std::uint64_t ball = detail::hamming_ball(n, d - 1, s);
  b.gilbert_varshamov = std::max<std::uint64_t>(1, (total + ball - 1) / ball);
  if (d == 2) b.exact = b.singleton;  // single parity check
  if (d == n) b.exact = static_cast<std::uint64_t>(s);  // repetition code
  return b;
}

// Exact value by maximum independent set in the graph joining words at
// distance 1..d-1.
inline CodeBounds a_s(int n, int d, int s, std::uint64_t guard = std::uint64_t{1} << 12, std::uint64_t budget = std::uint64_t{1} << 24) {
  CodeBounds b = code_bounds(n, d, s);
  if (b.exact) return b;
  const ConfigSpace sp(n, s);
  if (sp.size() > guard) return b;
  BitGraph g(sp.size());
  for (ConfigCode x = 0; x < sp.size(); ++x)
    for (ConfigCode y = x + 1; y < sp.size(); ++y)
      if (detail::hamming_distance(sp, x, y) < d) g.add_edge(x, y);
  MisOptions mo;
  mo.budget = budget;
  mo.upper_bound = b.upper();
  const MisResult r = max_independent_set(g, mo);
  if (r.exact || r.alpha == b.upper()) b.exact = r.alpha;
  else b.gilbert_varshamov = std::max<std::uint64_t>(b.gilbert_varshamov, r.alpha);
  return b;
}

inline std::uint64_t a_s_exact(int n, int d, int s, std::uint64_t guard = std::uint64_t{1} << 12) {
  const CodeBounds b = a_s(n, d, s, guard);
  if (!b.exact)
    throw Error(Errc::size_guard, "A_" + std::to_string(s) + "(" + std::to_string(n) + "," + std::to_string(d) +
                                      ") not determined within guard; bounds [" + std::to_string(b.lower()) + ", " +
                                      std::to_string(b.upper()) + "]");
  return *b.exact;
}

// ---------------------------------------------------------------------------
// Mixed alphabets

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double x, double eps = 1e-9) const { return x >= lower - eps && x <= upper + eps; }
};

// g(D, st) from g(D, s) and g(D, t).
inline Interval alphabet_composition_bounds(double gs, double gt, int n, int s, int t) {
  if (s < 2 || t < 2) throw Error(Errc::bad_params, "alphabets must have at least 2 symbols");
  const double ls = std::log(static_cast<double>(s)), lt = std::log(static_cast<double>(t));
  Interval i;
  i.lower = (gs * ls + gt * lt) / (ls + lt);
  i.upper = std::min((gs * ls + n * lt) / (ls + lt), (gt * lt + n * ls) / (ls + lt));
  return i;
}

// g(D, t) from g(D, s) alone, t >= s, with m = floor(log_s t).
inline Interval alphabet_power_bounds(double gs, int n, int s, int t) {
  if (s < 2 || t < s) throw Error(Errc::bad_params, "need t >= s >= 2");
  int m = 0;
  for (std::uint64_t p = static_cast<std::uint64_t>(s); p <= static_cast<std::uint64_t>(t); p *= static_cast<std::uint64_t>(s)) ++m;
  const double lst = log_base(static_cast<double>(t), s);
  return {gs * m / lst, (gs + static_cast<double>(m) * n) / lst};
}

// ---------------------------------------------------------------------------
// Bounds report

struct BoundEntry {
  std::string key;
  std::string target;  // guessing | linear | defect | clique
  std::string side;    // lower | upper
  double value = 0.0;
  bool applicable = true;
  std::string reason;  // why it was omitted
};

struct BoundsOptions {
  bool solve = false;  // also compute alpha, chi exactly (enables the chromatic bound)
  SolveOptions solver;
  LinearOptions linear{std::uint64_t{1} << 18};
  std::uint64_t code_guard = std::uint64_t{1} << 12;
};

struct BoundsReport {
  int n = 0;
  int s = 2;
  int mas = 0;
  bool mas_exact = false;
  int min_in_degree = 0;
  int max_in_degree = 0;
  std::optional<int> girth;
  bool bidirectional = false;
  std::optional<std::int64_t> graph_degree;
  std::vector<std::vector<int>> components;  // strong components of size >= 2
  std::vector<int> component_upper;          // |C| - mas(C) per component
  std::vector<BoundEntry> entries;
  std::optional<GuessingResult> guess;
  std::optional<DefectResult> defect;
  std::optional<LinearResult> linear;

  const BoundEntry* find(const std::string& key) const {
    for (const auto& e : entries)
      if (e.key == key) return &e;
    return nullptr;
  }

  double best(const std::string& target, const std::string& side) const {
    const bool lower = side == "lower";
    double b = lower ? -1e300 : 1e300;
    for (const auto& e : entries) {
      if (!e.applicable || e.side != side) continue;
      // A lower bound on g_linear is one on g as well; an upper bound on g is one on g_linear.
      const bool counts = e.target == target || (target == "guessing" && lower && e.target == "linear") ||
                          (target == "linear" && !lower && e.target == "guessing");
      if (counts) b = lower ? std::max(b, e.value) : std::min(b, e.value);
    }
    return b;
  }
};

inline BoundsReport bounds_report(const Digraph& d, int s, const BoundsOptions& opt = {}) {
  if (s < 2) throw Error(Errc::bad_params, "alphabet size must be >= 2");
  BoundsReport r;
  const int n = d.size();
  r.n = n;
  r.s = s;
  const StructureReport st = structure_report(d);
  r.min_in_degree = st.min_in_degree;
  r.max_in_degree = st.max_in_degree;
  r.girth = st.girth;
  r.bidirectional = st.bidirectional_edge_count > 0;
  const bool acyclic = !st.girth.has_value();
  const MasResult mas = mas_exact(d);
  r.mas = mas.size;
  r.mas_exact = mas.exact;
  const Condensation cond = strong_components(d);
  for (const auto& c : cond.components) {
    if (c.size() < 2) continue;
    std::vector<int> v = c;
    std::sort(v.begin(), v.end());
    r.components.push_back(v);
    r.component_upper.push_back(static_cast<int>(v.size()) - mas_exact(d.induced(v)).size);
  }
  if (n <= 64) {
    try {
      r.graph_degree = degree_closed_form(d, s);
    } catch (const Error&) {
    }
  }

  auto add = [&](std::string key, std::string target, std::string side, double value) {
    r.entries.push_back({std::move(key), std::move(target), std::move(side), value, true, {}});
  };
  auto omit = [&](std::string key, std::string target, std::string side, std::string reason) {
    r.entries.push_back({std::move(key), std::move(target), std::move(side), 0.0, false, std::move(reason)});
  };

  // An inexact mas is still the size of an acyclic set, so both stay valid.
  add("mas_clique", "clique", "lower", mas.size);
  add("mas_upper", "guessing", "upper", n - mas.size);
  if (acyclic) {
    add("acyclic", "guessing", "upper", 0.0);
  }
  if (!r.bidirectional && n > 0)
    add("sphere_packing_upper", "guessing", "upper", n - log_base((s - 1.0) * n + 1.0, s));
  else
    omit("sphere_packing_upper", "guessing", "upper", r.bidirectional ? "digraph has bidirectional edges" : "empty digraph");

  if (acyclic) {
    omit("min_in_degree_lower", "guessing", "lower", "digraph is acyclic");
    omit("connectivity_lower", "guessing", "lower", "digraph is acyclic");
  } else {
    add("min_in_degree_lower", "guessing", "lower", st.min_in_degree - log_base(n, s));
    if (r.graph_degree) {
      const double dg = static_cast<double>(*r.graph_degree);
      const double inner = 1.0 - std::sqrt(1.0 - 4.0 / (3.0 * (dg + 1.0)));
      add("connectivity_lower", "guessing", "lower", n + log_base(1.5, s) + log_base(inner, s));
    } else {
      omit("connectivity_lower", "guessing", "lower", "guessing-graph degree unavailable");
    }
  }
  if (r.graph_degree)
    add("degree_lower", "guessing", "lower", n - log_base(static_cast<double>(*r.graph_degree) + 1.0, s));

  try {
    const CodeBounds lo = a_s(n, n - st.min_in_degree + 1, s, opt.code_guard);
    add("code_lower", "guessing", "lower", log_base(static_cast<double>(lo.lower()), s));
    if (st.girth) {
      const CodeBounds up = a_s(n, *st.girth, s, opt.code_guard);
      add("code_upper", "guessing", "upper", log_base(static_cast<double>(up.upper()), s));
    } else {
      omit("code_upper", "guessing", "upper", "digraph is acyclic (infinite girth)");
    }
  } catch (const Error& e) {
    omit("code_lower", "guessing", "lower", e.what());
  }

  // Linear bounds (field size s when s is prime).
  const bool prime = is_prime(static_cast<std::uint64_t>(s));
  if (prime) {
    const auto uppers = linear_unidirectional_uppers(d, static_cast<std::uint32_t>(s));
    for (const char* key : {"min_in_degree_linear", "max_in_degree_linear"}) {
      auto it = std::find_if(uppers.begin(), uppers.end(), [&](const LinearUpper& u) { return u.source == key; });
      if (it != uppers.end())
        add(key, "linear", "upper", it->value);
      else
        omit(key, "linear", "upper", r.bidirectional ? "digraph has bidirectional edges" : "not applicable for these degrees");
    }
    // A non-optimal cover still gives a valid (weaker) bound.
    add("clique_partition_linear", "linear", "lower", n - clique_partition_number(d).count);
    r.linear = linear_guessing_number(d, static_cast<std::uint32_t>(s), opt.linear);
    add("linear_search_lower", "linear", "lower", r.linear->lower);
    add("linear_search_upper", "linear", "upper", r.linear->upper);
  } else {
    for (const char* key : {"min_in_degree_linear", "max_in_degree_linear", "clique_partition_linear", "linear_search_lower"})
      omit(key, "linear", std::string(key).find("lower") != std::string::npos ? "lower" : "upper", "alphabet size is not prime");
  }

  // Information defect.
  add("defect_mas_lower", "defect", "lower", mas.size);
  const double g_upper = r.best("guessing", "upper");
  if (g_upper < 1e299) add("defect_complement_lower", "defect", "lower", n - g_upper);
  if (r.graph_degree) {
    const double dg = static_cast<double>(*r.graph_degree);
    add("defect_degree_upper", "defect", "upper", acyclic ? log_base(dg + 1.0, s) : log_base(std::max(dg, 1.0), s));
  }
  if (!acyclic && n > 0) add("defect_in_degree_upper", "defect", "upper", n - st.min_in_degree + log_base(n, s));

  if (opt.solve) {
    r.guess = guessing_number(d, s, opt.solver);
    r.defect = information_defect(d, s, opt.solver);
    const double alpha = static_cast<double>(r.guess->alpha);
    const double total = std::pow(static_cast<double>(s), n);
    if (r.guess->exact)
      add("chromatic_upper", "defect", "upper", log_base((1.0 + std::log(alpha)) * total / alpha, s));
    else
      omit("chromatic_upper", "defect", "upper", "independence number not exact");
  } else {
    omit("chromatic_upper", "defect", "upper", "needs an exact solve (--solve)");
  }
  return r;
}

// Every applicable lower bound must sit below the matching exact value and
// every upper bound above it. Returns human-readable violations.
inline std::vector<std::string> check_bounds(const BoundsReport& r, std::optional<double> g, std::optional<double> g_linear,
                                             std::optional<double> b, std::optional<double> log_omega = std::nullopt) {
  std::vector<std::string> bad;
  constexpr double eps = 1e-9;
  for (const auto& e : r.entries) {
    if (!e.applicable) continue;
    std::vector<std::pair<std::string, double>> vs;
    if (e.target == "guessing") {
      if (g) vs.push_back({"g", *g});
      if (g_linear && e.side == "upper") vs.push_back({"g_linear", *g_linear});
    } else if (e.target == "linear") {
      if (g_linear) vs.push_back({"g_linear", *g_linear});
      if (g && e.side == "lower") vs.push_back({"g", *g});
    } else if (e.target == "defect") {
      if (b) vs.push_back({"b", *b});
    } else if (e.target == "clique") {
      if (log_omega) vs.push_back({"log omega", *log_omega});
    }
    for (const auto& [name, v] : vs) {
      const bool ok = e.side == "lower" ? e.value <= v + eps : e.value >= v - eps;
      if (!ok) {
        std::ostringstream ss;
        ss << e.key << " (" << e.side << " " << e.value << ") vs " << name << " = " << v;
        bad.push_back(ss.str());
      }
    }
  }
  if (g && b && *g + *b < r.n - eps) bad.push_back("b + g < n");
  return bad;
}

inline void write_bounds_machine(std::ostream& out, const BoundsReport& r) {
  out << "n=" << r.n << '\n' << "s=" << r.s << '\n' << "mas=" << r.mas << '\n' << "mas_exact=" << (r.mas_exact ? "true" : "false") << '\n';
  out << "min_in_degree=" << r.min_in_degree << '\n' << "max_in_degree=" << r.max_in_degree << '\n';
  out << "girth=" << (r.girth ? std::to_string(*r.girth) : "none") << '\n';
  out << "bidirectional=" << (r.bidirectional ? "true" : "false") << '\n';
  if (r.graph_degree) out << "guessing_graph_degree=" << *r.graph_degree << '\n';
  out << "components=" << r.components.size() << '\n';
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    out << "component." << i << ".size=" << r.components[i].size() << '\n';
    out << "component." << i << ".upper=" << r.component_upper[i] << '\n';
  }
  char buf[64];
  for (const auto& e : r.entries) {
    const std::string k = "bound." + e.key;
    if (e.applicable) {
      std::snprintf(buf, sizeof buf, "%.6f", e.value);
      out << k << '=' << buf << '\n' << k << ".target=" << e.target << '\n' << k << ".side=" << e.side << '\n';
    } else {
      out << k << "=omitted\n" << k << ".reason=" << e.reason << '\n';
    }
  }
  if (r.linear) {
    out << "g_linear.lower=" << r.linear->lower << '\n' << "g_linear.upper=" << r.linear->upper << '\n';
    out << "g_linear.exact=" << (r.linear->exact ? "true" : "false") << '\n';
  }
  if (r.guess) {
    std::snprintf(buf, sizeof buf, "%.6f", r.guess->g);
    out << "alpha=" << r.guess->alpha << '\n' << "g=" << buf << '\n';
  }
  if (r.defect) {
    std::snprintf(buf, sizeof buf, "%.6f", r.defect->b);
    out << "chi=" << r.defect->chi << '\n' << "b=" << buf << '\n';
  }
}

inline void write_bounds_text(std::ostream& out, const BoundsReport& r) {
  char buf[64];
  out << "n=" << r.n << " s=" << r.s << " mas=" << r.mas << (r.mas_exact ? "" : " (lower bound)") << " delta=" << r.min_in_degree
      << " Delta=" << r.max_in_degree << " girth=" << (r.girth ? std::to_string(*r.girth) : "none") << '\n';
  out << "strong components (size >= 2): " << r.components.size() << '\n';
  for (std::size_t i = 0; i < r.components.size(); ++i)
    out << "  component " << i << ": " << r.components[i].size() << " vertices, g <= " << r.component_upper[i] << '\n';
  for (const auto& e : r.entries) {
    if (e.applicable) {
      std::snprintf(buf, sizeof buf, "%.3f", e.value);
      out << "  " << e.target << ' ' << (e.side == "lower" ? ">= " : "<= ") << buf << "  [" << e.key << "]\n";
    } else {
      out << "  " << e.key << ": omitted (" << e.reason << ")\n";
    }
  }
  if (r.linear)
    out << "g_linear in [" << r.linear->lower << ", " << r.linear->upper << "]" << (r.linear->exact ? " exact" : "") << '\n';
  if (r.guess) {
    std::snprintf(buf, sizeof buf, "%.3f", r.guess->g);
    out << "alpha=" << r.guess->alpha << " g=" << buf << '\n';
  }
  if (r.defect) {
    std::snprintf(buf, sizeof buf, "%.3f", r.defect->b);
    out << "chi=" << r.defect->chi << " b=" << buf << '\n';
  }
}

}  // namespace guessgraph
