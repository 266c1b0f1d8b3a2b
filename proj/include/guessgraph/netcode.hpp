#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "guessgraph/digraph.hpp"
#include "guessgraph/digraph_io.hpp"
#include "guessgraph/error.hpp"
#include "guessgraph/solvers.hpp"

namespace guessgraph {

// Multiple-unicast instance in circuit form: every node sends one message on
// all its out-edges, sink i wants source i's message.
struct NetworkInstance {
  std::vector<std::string> names;  // node id -> name
  std::vector<int> sources;
  std::vector<int> sinks;
  std::vector<int> intermediates;
  std::vector<Edge> edges;  // over node ids

  int node_count() const { return static_cast<int>(names.size()); }
  int pair_count() const { return static_cast<int>(sources.size()); }

  int add_node(const std::string& name) {
    names.push_back(name);
    return node_count() - 1;
  }

  Digraph graph() const { return Digraph::from_edges(node_count(), edges); }
};

inline void validate(const NetworkInstance& net) {
  auto bad = [](const std::string& m) { throw Error(Errc::invalid_instance, m); };
  if (net.sources.size() != net.sinks.size()) bad("number of sources and sinks differ");
  const int nodes = net.node_count();
  std::vector<int> role(static_cast<std::size_t>(nodes), 0);
  auto claim = [&](int v) {
    if (v < 0 || v >= nodes) bad("node id " + std::to_string(v) + " out of range");
    if (role[v]++) bad("node `" + net.names[v] + "` has more than one role");
  };
  for (int v : net.sources) claim(v);
  for (int v : net.sinks) claim(v);
  for (int v : net.intermediates) claim(v);
  for (int v = 0; v < nodes; ++v)
    if (!role[v]) bad("node `" + net.names[v] + "` is neither a source, a sink nor an intermediate");
  for (const Edge& e : net.edges)
    if (e.from < 0 || e.from >= nodes || e.to < 0 || e.to >= nodes || e.from == e.to) bad("bad edge");
  const Digraph g = net.graph();
  for (int v : net.sources)
    if (g.in_degree(v) != 0) bad("source `" + net.names[v] + "` has incoming edges");
  for (int v : net.sinks)
    if (g.out_degree(v) != 0) bad("sink `" + net.names[v] + "` has outgoing edges");
  if (!is_acyclic(g)) bad("network contains a directed cycle");
}

// ---------------------------------------------------------------------------
// Text format:
//   pairs            then `source sink` per line
//   intermediates    then one name per line (or several per line)
//   edges            then `from to` per line
// `#` starts a comment.

inline NetworkInstance read_instance(std::istream& in) {
  NetworkInstance net;
  std::map<std::string, int> id;
  auto node = [&](const std::string& name, int lineno) {
    auto it = id.find(name);
    if (it == id.end()) throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": unknown node `" + name + "`");
    return it->second;
  };
  auto fresh = [&](const std::string& name, int lineno) {
    if (id.count(name)) throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": node `" + name + "` declared twice");
    const int v = net.add_node(name);
    id[name] = v;
    return v;
  };
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = detail::strip_comment(line);
    if (body.empty()) continue;
    if (body.back() == ':') body.pop_back();
    if (body == "pairs" || body == "intermediates" || body == "edges") {
      section = body;
      continue;
    }
    std::istringstream ss(body);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (section == "pairs") {
      if (tok.size() != 2) throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": expected `source sink`");
      net.sources.push_back(fresh(tok[0], lineno));
      net.sinks.push_back(fresh(tok[1], lineno));
    } else if (section == "intermediates") {
      for (const auto& t : tok) net.intermediates.push_back(fresh(t, lineno));
    } else if (section == "edges") {
      if (tok.size() != 2) throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": expected `from to`");
      net.edges.push_back({node(tok[0], lineno), node(tok[1], lineno)});
    } else {
      throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": content outside a section");
    }
  }
  validate(net);
  return net;
}

inline NetworkInstance read_instance_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::parse_error, "cannot open " + path);
  return read_instance(f);
}

inline void write_instance(std::ostream& out, const NetworkInstance& net) {
  out << "pairs\n";
  for (int i = 0; i < net.pair_count(); ++i) out << net.names[net.sources[i]] << ' ' << net.names[net.sinks[i]] << '\n';
  out << "intermediates\n";
  for (int v : net.intermediates) out << net.names[v] << '\n';
  out << "edges\n";
  std::vector<Edge> es = net.edges;
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  for (const Edge& e : es) out << net.names[e.from] << ' ' << net.names[e.to] << '\n';
}

// ---------------------------------------------------------------------------
// Builders

inline NetworkInstance butterfly() {
  NetworkInstance net;
  const int s1 = net.add_node("s1"), t1 = net.add_node("t1"), s2 = net.add_node("s2"), t2 = net.add_node("t2");
  const int z = net.add_node("z");
  net.sources = {s1, s2};
  net.sinks = {t1, t2};
  net.intermediates = {z};
  net.edges = {{s1, z}, {s2, z}, {s1, t2}, {s2, t1}, {z, t1}, {z, t2}};
  return net;
}

// n pairs talking through m middle nodes, every source to every middle node
// to every sink.
inline NetworkInstance bottleneck(int n, int m) {
  if (n < 1 || m < 0) throw Error(Errc::bad_params, "bottleneck needs n >= 1, m >= 0");
  NetworkInstance net;
  for (int i = 0; i < n; ++i) {
    net.sources.push_back(net.add_node("s" + std::to_string(i + 1)));
    net.sinks.push_back(net.add_node("t" + std::to_string(i + 1)));
  }
  for (int j = 0; j < m; ++j) net.intermediates.push_back(net.add_node("z" + std::to_string(j + 1)));
  for (int i = 0; i < n; ++i)
    for (int z : net.intermediates) {
      net.edges.push_back({net.sources[i], z});
      net.edges.push_back({z, net.sinks[i]});
    }
  return net;
}

// ---------------------------------------------------------------------------
// Guessing-game view: merge source i and sink i into vertex i; intermediates
// follow in their listed order.

struct GuessingDigraph {
  Digraph d;
  std::vector<int> vertex_of;       // node id -> vertex
  std::vector<std::string> labels;  // vertex -> "s1/t1" or the intermediate's name
};

inline GuessingDigraph to_guessing_digraph(const NetworkInstance& net) {
  validate(net);
  const int n = net.pair_count();
  GuessingDigraph g;
  g.vertex_of.assign(static_cast<std::size_t>(net.node_count()), -1);
  for (int i = 0; i < n; ++i) {
    g.vertex_of[net.sources[i]] = i;
    g.vertex_of[net.sinks[i]] = i;
    g.labels.push_back(net.names[net.sources[i]] + "/" + net.names[net.sinks[i]]);
  }
  for (std::size_t j = 0; j < net.intermediates.size(); ++j) {
    g.vertex_of[net.intermediates[j]] = n + static_cast<int>(j);
    g.labels.push_back(net.names[net.intermediates[j]]);
  }
  std::vector<Edge> es;
  for (const Edge& e : net.edges) {
    const int a = g.vertex_of[e.from], b = g.vertex_of[e.to];
    if (a == b)
      throw Error(Errc::self_demand_loop, "edge " + net.names[e.from] + " -> " + net.names[e.to] + " joins a source to its own sink");
    es.push_back({a, b});
  }
  g.d = Digraph::from_edges(n + static_cast<int>(net.intermediates.size()), es);
  return g;
}

// Split every vertex outside the acyclic set M into a source (out-edges) and a
// sink (in-edges); M becomes the intermediates.
inline NetworkInstance from_digraph(const Digraph& d, std::span<const int> intermediate_set) {
  std::vector<int> m(intermediate_set.begin(), intermediate_set.end());
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  for (int v : m)
    if (v < 0 || v >= d.size()) throw Error(Errc::vertex_out_of_range, "vertex " + std::to_string(v) + " out of range");
  if (!is_acyclic_subset(d, m)) throw Error(Errc::not_acyclic, "intermediate set induces a cycle");
  std::vector<char> in_m(static_cast<std::size_t>(d.size()), 0);
  for (int v : m) in_m[v] = 1;
  NetworkInstance net;
  std::vector<int> out_node(static_cast<std::size_t>(d.size())), in_node(static_cast<std::size_t>(d.size()));
  for (int v = 0; v < d.size(); ++v) {
    if (in_m[v]) continue;
    out_node[v] = net.add_node("s" + std::to_string(v));
    in_node[v] = net.add_node("t" + std::to_string(v));
    net.sources.push_back(out_node[v]);
    net.sinks.push_back(in_node[v]);
  }
  for (int v : m) {
    out_node[v] = in_node[v] = net.add_node("m" + std::to_string(v));
    net.intermediates.push_back(out_node[v]);
  }
  for (const Edge& e : d.edges()) net.edges.push_back({out_node[e.from], in_node[e.to]});
  validate(net);
  return net;
}

// ---------------------------------------------------------------------------
// Solvability

// Function of one non-source node on the messages of its in-neighbours
// (listed by node id, ascending by guessing-graph vertex).
struct NodeFunction {
  int node = -1;
  std::vector<int> inputs;  // node ids
  std::vector<int> table;   // indexed by sum_j m_{inputs[j]} s^j
};

struct NetworkCode {
  int s = 2;
  std::vector<NodeFunction> intermediates;  // in topological order
  std::vector<NodeFunction> sinks;          // sink i decodes source i
  bool verified = false;
};

struct NetcodeVerdict {
  bool solvable = false;
  std::string reason;
  int n = 0;
  int m = 0;
  int s = 2;
  std::uint64_t alpha = 0;
  double g = 0.0;
  bool exact = false;
  std::optional<NetworkCode> certificate;
  std::string binding_bound;  // when unsolvable: the smallest applicable upper bound
  double binding_value = 0.0;
  std::optional<bool> defect_equals_m;
};

namespace detail {

inline int source_index(const NetworkInstance& net, int node) {
  for (int i = 0; i < net.pair_count(); ++i)
    if (net.sources[i] == node) return i;
  return -1;
}

// Messages of every node for one source assignment, in topological order.
inline std::vector<int> simulate(const NetworkInstance& net, const NetworkCode& code, const std::vector<int>& message) {
  std::vector<int> value(static_cast<std::size_t>(net.node_count()), 0);
  for (int i = 0; i < net.pair_count(); ++i) value[net.sources[i]] = message[i];
  auto eval = [&](const NodeFunction& f) {
    std::size_t w = 0, mult = 1;
    for (int u : f.inputs) {
      w += static_cast<std::size_t>(value[u]) * mult;
      mult *= static_cast<std::size_t>(code.s);
    }
    value[f.node] = f.table[w];
  };
  for (const auto& f : code.intermediates) eval(f);
  for (const auto& f : code.sinks) eval(f);
  return value;
}

}  // namespace detail

// Exhaustive check that every sink recovers its source, s^n <= guard.
inline bool verify_network_code(const NetworkInstance& net, const NetworkCode& code, std::uint64_t guard = std::uint64_t{1} << 16) {
  const ConfigSpace sp(net.pair_count(), code.s);
  if (sp.size() > guard) throw Error(Errc::size_guard, "certificate check over " + std::to_string(sp.size()) + " messages");
  for (ConfigCode x = 0; x < sp.size(); ++x) {
    const std::vector<int> msg = sp.decode(x);
    const std::vector<int> value = detail::simulate(net, code, msg);
    for (int i = 0; i < net.pair_count(); ++i)
      if (value[net.sinks[i]] != msg[i]) return false;
  }
  return true;
}

inline NetcodeVerdict solvable(const NetworkInstance& net, int s, const SolveOptions& opt = {}) {
  const GuessingDigraph gd = to_guessing_digraph(net);
  const Digraph& d = gd.d;
  const int n = net.pair_count();
  NetcodeVerdict v;
  v.n = n;
  v.m = static_cast<int>(net.intermediates.size());
  v.s = s;

  // Trivially unsolvable shapes are results, not input errors.
  const Digraph g = net.graph();
  for (int i = 0; i < n; ++i) {
    std::vector<char> seen(static_cast<std::size_t>(net.node_count()), 0);
    std::vector<int> stack{net.sources[i]};
    seen[net.sources[i]] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w : g.out(u))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    if (!seen[net.sinks[i]]) {
      v.reason = "sink `" + net.names[net.sinks[i]] + "` is unreachable from source `" + net.names[net.sources[i]] + "`";
      v.exact = true;
      v.binding_bound = "reachability";
      return v;
    }
  }

  const GuessingResult gr = guessing_number(d, s, opt);
  v.alpha = gr.alpha;
  v.g = gr.g;
  v.exact = gr.exact;
  const std::uint64_t target = ipow(static_cast<std::uint64_t>(s), n);
  if (gr.alpha > target) throw std::logic_error("guessing number of a network digraph exceeds the number of sources");
  v.solvable = gr.alpha == target;

  if (v.solvable) {
    NetworkCode code;
    code.s = s;
    // Intermediates in topological order of the acyclic intermediate set.
    std::vector<int> order;
    {
      std::vector<int> indeg(static_cast<std::size_t>(net.node_count()), 0);
      for (const Edge& e : net.edges) ++indeg[e.to];
      std::vector<int> ready;
      for (int u = 0; u < net.node_count(); ++u)
        if (indeg[u] == 0) ready.push_back(u);
      std::vector<char> done(static_cast<std::size_t>(net.node_count()), 0);
      while (!ready.empty()) {
        std::sort(ready.begin(), ready.end(), std::greater<>());
        const int u = ready.back();
        ready.pop_back();
        if (done[u]) continue;
        done[u] = 1;
        order.push_back(u);
        for (int w : g.out(u))
          if (--indeg[w] == 0) ready.push_back(w);
      }
    }
    auto function_of = [&](int node) {
      const int vert = gd.vertex_of[node];
      NodeFunction f;
      f.node = node;
      // Protocol inputs are D_N in-neighbours; translate each back to the node sending that message.
      for (int u : d.in(vert)) f.inputs.push_back(u < n ? net.sources[u] : net.intermediates[u - n]);
      f.table = gr.protocol.table[vert];
      return f;
    };
    std::vector<char> is_mid(static_cast<std::size_t>(net.node_count()), 0);
    for (int u : net.intermediates) is_mid[u] = 1;
    for (int u : order)
      if (is_mid[u]) code.intermediates.push_back(function_of(u));
    for (int i = 0; i < n; ++i) code.sinks.push_back(function_of(net.sinks[i]));
    const ConfigSpace sp(n, s);
    code.verified = sp.size() <= (std::uint64_t{1} << 16) && verify_network_code(net, code);
    if (sp.size() <= (std::uint64_t{1} << 16) && !code.verified) throw std::logic_error("network code certificate failed verification");
    v.certificate = std::move(code);
    v.reason = "guessing number equals the number of sources";
  } else {
    BoundsOptions bo;
    bo.solver = opt;
    const BoundsReport br = bounds_report(d, s, bo);
    double best = 1e300;
    for (const auto& e : br.entries)
      if (e.applicable && e.target == "guessing" && e.side == "upper" && e.value < best) {
        best = e.value;
        v.binding_bound = e.key;
      }
    v.binding_value = best;
    if (gr.exact && gr.g < best) {
      v.binding_bound = "exact_guessing_number";
      v.binding_value = gr.g;
    }
    std::ostringstream ss;
    ss << "guessing number " << gr.g << " < " << n;
    v.reason = ss.str();
  }

  // The instance is solvable iff b(D_N, s) = m; checked when colouring is affordable.
  const ConfigSpace all(d.size(), s);
  if (all.size() <= kDenseLimit) {
    SolveOptions so = opt;
    so.colour_budget = std::min<std::uint64_t>(opt.colour_budget, std::uint64_t{1} << 20);
    const DefectResult dr = information_defect(d, s, so);
    if (dr.exact) v.defect_equals_m = dr.chi == ipow(static_cast<std::uint64_t>(s), v.m);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Certificate export

namespace detail {

// Coefficients c (constant first) with f(w) = c_0 + sum c_j w_j mod s, if f is affine.
inline std::optional<std::vector<int>> affine_form(const NodeFunction& f, int s) {
  const std::size_t k = f.inputs.size();
  std::vector<int> c(k + 1);
  c[0] = f.table[0];
  std::size_t mult = 1;
  for (std::size_t j = 0; j < k; ++j) {
    c[j + 1] = ((f.table[mult] - c[0]) % s + s) % s;
    mult *= static_cast<std::size_t>(s);
  }
  for (std::size_t w = 0; w < f.table.size(); ++w) {
    std::size_t rest = w;
    long long acc = c[0];
    for (std::size_t j = 0; j < k; ++j) {
      acc += static_cast<long long>(c[j + 1]) * static_cast<long long>(rest % static_cast<std::size_t>(s));
      rest /= static_cast<std::size_t>(s);
    }
    if (acc % s != f.table[w]) return std::nullopt;
  }
  return c;
}

inline std::string describe(const NetworkInstance& net, const NodeFunction& f, int s) {
  const auto c = affine_form(f, s);
  if (!c) return "a lookup table on " + std::to_string(f.inputs.size()) + " inputs";
  std::string out;
  for (std::size_t j = 0; j < f.inputs.size(); ++j) {
    const int cj = (*c)[j + 1];
    if (!cj) continue;
    if (!out.empty()) out += " + ";
    out += (cj == 1 ? "" : std::to_string(cj) + "*") + net.names[f.inputs[j]];
  }
  if ((*c)[0]) out += (out.empty() ? "" : " + ") + std::to_string((*c)[0]);
  if (out.empty()) out = "0";
  return out + " mod " + std::to_string(s);
}

}  // namespace detail

inline void write_certificate(std::ostream& out, const NetworkInstance& net, const NetworkCode& code) {
  auto table = [&](const NodeFunction& f) {
    out << "node " << net.names[f.node] << " inputs";
    for (int u : f.inputs) out << ' ' << net.names[u];
    out << "\n  table";
    for (int y : f.table) out << ' ' << y;
    out << '\n';
  };
  for (const auto& f : code.intermediates) table(f);
  for (const auto& f : code.sinks) table(f);
  out << "narrative:\n";
  for (int i = 0; i < net.pair_count(); ++i)
    out << "  " << net.names[net.sources[i]] << " sends its own message\n";
  for (const auto& f : code.intermediates)
    out << "  " << net.names[f.node] << " sends " << detail::describe(net, f, code.s) << '\n';
  for (const auto& f : code.sinks)
    out << "  " << net.names[f.node] << " decodes " << detail::describe(net, f, code.s) << '\n';
}

}  // namespace guessgraph
