#pragma once

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "guessgraph/cyclic.hpp"
#include "guessgraph/digraph.hpp"
#include "guessgraph/digraph_io.hpp"
#include "guessgraph/error.hpp"
#include "guessgraph/gf_linear.hpp"
#include "guessgraph/guessing_graph.hpp"
#include "guessgraph/netcode.hpp"
#include "guessgraph/solvers.hpp"

namespace guessgraph::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitGuard = 3;
inline constexpr int kExitInvalid = 4;

namespace detail {

inline std::string fixed(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

inline const char* boolstr(bool b) { return b ? "true" : "false"; }

inline std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::string t = text;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream ss(t);
  std::string tok;
  while (ss >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw Error(Errc::parse_error, "expected an integer list, got `" + text + "`");
    out.push_back(v);
  }
  return out;
}

// A path to a .dg file, or a family spec like clique:3, cycle:5, path:4,
// empty:2, bipartite:2,3 when no such file exists.
inline Digraph load_digraph(const std::string& spec) {
  if (std::filesystem::exists(spec)) return read_digraph_file(spec);
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error(Errc::parse_error, "cannot open " + spec);
  const std::string name = spec.substr(0, colon);
  const std::vector<int> sizes = parse_ints(spec.substr(colon + 1));
  Family kind;
  if (name == "clique") kind = Family::clique;
  else if (name == "cycle") kind = Family::cycle;
  else if (name == "path") kind = Family::path;
  else if (name == "empty") kind = Family::empty;
  else if (name == "bipartite") kind = Family::complete_bipartite;
  else throw Error(Errc::parse_error, "unknown digraph family `" + name + "`");
  return standard(kind, sizes);
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(Errc::parse_error, "cannot write " + path);
  return f;
}

// Collects key/value facts and prints them either as `key=value` lines or
// as the caller's human layout.
struct Facts {
  std::vector<std::pair<std::string, std::string>> items;
  void add(const std::string& k, const std::string& v) { items.emplace_back(k, v); }
  void add(const std::string& k, long long v) { add(k, std::to_string(v)); }
  void add(const std::string& k, bool v) { add(k, std::string(boolstr(v))); }
  void add(const std::string& k, const char* v) { add(k, std::string(v)); }
  void print(std::ostream& out, const std::string& prefix = "") const {
    for (const auto& [k, v] : items) out << prefix << k << '=' << v << '\n';
  }
};

struct Common {
  bool machine = false;
  std::string out_path;
  std::string dot_path;
};

// Writes a constructed digraph to -o (or stdout, with the facts as comments
// so the stream stays a valid .dg file) and honours --dot.
inline void emit_digraph(std::ostream& out, const Common& c, const Digraph& d, const Facts& facts) {
  if (!c.dot_path.empty()) {
    auto f = open_out(c.dot_path);
    write_dot(f, d);
  }
  if (c.out_path.empty()) {
    facts.print(out, "# ");
    write_digraph(out, d);
    return;
  }
  auto f = open_out(c.out_path);
  write_digraph(f, d);
  facts.print(out);
  out << "written=" << c.out_path << '\n';
}

inline void theorem2_facts(Facts& f, const Theorem2Report& r) {
  f.add("poly", r.g.to_string());
  f.add("n", static_cast<long long>(r.n));
  f.add("divides", r.applicable);
  f.add("degree", static_cast<long long>(r.degree));
  f.add("weight", static_cast<long long>(r.weight));
  f.add("in_degree", static_cast<long long>(r.in_degree));
  f.add("regular", r.regular);
  f.add("unidirectional", r.unidirectional_graph);
  f.add("tournament", r.tournament_graph);
  f.add("strong", r.strong);
  f.add("mas", static_cast<long long>(r.mas));
  f.add("mas_exact", r.mas_exact);
  f.add("parity_dimension", static_cast<long long>(r.parity_dimension));
  f.add("linear_upper", static_cast<long long>(r.linear_upper));
  f.add("gcd_lower", static_cast<long long>(r.gcd_lower));
  if (r.applicable) {
    f.add("property1", r.property1());
    f.add("property2", r.property2());
    f.add("property3", r.property3());
    f.add("property4", r.property4());
    f.add("property5", r.property5());
    f.add("property6", r.property6());
  }
}

inline void structure_facts(Facts& f, const Digraph& d) {
  const StructureReport r = structure_report(d);
  f.add("n", static_cast<long long>(r.n));
  f.add("edges", static_cast<long long>(r.edge_count));
  f.add("min_in_degree", static_cast<long long>(r.min_in_degree));
  f.add("max_in_degree", static_cast<long long>(r.max_in_degree));
  f.add("min_out_degree", static_cast<long long>(r.min_out_degree));
  f.add("max_out_degree", static_cast<long long>(r.max_out_degree));
  f.add("regular_in_out", r.regular_in_out);
  f.add("bidirectional_edges", static_cast<long long>(r.bidirectional_edge_count));
  f.add("tournament", r.is_tournament);
  f.add("girth", r.girth ? std::to_string(*r.girth) : std::string("acyclic"));
  f.add("strong", r.strong);
  f.add("components", static_cast<long long>(r.component_count));
}

}  // namespace detail

// Parses argv (argv[0] is the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"guessing numbers, information defects and network coding solvability", "guessgraph"};
  app.require_subcommand(1);

  Common c;
  int s = 2;
  unsigned p = 2;
  std::uint64_t budget = 0;
  std::uint64_t guard = kDefaultMaterializeGuard;
  int workers = 1;
  std::string input, input2, poly_text, kind_text, protocol_path, intermediates_text;
  int n_param = 0, k_param = 1, l_param = 0, m_param = 1, t_param = 0, param = 0;
  bool solve_flag = false, use_mas = false;

  auto common = [&](CLI::App* sub, bool digraph_output) {
    sub->add_flag("--machine", c.machine, "emit key=value records");
    sub->add_option("-o,--output", c.out_path, "output file");
    if (digraph_output) sub->add_option("--dot", c.dot_path, "also write Graphviz DOT here");
  };
  auto alphabet = [&](CLI::App* sub) {
    sub->add_option("-s,--alphabet", s, "alphabet size s >= 2")->check(CLI::Range(2, 1 << 20));
    sub->add_option("--guard", guard, "maximum number of configurations to materialise");
  };

  std::function<void()> action;
  auto bind = [&](CLI::App* sub, std::function<void()> f) {
    sub->callback([&action, f]() { action = f; });
  };

  // guess
  auto* guess = app.add_subcommand("guess", "guessing number via maximum independent set");
  guess->add_option("digraph", input, "digraph file or family spec")->required();
  alphabet(guess);
  guess->add_option("--budget", budget, "search node budget per component");
  guess->add_option("--protocol", protocol_path, "write the optimal protocol tables here");
  common(guess, false);
  bind(guess, [&] {
    const Digraph d = load_digraph(input);
    SolveOptions opt;
    opt.guard = guard;
    if (budget) opt.budget = budget;
    const GuessingResult r = guessing_number(d, s, opt);
    if (!c.out_path.empty()) {
      auto f = open_out(c.out_path);
      const ConfigSpace sp(d.size(), s);
      for (ConfigCode x : r.witness(guard)) f << sp.to_string(x) << '\n';
    }
    if (!protocol_path.empty()) {
      auto f = open_out(protocol_path);
      for (int v = 0; v < r.protocol.n; ++v) {
        f << "vertex " << v << " inputs";
        for (int u : r.protocol.in[v]) f << ' ' << u;
        f << "\n  table";
        for (int y : r.protocol.table[v]) f << ' ' << y;
        f << '\n';
      }
    }
    if (c.machine) {
      Facts f;
      f.add("alpha", static_cast<long long>(r.alpha));
      f.add("g", fixed(r.g, 6));
      f.add("exact", r.exact);
      for (std::size_t i = 0; i < r.components.size(); ++i) {
        f.add("component." + std::to_string(i) + ".size", static_cast<long long>(r.components[i].vertices.size()));
        f.add("component." + std::to_string(i) + ".alpha", static_cast<long long>(r.components[i].alpha));
        f.add("component." + std::to_string(i) + ".method", r.components[i].method);
      }
      if (!c.out_path.empty()) f.add("witness", c.out_path);
      f.print(out);
      return;
    }
    out << "alpha" << (r.exact ? "=" : ">=") << r.alpha << " g" << (r.exact ? "=" : ">=") << fixed(r.g, 3) << '\n';
    if (!r.exact) out << "search budget exhausted; values are lower bounds\n";
    if (!c.out_path.empty()) out << "witness=" << c.out_path << '\n';
  });

  // defect
  auto* defect = app.add_subcommand("defect", "information defect via chromatic number");
  defect->add_option("digraph", input)->required();
  alphabet(defect);
  defect->add_option("--budget", budget, "colouring search node budget");
  common(defect, false);
  bind(defect, [&] {
    const Digraph d = load_digraph(input);
    SolveOptions opt;
    opt.guard = guard;
    if (budget) opt.colour_budget = budget;
    const DefectResult r = information_defect(d, s, opt);
    if (!c.out_path.empty()) {
      auto f = open_out(c.out_path);
      const ConfigSpace sp(d.size(), s);
      for (const auto& cls : r.classes()) {
        for (std::size_t i = 0; i < cls.size(); ++i) f << (i ? " " : "") << sp.to_string(cls[i]);
        f << '\n';
      }
    }
    if (c.machine) {
      Facts f;
      f.add("chi", static_cast<long long>(r.chi));
      f.add("b", fixed(r.b, 6));
      f.add("exact", r.exact);
      f.add("chi_lower", static_cast<long long>(r.lower));
      f.add("method", r.method);
      if (!c.out_path.empty()) f.add("partition", c.out_path);
      f.print(out);
      return;
    }
    if (r.exact)
      out << "chi=" << r.chi << " b=" << fixed(r.b, 3) << '\n';
    else
      out << "chi in [" << r.lower << ", " << r.chi << "] b<=" << fixed(r.b, 3) << '\n';
    if (!c.out_path.empty()) out << "partition=" << c.out_path << '\n';
  });

  // linear
  auto* linear = app.add_subcommand("linear", "linear guessing number over a prime field");
  linear->add_option("digraph", input)->required();
  linear->add_option("-p,--field", p, "prime field size");
  linear->add_option("--budget", budget, "search node budget per strong component");
  linear->add_option("--workers", workers, "threads for the exhaustive search")->check(CLI::Range(1, 256));
  common(linear, false);
  bind(linear, [&] {
    const Digraph d = load_digraph(input);
    require_prime(p);
    LinearOptions opt;
    if (budget) opt.budget = budget;
    opt.workers = workers;
    const LinearResult r = linear_guessing_number(d, p, opt);
    if (!c.out_path.empty()) {
      auto f = open_out(c.out_path);
      write_matrix(f, r.witness);
    }
    if (c.machine) {
      Facts f;
      f.add("g_linear", static_cast<long long>(r.lower));
      f.add("g_linear.lower", static_cast<long long>(r.lower));
      f.add("g_linear.upper", static_cast<long long>(r.upper));
      f.add("exact", r.exact);
      f.add("lower_source", r.lower_source);
      f.add("upper_source", r.upper_source);
      f.add("rank", static_cast<long long>(r.n - r.lower));
      f.add("nodes", static_cast<long long>(r.nodes));
      f.print(out);
      return;
    }
    if (r.exact)
      out << "g_linear=" << r.lower << '\n';
    else
      out << "g_linear in [" << r.lower << ", " << r.upper << "]\n";
    out << "lower from " << r.lower_source << ", upper from " << r.upper_source << '\n';
    if (!c.out_path.empty()) {
      out << "witness=" << c.out_path << '\n';
    } else {
      out << "witness A (rank(I+A) = " << r.n - r.lower << "):\n";
      write_matrix(out, r.witness);
    }
  });

  // bounds
  auto* bounds = app.add_subcommand("bounds", "every applicable bound on g, g_linear and b");
  bounds->add_option("digraph", input)->required();
  alphabet(bounds);
  bounds->add_flag("--solve", solve_flag, "also compute alpha and chi exactly");
  bounds->add_option("--budget", budget, "linear search node budget");
  common(bounds, false);
  bind(bounds, [&] {
    const Digraph d = load_digraph(input);
    BoundsOptions opt;
    opt.solve = solve_flag;
    opt.solver.guard = guard;
    if (budget) opt.linear.budget = budget;
    const BoundsReport r = bounds_report(d, s, opt);
    if (c.machine)
      write_bounds_machine(out, r);
    else
      write_bounds_text(out, r);
  });

  // mas
  auto* mas = app.add_subcommand("mas", "maximum induced acyclic subgraph");
  mas->add_option("digraph", input)->required();
  mas->add_option("--budget", budget, "search node budget");
  common(mas, false);
  bind(mas, [&] {
    const Digraph d = load_digraph(input);
    const MasResult r = budget ? mas_exact(d, budget) : mas_exact(d);
    std::string w;
    for (int v : r.witness) w += (w.empty() ? "" : " ") + std::to_string(v);
    Facts f;
    f.add("mas", static_cast<long long>(r.size));
    f.add("exact", r.exact);
    f.add("witness", w);
    f.print(out);
  });

  // report
  auto* report = app.add_subcommand("report", "structural statistics");
  report->add_option("digraph", input)->required();
  common(report, true);
  bind(report, [&] {
    const Digraph d = load_digraph(input);
    if (!c.dot_path.empty()) {
      auto f = open_out(c.dot_path);
      write_dot(f, d);
    }
    Facts f;
    structure_facts(f, d);
    f.print(out);
  });

  // cyclic-gen
  auto* cyc = app.add_subcommand("cyclic-gen", "digraph from a GF(2) polynomial");
  cyc->add_option("--poly", poly_text, "bit string (ascending) or x^k+... form")->required();
  cyc->add_option("-n,--length", n_param, "code length")->required();
  common(cyc, true);
  bind(cyc, [&] {
    const Gf2Poly g = Gf2Poly::parse(poly_text);
    const PolynomialDigraph pd = polynomial_digraph(g, n_param);
    Facts f;
    if (pd.cyclic_code) {
      theorem2_facts(f, theorem2_report(g, n_param));
    } else {
      f.add("poly", g.to_string());
      f.add("n", static_cast<long long>(n_param));
      f.add("divides", false);
      f.add("gcd", pd.gcd.to_string());
      f.add("gcd_lower", static_cast<long long>(pd.gcd_lower));
      structure_facts(f, pd.d);
    }
    emit_digraph(out, c, pd.d, f);
  });

  // simplex
  auto* simplex = app.add_subcommand("simplex", "digraph of the binary simplex code");
  simplex->add_option("-l", l_param, "dimension, n = 2^l - 1")->required()->check(CLI::Range(2, 10));
  common(simplex, true);
  bind(simplex, [&] {
    const SimplexDigraph sd = simplex_digraph(l_param);
    Facts f;
    f.add("primitive", sd.primitive.to_string());
    theorem2_facts(f, theorem2_report(sd.g, (1 << l_param) - 1));
    emit_digraph(out, c, sd.d, f);
  });

  // family
  auto* family = app.add_subcommand("family", "cyclic-code digraph families");
  family->add_option("--kind", kind_text, "three_t | even_half | doubling")->required();
  family->add_option("--param", param, "t for three_t, p for even_half");
  family->add_option("--poly", poly_text, "g for doubling");
  family->add_option("-t", t_param, "t for doubling");
  family->add_option("-l", l_param, "l for doubling");
  common(family, true);
  bind(family, [&] {
    FamilyResult r;
    if (kind_text == "three_t") r = family_three_t(param);
    else if (kind_text == "even_half") r = family_even_half(param);
    else if (kind_text == "doubling") r = family_doubling(Gf2Poly::parse(poly_text), t_param, l_param);
    else throw Error(Errc::bad_params, "unknown family `" + kind_text + "`");
    Facts f;
    f.add("family", kind_text);
    theorem2_facts(f, r.report);
    emit_digraph(out, c, r.d, f);
  });

  // product
  auto* product = app.add_subcommand("product", "strong product of two digraphs");
  product->add_option("first", input)->required();
  product->add_option("second", input2)->required();
  product->add_option("-p,--field", p, "prime field for the product lower bound");
  bool product_linear = false;
  product->add_flag("--linear", product_linear, "report the Kronecker lower bound on g_linear");
  common(product, true);
  bind(product, [&] {
    const Digraph a = load_digraph(input), b = load_digraph(input2);
    const Digraph d = strong_product(a, b);
    Facts f;
    structure_facts(f, d);
    if (product_linear) {
      require_prime(p);
      const LinearProductBound lb = linear_product_lower(a, b, p);
      f.add("g_linear_lower", static_cast<long long>(lb.value));
      f.add("witness_rank", static_cast<long long>(lb.rank));
      f.add("verified", lb.verified);
    }
    emit_digraph(out, c, d, f);
  });

  // union
  auto* uni = app.add_subcommand("union", "disjoint, unidirectional or bidirectional union");
  uni->add_option("--kind", kind_text, "disjoint | unidirectional | bidirectional")->required();
  uni->add_option("first", input)->required();
  uni->add_option("second", input2)->required();
  common(uni, true);
  bind(uni, [&] {
    UnionKind kind;
    if (kind_text == "disjoint") kind = UnionKind::disjoint;
    else if (kind_text == "unidirectional") kind = UnionKind::unidirectional;
    else if (kind_text == "bidirectional") kind = UnionKind::bidirectional;
    else throw Error(Errc::bad_params, "unknown union kind `" + kind_text + "`");
    const Digraph d = digraph_union(kind, load_digraph(input), load_digraph(input2));
    Facts f;
    structure_facts(f, d);
    emit_digraph(out, c, d, f);
  });

  // expand
  auto* expand = app.add_subcommand("expand", "k interlinked copies of a digraph");
  expand->add_option("digraph", input)->required();
  expand->add_option("-k", k_param, "copies")->required();
  common(expand, true);
  bind(expand, [&] {
    const Digraph d = k_expand(load_digraph(input), k_param);
    Facts f;
    structure_facts(f, d);
    emit_digraph(out, c, d, f);
  });

  // thm3
  auto* thm3 = app.add_subcommand("thm3", "m copies of C_l^k tied by a directed cycle");
  thm3->add_option("-l", l_param, "cycle length")->required();
  thm3->add_option("-k", k_param, "power")->required();
  thm3->add_option("-m", m_param, "copies")->required();
  common(thm3, true);
  bind(thm3, [&] {
    const Digraph d = theorem3_family(l_param, k_param, m_param);
    Facts f;
    structure_facts(f, d);
    emit_digraph(out, c, d, f);
  });

  // netcode-solve
  auto* nsolve = app.add_subcommand("netcode-solve", "decide solvability of a multiple-unicast instance");
  nsolve->add_option("instance", input, ".nc file")->required();
  alphabet(nsolve);
  nsolve->add_option("--budget", budget, "search node budget per component");
  common(nsolve, false);
  bind(nsolve, [&] {
    const NetworkInstance net = read_instance_file(input);
    SolveOptions opt;
    opt.guard = guard;
    if (budget) opt.budget = budget;
    const NetcodeVerdict v = solvable(net, s, opt);
    Facts f;
    f.add("solvable", v.solvable);
    f.add("reason", v.reason);
    f.add("pairs", static_cast<long long>(v.n));
    f.add("intermediates", static_cast<long long>(v.m));
    f.add("alpha", static_cast<long long>(v.alpha));
    f.add("g", fixed(v.g, c.machine ? 6 : 3));
    f.add("exact", v.exact);
    if (!v.binding_bound.empty()) {
      f.add("binding_bound", v.binding_bound);
      f.add("binding_value", fixed(v.binding_value, c.machine ? 6 : 3));
    }
    if (v.defect_equals_m) f.add("defect_equals_m", *v.defect_equals_m);
    if (v.certificate) f.add("certificate_verified", v.certificate->verified);
    f.print(out);
    if (!v.certificate) return;
    if (!c.out_path.empty()) {
      auto file = open_out(c.out_path);
      write_certificate(file, net, *v.certificate);
      out << "certificate=" << c.out_path << '\n';
    } else if (!c.machine) {
      write_certificate(out, net, *v.certificate);
    }
  });

  // netcode-convert
  auto* nconv = app.add_subcommand("netcode-convert", "network instance <-> guessing digraph");
  nconv->add_option("input", input, ".nc instance, or a digraph with --intermediates/--mas")->required();
  nconv->add_option("--intermediates", intermediates_text, "acyclic vertex set kept as intermediate nodes");
  nconv->add_flag("--mas", use_mas, "use a maximum acyclic set as the intermediates");
  common(nconv, true);
  bind(nconv, [&] {
    if (intermediates_text.empty() && !use_mas) {
      const NetworkInstance net = read_instance_file(input);
      const GuessingDigraph g = to_guessing_digraph(net);
      Facts f;
      for (std::size_t v = 0; v < g.labels.size(); ++v) f.add("vertex." + std::to_string(v), g.labels[v]);
      emit_digraph(out, c, g.d, f);
      return;
    }
    const Digraph d = load_digraph(input);
    std::vector<int> m = use_mas ? mas_exact(d).witness : parse_ints(intermediates_text);
    const NetworkInstance net = from_digraph(d, m);
    if (c.out_path.empty()) {
      write_instance(out, net);
    } else {
      auto f = open_out(c.out_path);
      write_instance(f, net);
      out << "pairs=" << net.pair_count() << "\nintermediates=" << net.intermediates.size() << "\nwritten=" << c.out_path
          << '\n';
    }
  });

  // gg-export
  auto* gg = app.add_subcommand("gg-export", "edge list of the guessing graph");
  gg->add_option("digraph", input)->required();
  alphabet(gg);
  common(gg, false);
  bind(gg, [&] {
    const GuessingGraph h = materialize(load_digraph(input), s, std::min<std::uint64_t>(guard, kDenseLimit));
    if (c.out_path.empty()) {
      write_guessing_graph(out, h);
      return;
    }
    auto f = open_out(c.out_path);
    write_guessing_graph(f, h);
    out << "vertices=" << h.vertex_count() << "\ndegree=" << h.degree() << "\nwritten=" << c.out_path << '\n';
  });

  std::vector<const char*> args;
  for (const auto& a : argv) args.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  try {
    if (action) action();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::size_guard ? kExitGuard : kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, out, err);
}

}  // namespace guessgraph::cli
