#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>

#include "guessgraph/solvers.hpp"
#include "oracles.hpp"

using namespace guessgraph;

namespace {

std::vector<ConfigCode> even_words(int n) {
  std::vector<ConfigCode> out;
  for (ConfigCode x = 0; x < (ConfigCode{1} << n); ++x)
    if (std::popcount(x) % 2 == 0) out.push_back(x);
  return out;
}

std::size_t alpha_of_product(GraphProduct kind, const Digraph& a, const Digraph& b) {
  const BitGraph g = graph_product(kind, materialize(a, 2).adjacency(), materialize(b, 2).adjacency());
  return max_independent_set(g).alpha;
}

}  // namespace

TEST(MaxIndependentSet, PaperExamples) {
  const GuessingResult k3 = guessing_number(clique(3), 2);
  EXPECT_EQ(k3.alpha, 4u);
  EXPECT_TRUE(k3.exact);
  EXPECT_EQ(k3.witness(), even_words(3));

  for (int n = 2; n <= 5; ++n)
    for (int s : {2, 3}) {
      const auto r = guessing_number(cycle(n), s);
      EXPECT_EQ(r.alpha, static_cast<std::uint64_t>(s));
      EXPECT_EQ(r.g_integer, 1);
    }
  EXPECT_EQ(guessing_number(path(4), 3).alpha, 1u);
}

TEST(MaxIndependentSet, MatchesBruteForce) {
  std::mt19937_64 rng(71);
  for (int iter = 0; iter < 60; ++iter) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int s = 2 + static_cast<int>(rng() % 2);
    const Digraph d = oracle::random_digraph(rng, n, 0.5);
    const auto r = guessing_number(d, s);
    ASSERT_TRUE(r.exact);
    EXPECT_EQ(r.alpha, oracle::max_independent(oracle::guessing_graph(d, s)));
    const auto w = r.witness();
    EXPECT_EQ(w.size(), r.alpha);
    const auto h = materialize(d, s);
    EXPECT_TRUE(is_independent(h.adjacency(), std::vector<std::size_t>(w.begin(), w.end())));
    const auto fixed = fixed_configurations(d, s, r.protocol);
    EXPECT_EQ(fixed.size(), r.alpha);
    for (ConfigCode x : w) EXPECT_TRUE(std::binary_search(fixed.begin(), fixed.end(), x));
  }
}

TEST(MaxIndependentSet, GenericSolverOnRandomGraphs) {
  std::mt19937_64 rng(73);
  for (int iter = 0; iter < 40; ++iter) {
    const std::size_t n = 1 + rng() % 30;
    BitGraph g(n);
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (rng() % 3 == 0) {
          g.add_edge(u, v);
          adj[u][v] = adj[v][u] = 1;
        }
    const auto r = max_independent_set(g);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.alpha, oracle::max_independent(adj));
    EXPECT_TRUE(is_independent(g, r.witness));
    if (n <= 12) {
      const auto c = chromatic_number(g);
      EXPECT_TRUE(c.exact);
      EXPECT_TRUE(is_proper_coloring(g, c.colour));
      EXPECT_EQ(c.chi, oracle::chromatic(adj));
    }
  }
}

TEST(GuessingNumber, PaperExamples) {
  EXPECT_EQ(guessing_number(clique(3), 2).g_integer, 2);
  EXPECT_EQ(guessing_number(digraph_union(UnionKind::disjoint, clique(2), path(2)), 2).g_integer, 1);
  EXPECT_EQ(guessing_number(digraph_union(UnionKind::bidirectional, clique(2), path(2)), 2).g_integer, 2);
  EXPECT_EQ(guessing_number(k_expand(cycle(3), 2), 2).g_integer, 2);
}

TEST(GuessingNumber, NonIntegralReportedAsAlphaAndLog) {
  // Undirected pentagon (every edge both ways).
  std::vector<Edge> es;
  for (int v = 0; v < 5; ++v) {
    es.push_back({v, (v + 1) % 5});
    es.push_back({(v + 1) % 5, v});
  }
  const auto r = guessing_number(Digraph::from_edges(5, es), 2);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.alpha, oracle::max_independent(oracle::guessing_graph(Digraph::from_edges(5, es), 2)));
  EXPECT_FALSE(r.g_integer.has_value());
  EXPECT_NEAR(r.g, std::log2(static_cast<double>(r.alpha)), 1e-12);
}

TEST(GuessingNumber, SizeGuard) {
  SolveOptions opt;
  opt.guard = 100;
  EXPECT_THROW(guessing_number(cycle(8), 2, opt), Error);
}

TEST(Chromatic, PaperExamples) {
  for (int n = 2; n <= 4; ++n)
    for (int s : {2, 3}) {
      const auto r = information_defect(clique(n), s);
      EXPECT_EQ(r.chi, static_cast<std::uint64_t>(s));
      EXPECT_TRUE(r.exact);
    }
  const auto c3 = chromatic_number(materialize(cycle(3), 2));
  EXPECT_EQ(c3.chi, 4u);
  EXPECT_DOUBLE_EQ(c3.b, 2.0);
  const auto p = information_defect(path(3), 3);
  EXPECT_EQ(p.chi, 27u);
}

TEST(Chromatic, MatchesBruteForce) {
  std::mt19937_64 rng(79);
  for (int iter = 0; iter < 30; ++iter) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int s = 2 + static_cast<int>(rng() % 2);
    const Digraph d = oracle::random_digraph(rng, n, 0.5);
    const auto r = information_defect(d, s);
    ASSERT_TRUE(r.exact);
    EXPECT_EQ(r.chi, oracle::chromatic(oracle::guessing_graph(d, s)));
  }
}

TEST(InformationDefect, PartitionIsFixedSets) {
  const auto k3 = information_defect(clique(3), 2);
  EXPECT_DOUBLE_EQ(k3.b, 1.0);
  auto classes = k3.classes();
  ASSERT_EQ(classes.size(), 2u);
  std::sort(classes.begin(), classes.end());
  EXPECT_EQ(classes[0], even_words(3));

  EXPECT_DOUBLE_EQ(information_defect(cycle(3), 2).b, 2.0);
  EXPECT_DOUBLE_EQ(information_defect(digraph_union(UnionKind::bidirectional, clique(2), path(2)), 2).b, 2.0);

  std::mt19937_64 rng(83);
  for (int iter = 0; iter < 10; ++iter) {
    const Digraph d = oracle::random_digraph(rng, 3, 0.5);
    const auto r = information_defect(d, 2);
    for (const auto& cls : r.classes()) {
      const Protocol p = protocol_from_independent_set(d, 2, cls);
      const auto fixed = fixed_configurations(d, 2, p);
      for (ConfigCode x : cls) EXPECT_TRUE(std::binary_search(fixed.begin(), fixed.end(), x));
    }
  }
}

TEST(Protocol, FromIndependentSet) {
  const Digraph k3 = clique(3);
  const auto even = even_words(3);
  const Protocol p = protocol_from_independent_set(k3, 2, even);
  EXPECT_EQ(fixed_configurations(k3, 2, p), even);
  for (int v = 0; v < 3; ++v) EXPECT_EQ(p.table[v], (std::vector<int>{0, 1, 1, 0}));

  const std::vector<ConfigCode> one{5};
  EXPECT_EQ(fixed_configurations(cycle(4), 2, protocol_from_independent_set(cycle(4), 2, one)).front(), 5u);

  const std::vector<ConfigCode> clash{0, 1};
  try {
    protocol_from_independent_set(k3, 2, clash);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_independent);
    EXPECT_NE(std::string(e.what()).find("000"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("100"), std::string::npos);
  }
}

TEST(Protocol, RoundTripRandomIndependentSets) {
  std::mt19937_64 rng(89);
  for (int iter = 0; iter < 100; ++iter) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int s = 2 + static_cast<int>(rng() % 2);
    const Digraph d = oracle::random_digraph(rng, n, 0.5);
    const GuessingGraph h = materialize(d, s);
    std::vector<ConfigCode> set;
    std::vector<ConfigCode> order(h.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (ConfigCode x : order) {
      bool ok = true;
      for (ConfigCode y : set) ok = ok && !h.adjacent(x, y);
      if (ok && rng() % 2) set.push_back(x);
    }
    const Protocol p = protocol_from_independent_set(d, s, set);
    const auto fixed = fixed_configurations(d, s, p);
    for (ConfigCode x : set) EXPECT_TRUE(std::find(fixed.begin(), fixed.end(), x) != fixed.end());
    // Direct fixed-point check against the definition.
    const ConfigSpace sp(n, s);
    for (ConfigCode x = 0; x < sp.size(); ++x)
      EXPECT_EQ(p.apply(sp, x) == x, std::binary_search(fixed.begin(), fixed.end(), x));
  }
}

TEST(Protocol, FixedConfigurations) {
  EXPECT_EQ(fixed_configurations(clique(4), 3, zero_protocol(clique(4), 3)), (std::vector<ConfigCode>{0}));
  // Each vertex of C_3 copies its predecessor.
  Protocol copy = zero_protocol(cycle(3), 3);
  for (int v = 0; v < 3; ++v) copy.table[v] = {0, 1, 2};
  EXPECT_EQ(fixed_configurations(cycle(3), 3, copy), (std::vector<ConfigCode>{0, 13, 26}));
  EXPECT_THROW(fixed_configurations(cycle(3), 2, copy), Error);
}

TEST(FixedSets, ExhaustiveProtocolsMatchAlpha) {
  // All digraphs on 3 labelled vertices.
  const std::vector<Edge> all{{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}};
  for (int mask = 0; mask < 64; ++mask) {
    std::vector<Edge> es;
    for (int i = 0; i < 6; ++i)
      if (mask >> i & 1) es.push_back(all[i]);
    const Digraph d = Digraph::from_edges(3, es);
    EXPECT_EQ(guessing_number(d, 2).alpha, oracle::max_fixed_over_protocols(d, 2)) << mask;
  }
}

TEST(Laws, DefectPlusGuessingAtLeastN) {
  std::mt19937_64 rng(97);
  for (int iter = 0; iter < 40; ++iter) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int s = 2 + static_cast<int>(rng() % 2);
    const Digraph d = oracle::random_digraph(rng, n, 0.5);
    const auto g = guessing_number(d, s);
    const auto b = information_defect(d, s);
    EXPECT_GE(g.g + b.b, n - 1e-9);
    const double N = std::pow(static_cast<double>(s), n);
    if (s >= 3) EXPECT_LE(static_cast<double>(b.chi), (1.0 + std::log(static_cast<double>(g.alpha))) * N / static_cast<double>(g.alpha) + 1e-9);
  }
}

TEST(Laws, CodeSandwich) {
  std::mt19937_64 rng(101);
  for (int iter = 0; iter < 40; ++iter) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int s = 2 + static_cast<int>(rng() % 2);
    const Digraph d = oracle::random_strong_digraph(rng, n, 0.5);
    const auto st = structure_report(d);
    const auto alpha = guessing_number(d, s).alpha;
    EXPECT_LE(a_s_exact(n, n - st.min_in_degree + 1, s), alpha);
    EXPECT_GE(a_s_exact(n, *st.girth, s), alpha);
  }
}

TEST(Laws, MdsCodeAttainsMinInDegree) {
  // Reed-Solomon [4,2,3] code over GF(4), symbols coded as 2-bit polynomials in w.
  auto mul = [](int a, int b) {
    int r = 0;
    for (int i = 0; i < 2; ++i)
      if (b >> i & 1) r ^= a << i;
    if (r & 4) r ^= 0b111;
    return r;
  };
  const int w = 2;
  std::vector<ConfigCode> code;
  const ConfigSpace sp(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const std::vector<int> cw{a, b, a ^ b, a ^ mul(w, b)};
      code.push_back(sp.encode(cw));
    }
  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = i + 1; j < code.size(); ++j) EXPECT_GE(detail::hamming_distance(sp, code[i], code[j]), 3);
  // Each vertex hears the next two: minimum in-degree 2.
  std::vector<Edge> es;
  for (int v = 0; v < 4; ++v) {
    es.push_back({(v + 1) % 4, v});
    es.push_back({(v + 2) % 4, v});
  }
  const Digraph d = Digraph::from_edges(4, es);
  ASSERT_EQ(structure_report(d).min_in_degree, 2);
  const GuessingGraph h = materialize(d, 4);
  EXPECT_TRUE(is_independent(h.adjacency(), std::vector<std::size_t>(code.begin(), code.end())));
  EXPECT_GE(guessing_number(d, 4).g, 2.0 - 1e-9);
}

TEST(Laws, UnionsMatchGraphProducts) {
  const std::vector<Digraph> small{empty_digraph(1), clique(2), path(2), empty_digraph(2)};
  for (const Digraph& a : small)
    for (const Digraph& b : small) {
      const auto ga = guessing_number(a, 2), gb = guessing_number(b, 2);
      const Digraph dis = digraph_union(UnionKind::disjoint, a, b);
      const Digraph uni = digraph_union(UnionKind::unidirectional, a, b);
      const Digraph bi = digraph_union(UnionKind::bidirectional, a, b);
      EXPECT_NEAR(guessing_number(dis, 2).g, ga.g + gb.g, 1e-9);
      EXPECT_NEAR(guessing_number(uni, 2).g, ga.g + gb.g, 1e-9);
      const auto ba = information_defect(a, 2), bb = information_defect(b, 2);
      EXPECT_NEAR(information_defect(bi, 2).b, std::max(ba.b, bb.b), 1e-9);
      EXPECT_EQ(guessing_number(dis, 2).alpha, alpha_of_product(GraphProduct::conormal, a, b));
      EXPECT_EQ(guessing_number(uni, 2).alpha, alpha_of_product(GraphProduct::lexicographic, a, b));
      EXPECT_EQ(guessing_number(bi, 2).alpha, alpha_of_product(GraphProduct::cartesian, a, b));
      // Low digits hold the first digraph, so the codes line up with the product index.
      const BitGraph ha = materialize(a, 2).adjacency(), hb = materialize(b, 2).adjacency();
      EXPECT_EQ(materialize(dis, 2).adjacency(), graph_product(GraphProduct::conormal, ha, hb));
      EXPECT_EQ(materialize(uni, 2).adjacency(), graph_product(GraphProduct::lexicographic, ha, hb));
      EXPECT_EQ(materialize(bi, 2).adjacency(), graph_product(GraphProduct::cartesian, ha, hb));
    }
}

TEST(Laws, ExpansionIsomorphism) {
  const std::vector<std::tuple<Digraph, int, int>> cases{{cycle(3), 2, 2}, {clique(2), 2, 2}, {path(2), 3, 2}};
  for (const auto& [d, k, s] : cases) {
    const GuessingGraph big(k_expand(d, k), s);
    const int sk = static_cast<int>(oracle::ipow(static_cast<std::uint64_t>(s), k));
    const GuessingGraph small(d, sk);
    // Symbol of (v,i) is digit i of the base-s expansion of the symbol of v.
    auto map = [&](ConfigCode x) {
      const auto w = small.space().decode(x);
      std::vector<int> e(static_cast<std::size_t>(d.size() * k));
      for (int v = 0; v < d.size(); ++v)
        for (int i = 0, y = w[v]; i < k; ++i, y /= s) e[v * k + i] = y % s;
      return big.space().encode(e);
    };
    for (ConfigCode x = 0; x < small.vertex_count(); ++x)
      for (ConfigCode y = 0; y < small.vertex_count(); ++y) EXPECT_EQ(small.adjacent(x, y), big.adjacent(map(x), map(y)));
  }
}

TEST(Codes, ASExact) {
  EXPECT_EQ(a_s_exact(3, 2, 2), 4u);
  EXPECT_EQ(a_s_exact(3, 3, 2), 2u);
  EXPECT_EQ(a_s_exact(5, 1, 3), 243u);
  EXPECT_EQ(a_s_exact(7, 3, 2), 16u);
  EXPECT_THROW(a_s_exact(20, 5, 2), Error);
  const auto b = code_bounds(20, 5, 2);
  EXPECT_EQ(b.singleton, 1u << 16);
  EXPECT_LE(b.lower(), b.upper());
}

TEST(Codes, MatchesBruteForce) {
  for (int s : {2, 3})
    for (int n = 1; n <= (s == 2 ? 5 : 3); ++n)
      for (int d = 1; d <= n; ++d) EXPECT_EQ(a_s_exact(n, d, s), oracle::code_size(n, d, s)) << n << "," << d << "," << s;
}

TEST(AlphabetBounds, Composition) {
  const Interval c3 = alphabet_composition_bounds(1, 1, 3, 2, 3);
  EXPECT_NEAR(c3.lower, 1.0, 1e-12);
  EXPECT_NEAR(c3.upper, (std::log(3.0) + 3 * std::log(2.0)) / std::log(6.0), 1e-12);
  EXPECT_TRUE(c3.contains(guessing_number(cycle(3), 6).g));

  const Interval full = alphabet_composition_bounds(4, 4, 4, 2, 3);
  EXPECT_NEAR(full.lower, 4, 1e-12);
  EXPECT_NEAR(full.upper, 4, 1e-12);

  const Interval k3 = alphabet_composition_bounds(2, 2, 3, 2, 2);
  EXPECT_NEAR(k3.lower, 2, 1e-12);
  EXPECT_NEAR(k3.upper, 2.5, 1e-12);
  EXPECT_TRUE(k3.contains(guessing_number(clique(3), 4).g));

  const Interval pw = alphabet_power_bounds(1, 3, 2, 6);
  EXPECT_TRUE(pw.contains(1.0));
}

TEST(Bounds, P7Pinched) {
  std::vector<Edge> es;
  // Paley tournament: i -> i + q for quadratic residues q of 7.
  for (int i = 0; i < 7; ++i)
    for (int q : {1, 2, 4}) es.push_back({i, (i + q) % 7});
  const Digraph p7 = Digraph::from_edges(7, es);
  const BoundsReport r = bounds_report(p7, 2);
  EXPECT_EQ(r.mas, 3);
  EXPECT_NEAR(r.find("mas_upper")->value, 4, 1e-12);
  EXPECT_NEAR(r.find("sphere_packing_upper")->value, 4, 1e-12);
  EXPECT_NEAR(r.find("code_upper")->value, 4, 1e-12);
  EXPECT_NEAR(r.best("guessing", "lower"), 4, 1e-12);
  EXPECT_NEAR(r.best("guessing", "upper"), 4, 1e-12);
}

TEST(Bounds, C3SquaredAndBipartite) {
  const BoundsReport r = bounds_report(strong_power(cycle(3), 2), 2);
  EXPECT_NEAR(r.find("mas_upper")->value, 5, 1e-12);
  ASSERT_TRUE(r.linear);
  EXPECT_EQ(r.linear->lower, 5);

  const BoundsReport b = bounds_report(complete_bipartite(2, 3), 2);
  EXPECT_NEAR(b.best("guessing", "upper"), 2, 1e-12);
  EXPECT_NEAR(b.best("guessing", "lower"), 2, 1e-12);
  EXPECT_FALSE(b.find("sphere_packing_upper")->applicable);
}

TEST(Bounds, SoundOnRandomDigraphs) {
  std::mt19937_64 rng(103);
  for (int iter = 0; iter < 60; ++iter) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int s = 2 + static_cast<int>(rng() % 2);
    const Digraph d = oracle::random_digraph(rng, n, 0.5);
    BoundsOptions opt;
    opt.solve = true;
    const BoundsReport r = bounds_report(d, s, opt);
    const double g = r.guess->g, b = r.defect->b;
    std::optional<double> gl;
    if (r.linear && r.linear->exact) gl = r.linear->lower;
    const auto bad = check_bounds(r, g, gl, b);
    EXPECT_TRUE(bad.empty()) << bad.front();
  }
}

TEST(Bounds, TextAndMachineOutput) {
  BoundsOptions opt;
  opt.solve = true;
  const BoundsReport r = bounds_report(clique(3), 2, opt);
  std::ostringstream m, t;
  write_bounds_machine(m, r);
  write_bounds_text(t, r);
  EXPECT_NE(m.str().find("alpha=4\n"), std::string::npos);
  EXPECT_NE(m.str().find("bound.sphere_packing_upper=omitted\n"), std::string::npos);
  EXPECT_NE(t.str().find("alpha=4 g=2.000"), std::string::npos);
}
