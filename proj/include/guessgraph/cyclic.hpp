#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "guessgraph/digraph.hpp"
#include "guessgraph/error.hpp"
#include "guessgraph/gf_linear.hpp"

namespace guessgraph {

// Polynomial over GF(2), bit i = coefficient of x^i.
class Gf2Poly {
 public:
  Gf2Poly() = default;

  static Gf2Poly from_mask(std::uint64_t m) {
    Gf2Poly p;
    p.w_.push_back(m);
    p.trim();
    return p;
  }

  static Gf2Poly monomial(int k) {
    Gf2Poly p;
    p.set(k);
    return p;
  }

  static Gf2Poly one() { return monomial(0); }

  // x^n + 1
  static Gf2Poly xn1(int n) { return monomial(n) + one(); }

  // Ascending bit-string ("11101" = 1 + x + x^2 + x^4) or exponent form ("x4+x2+x+1", "x^4+x^2+x+1").
  static Gf2Poly parse(const std::string& text) {
    std::string t;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw Error(Errc::parse_error, "empty polynomial");
    Gf2Poly p;
    if (t.find_first_not_of("01") == std::string::npos) {
      for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] == '1') p.set(static_cast<int>(i));
      return p;
    }
    std::size_t pos = 0;
    while (pos <= t.size()) {
      std::size_t end = t.find('+', pos);
      if (end == std::string::npos) end = t.size();
      const std::string term = t.substr(pos, end - pos);
      int e = -1;
      if (term == "1") {
        e = 0;
      } else if (term == "0") {
        e = -2;
      } else if (!term.empty() && (term[0] == 'x' || term[0] == 'X')) {
        std::string rest = term.substr(1);
        if (!rest.empty() && rest[0] == '^') rest = rest.substr(1);
        if (rest.empty()) {
          e = 1;
        } else if (rest.find_first_not_of("0123456789") == std::string::npos && rest.size() < 6) {
          e = std::stoi(rest);
        }
      }
      if (e == -1) throw Error(Errc::parse_error, "bad polynomial term `" + term + "` in `" + text + "`");
      if (e >= 0) p.flip(e);
      pos = end + 1;
    }
    return p;
  }

  int degree() const {
    for (std::size_t i = w_.size(); i-- > 0;)
      if (w_[i]) return static_cast<int>(i * 64 + 63 - static_cast<std::size_t>(std::countl_zero(w_[i])));
    return -1;
  }

  bool is_zero() const { return degree() < 0; }
  bool coeff(int i) const {
    if (i < 0) return false;
    const auto k = static_cast<std::size_t>(i) / 64;
    return k < w_.size() && ((w_[k] >> (i % 64)) & 1U);
  }
  int weight() const {
    int c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
  }

  // Ascending coefficient string, "0" for the zero polynomial.
  std::string bits() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = 0; i <= degree(); ++i) s.push_back(coeff(i) ? '1' : '0');
    return s;
  }

  // Descending exponent form, e.g. x^4+x^2+x+1.
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      if (!coeff(i)) continue;
      if (!s.empty()) s += '+';
      s += i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i);
    }
    return s;
  }

  friend Gf2Poly operator+(const Gf2Poly& a, const Gf2Poly& b) {
    Gf2Poly r;
    r.w_.assign(std::max(a.w_.size(), b.w_.size()), 0);
    for (std::size_t i = 0; i < a.w_.size(); ++i) r.w_[i] ^= a.w_[i];
    for (std::size_t i = 0; i < b.w_.size(); ++i) r.w_[i] ^= b.w_[i];
    r.trim();
    return r;
  }

  friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
    Gf2Poly r;
    const int db = b.degree();
    for (int i = 0; i <= a.degree(); ++i)
      if (a.coeff(i))
        for (int j = 0; j <= db; ++j)
          if (b.coeff(j)) r.flip(i + j);
    r.trim();
    return r;
  }

  friend bool operator==(const Gf2Poly& a, const Gf2Poly& b) {
    const std::size_t n = std::max(a.w_.size(), b.w_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = i < a.w_.size() ? a.w_[i] : 0, y = i < b.w_.size() ? b.w_[i] : 0;
      if (x != y) return false;
    }
    return true;
  }

  void set(int i) {
    grow(i);
    w_[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64);
  }
  void flip(int i) {
    grow(i);
    w_[static_cast<std::size_t>(i) / 64] ^= std::uint64_t{1} << (i % 64);
    trim();
  }

 private:
  void grow(int i) {
    const auto need = static_cast<std::size_t>(i) / 64 + 1;
    if (w_.size() < need) w_.resize(need, 0);
  }
  void trim() {
    while (!w_.empty() && w_.back() == 0) w_.pop_back();
  }

  std::vector<std::uint64_t> w_;
};

inline std::pair<Gf2Poly, Gf2Poly> poly_divmod(const Gf2Poly& a, const Gf2Poly& b) {
  const int db = b.degree();
  if (db < 0) throw Error(Errc::division_by_zero_poly, "division by the zero polynomial");
  Gf2Poly q, r = a;
  for (int d = r.degree(); d >= db; d = r.degree()) {
    q.set(d - db);
    r = r + b * Gf2Poly::monomial(d - db);
  }
  return {q, r};
}

inline Gf2Poly poly_mul(const Gf2Poly& a, const Gf2Poly& b) { return a * b; }

inline Gf2Poly poly_gcd(Gf2Poly a, Gf2Poly b) {
  while (!b.is_zero()) {
    Gf2Poly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;  // monic automatically over GF(2)
}

inline Gf2Poly poly_lcm(const Gf2Poly& a, const Gf2Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return poly_divmod(a * b, poly_gcd(a, b)).first;
}

inline bool divides_xn1(const Gf2Poly& g, int n) {
  if (n < 1) throw Error(Errc::bad_params, "length must be >= 1");
  if (g.is_zero()) return false;
  return poly_divmod(Gf2Poly::xn1(n), g).second.is_zero();
}

// Every divisor of x^n + 1, ascending by bit mask (n <= 20).
inline std::vector<Gf2Poly> divisors_xn1(int n) {
  if (n < 1 || n > 20) throw Error(Errc::bad_params, "divisor enumeration supports 1 <= n <= 20");
  std::vector<Gf2Poly> out;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << (n + 1)); m += 2) {
    const Gf2Poly g = Gf2Poly::from_mask(m);
    if (divides_xn1(g, n)) out.push_back(g);
  }
  return out;
}

// Circulant digraph: v_{a+i mod n} -> v_a whenever g_i = 1, 1 <= i <= deg g.
inline Digraph digraph_from_polynomial(const Gf2Poly& g, int n) {
  if (n < 1) throw Error(Errc::bad_params, "length must be >= 1");
  if (!g.coeff(0)) throw Error(Errc::bad_generator, "constant coefficient of " + g.to_string() + " is 0");
  if (g.degree() >= n)
    throw Error(Errc::bad_params, "degree " + std::to_string(g.degree()) + " must be below n = " + std::to_string(n));
  std::vector<Edge> es;
  for (int i = 1; i <= g.degree(); ++i)
    if (g.coeff(i))
      for (int a = 0; a < n; ++a) es.push_back({(a + i) % n, a});
  return Digraph::from_edges(n, es);
}

struct PolynomialDigraph {
  Gf2Poly g;
  int n = 0;
  Digraph d;
  bool cyclic_code = false;  // g divides x^n + 1
  Gf2Poly gcd;               // gcd(g, x^n + 1)
  int gcd_lower = 0;         // deg gcd, a lower bound on the binary linear guessing number
};

inline PolynomialDigraph polynomial_digraph(const Gf2Poly& g, int n) {
  PolynomialDigraph r;
  r.g = g;
  r.n = n;
  r.d = digraph_from_polynomial(g, n);
  r.gcd = poly_gcd(g, Gf2Poly::xn1(n));
  r.cyclic_code = r.gcd == g;
  r.gcd_lower = r.gcd.degree();
  return r;
}

// ---------------------------------------------------------------------------

struct Theorem2Report {
  Gf2Poly g;
  int n = 0;
  bool applicable = false;  // g divides x^n + 1
  int degree = 0;
  int weight = 0;
  int gcd_lower = 0;

  // (1) regular with in- and out-degree w - 1
  bool regular = false;
  int in_degree = 0;
  // (2) no bidirectional edges: coefficient test vs. the built digraph
  bool unidirectional_coeff = false;
  bool unidirectional_graph = false;
  // (3) tournament
  bool tournament_coeff = false;
  bool tournament_graph = false;
  // (4) coprime exponents present implies strong
  bool coprime_pair = false;
  bool strong = false;
  // (5) first n - deg vertices acyclic, and mas = n - deg
  bool prefix_acyclic = false;
  int mas = 0;
  bool mas_exact = false;
  // (6) parity-check dimension and n - mas both equal deg
  int parity_dimension = 0;
  int linear_upper = 0;

  bool property1() const { return regular && in_degree == weight - 1; }
  bool property2() const { return unidirectional_coeff == unidirectional_graph; }
  bool property3() const { return tournament_coeff == tournament_graph; }
  bool property4() const { return !coprime_pair || strong; }
  bool property5() const { return prefix_acyclic && (!mas_exact || mas == n - degree); }
  bool property6() const { return parity_dimension == degree && linear_upper == degree; }
  bool all() const { return property1() && property2() && property3() && property4() && property5() && property6(); }
};

inline Theorem2Report theorem2_report(const Gf2Poly& g, int n, std::uint64_t mas_budget = std::uint64_t{1} << 25) {
  Theorem2Report r;
  const PolynomialDigraph pd = polynomial_digraph(g, n);
  const Digraph& d = pd.d;
  r.g = g;
  r.n = n;
  r.applicable = pd.cyclic_code;
  r.degree = g.degree();
  r.weight = g.weight();
  r.gcd_lower = pd.gcd_lower;

  const StructureReport st = structure_report(d);
  r.regular = st.regular_in_out;
  r.in_degree = st.min_in_degree;

  // Indices are read mod n, so g_n stands for g_0.
  auto coef = [&](int i) { return g.coeff(((i % n) + n) % n); };
  r.unidirectional_coeff = true;
  for (int i = 1; i <= n / 2; ++i)
    if (coef(i) && coef(n - i)) r.unidirectional_coeff = false;
  r.unidirectional_graph = st.bidirectional_edge_count == 0;
  r.tournament_coeff = true;
  for (int i = 1; i <= n - 1; ++i)
    if ((coef(i) ? 1 : 0) + (coef(n - i) ? 1 : 0) != 1) r.tournament_coeff = false;
  r.tournament_graph = st.is_tournament;
  for (int i = 1; i <= n && !r.coprime_pair; ++i)
    for (int j = i; j <= n; ++j)
      if (coef(i) && coef(j) && std::gcd(i, j) == 1) {
        r.coprime_pair = true;
        break;
      }
  r.strong = st.strong;

  std::vector<int> prefix(static_cast<std::size_t>(std::max(0, n - r.degree)));
  std::iota(prefix.begin(), prefix.end(), 0);
  r.prefix_acyclic = is_acyclic_subset(d, prefix);
  const MasResult mas = mas_exact(d, mas_budget);
  r.mas = mas.size;
  r.mas_exact = mas.exact;
  r.parity_dimension = parity_check_protocol(d).dimension;
  r.linear_upper = n - (r.prefix_acyclic ? std::max<int>(mas.size, static_cast<int>(prefix.size())) : mas.size);
  return r;
}

// ---------------------------------------------------------------------------
// Simplex-code digraphs

// Primitive polynomials of degree 2..10 (ascending bit masks).
inline std::uint64_t primitive_polynomial(int l) {
  static const std::uint64_t table[] = {
      0b111,          // x^2+x+1
      0b1011,         // x^3+x+1
      0b10011,        // x^4+x+1
      0b100101,       // x^5+x^2+1
      0b1000011,      // x^6+x+1
      0b10000011,     // x^7+x+1
      0b100011101,    // x^8+x^4+x^3+x^2+1
      0b1000010001,   // x^9+x^4+1
      0b10000001001,  // x^10+x^3+1
  };
  if (l < 2 || l > 10) throw Error(Errc::bad_params, "simplex dimension must be in 2..10, got " + std::to_string(l));
  return table[l - 2];
}

// Order of x modulo p equals 2^deg(p) - 1.
inline bool is_primitive(const Gf2Poly& p) {
  const int l = p.degree();
  if (l < 1 || !p.coeff(0)) return false;
  const std::uint64_t period = (std::uint64_t{1} << l) - 1;
  Gf2Poly x = Gf2Poly::monomial(1), acc = x;
  for (std::uint64_t k = 1; k <= period; ++k) {
    const Gf2Poly r = poly_divmod(acc, p).second;
    if (r == Gf2Poly::one()) return k == period;
    acc = r * x;
  }
  return false;
}

struct SimplexDigraph {
  int l = 0;
  Gf2Poly primitive;
  Gf2Poly g;
  Digraph d;
};

inline SimplexDigraph simplex_digraph(int l) {
  SimplexDigraph r;
  r.l = l;
  r.primitive = Gf2Poly::from_mask(primitive_polynomial(l));
  if (!is_primitive(r.primitive)) throw std::logic_error("table polynomial " + r.primitive.to_string() + " is not primitive");
  const int n = (1 << l) - 1;
  r.g = poly_divmod(Gf2Poly::xn1(n), r.primitive).first;
  r.d = digraph_from_polynomial(r.g, n);
  return r;
}

// ---------------------------------------------------------------------------
// Families of cyclic-code digraphs meant to avoid bidirectional edges.

enum class FamilyKind { three_t, even_half, doubling };

struct FamilyResult {
  FamilyKind kind;
  Gf2Poly poly;
  int n = 0;
  Digraph d;
  bool divides = false;
  bool unidirectional = false;
  Theorem2Report report;
};

namespace detail {

inline FamilyResult finish_family(FamilyKind kind, const Gf2Poly& poly, int n) {
  FamilyResult f;
  f.kind = kind;
  f.poly = poly;
  f.n = n;
  f.divides = divides_xn1(poly, n);
  if (!f.divides) throw std::logic_error("family polynomial does not divide x^n + 1");
  f.d = digraph_from_polynomial(poly, n);
  f.unidirectional = structure_report(f.d).bidirectional_edge_count == 0;
  f.report = theorem2_report(poly, n);
  return f;
}

}  // namespace detail

// n = 3t with t > 3 and gcd(t, 3) = 1; polynomial (x^t + 1)(x^2 + x + 1).
inline FamilyResult family_three_t(int t) {
  if (t <= 3) throw Error(Errc::bad_params, "three_t needs t > 3");
  if (t % 3 == 0) throw Error(Errc::bad_params, "three_t needs gcd(t, 3) = 1");
  const Gf2Poly poly = Gf2Poly::xn1(t) * Gf2Poly::from_mask(0b111);
  return detail::finish_family(FamilyKind::three_t, poly, 3 * t);
}

// n = 2p; polynomial 1 + x + ... + x^{p-1}.
inline FamilyResult family_even_half(int p) {
  if (p < 2) throw Error(Errc::bad_params, "even_half needs p >= 2");
  Gf2Poly poly;
  for (int i = 0; i < p; ++i) poly.set(i);
  return detail::finish_family(FamilyKind::even_half, poly, 2 * p);
}

// g divides (x^t + 1)/(x + 1); polynomial (x + 1) g^{2^l}, n = 2^l t.
inline FamilyResult family_doubling(const Gf2Poly& g, int t, int l) {
  if (t < 2) throw Error(Errc::bad_params, "doubling needs t >= 2");
  if (l < 1 || l > 6) throw Error(Errc::bad_params, "doubling needs 1 <= l <= 6");
  const Gf2Poly base = poly_divmod(Gf2Poly::xn1(t), Gf2Poly::from_mask(0b11)).first;
  if (g.is_zero() || !poly_divmod(base, g).second.is_zero())
    throw Error(Errc::bad_params, g.to_string() + " does not divide (x^" + std::to_string(t) + "+1)/(x+1)");
  Gf2Poly h = Gf2Poly::from_mask(0b11);
  Gf2Poly power = g;
  for (int i = 0; i < l; ++i) power = power * power;
  h = h * power;
  return detail::finish_family(FamilyKind::doubling, h, (1 << l) * t);
}

}  // namespace guessgraph
