#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "guessgraph/bits.hpp"
#include "guessgraph/digraph.hpp"
#include "guessgraph/error.hpp"
#include "guessgraph/graph_search.hpp"

namespace guessgraph {

using ConfigCode = std::uint64_t;

inline constexpr std::uint64_t kDefaultMaterializeGuard = std::uint64_t{1} << 22;
// Above this many configurations only the neighbourhood of 0 is stored.
inline constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 14;

// Words of length n over [s], coded as sum x_i s^i (x_0 least significant).
class ConfigSpace {
 public:
  ConfigSpace() = default;
  ConfigSpace(int n, int s) : n_(n), s_(s) {
    if (s < 2) throw Error(Errc::bad_params, "alphabet size must be >= 2");
    if (n < 0) throw Error(Errc::bad_params, "negative length");
    for (int i = 0; i < n; ++i) {
      if (pow_.back() > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(s))
        throw Error(Errc::size_guard, std::to_string(s) + "^" + std::to_string(n) + " configurations do not fit in 62 bits");
      pow_.push_back(pow_.back() * static_cast<std::uint64_t>(s));
    }
  }

  int length() const { return n_; }
  int alphabet() const { return s_; }
  std::uint64_t size() const { return pow_.back(); }
  std::uint64_t power(int i) const { return pow_[static_cast<std::size_t>(i)]; }

  int digit(ConfigCode x, int i) const {
    if (s_ == 2) return static_cast<int>((x >> i) & 1U);
    return static_cast<int>((x / pow_[static_cast<std::size_t>(i)]) % static_cast<std::uint64_t>(s_));
  }

  ConfigCode encode(std::span<const int> word) const {
    if (static_cast<int>(word.size()) != n_)
      throw Error(Errc::alphabet_mismatch, "configuration length " + std::to_string(word.size()) + " != " + std::to_string(n_));
    ConfigCode c = 0;
    for (int i = 0; i < n_; ++i) {
      if (word[i] < 0 || word[i] >= s_)
        throw Error(Errc::alphabet_mismatch, "symbol " + std::to_string(word[i]) + " outside [0," + std::to_string(s_) + ")");
      c += static_cast<ConfigCode>(word[i]) * pow_[i];
    }
    return c;
  }

  std::vector<int> decode(ConfigCode c) const {
    check(c);
    std::vector<int> w(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) w[i] = digit(c, i);
    return w;
  }

  void check(ConfigCode c) const {
    if (c >= size()) throw Error(Errc::alphabet_mismatch, "configuration code " + std::to_string(c) + " out of range");
  }

  // Componentwise addition / subtraction mod s.
  ConfigCode add(ConfigCode a, ConfigCode b) const {
    if (s_ == 2) return a ^ b;
    ConfigCode c = 0;
    for (int i = 0; i < n_; ++i) c += static_cast<ConfigCode>((digit(a, i) + digit(b, i)) % s_) * pow_[i];
    return c;
  }
  ConfigCode sub(ConfigCode a, ConfigCode b) const {
    if (s_ == 2) return a ^ b;
    ConfigCode c = 0;
    for (int i = 0; i < n_; ++i) c += static_cast<ConfigCode>((digit(a, i) - digit(b, i) + s_) % s_) * pow_[i];
    return c;
  }

  // Render as a digit string x_0 x_1 ... x_{n-1} (single characters for s <= 36).
  std::string to_string(ConfigCode c) const {
    std::string out;
    for (int i = 0; i < n_; ++i) {
      int d = digit(c, i);
      out.push_back(static_cast<char>(d < 10 ? '0' + d : 'a' + d - 10));
    }
    return out;
  }

 private:
  int n_ = 0;
  int s_ = 2;
  std::vector<std::uint64_t> pow_{1};
};

// Guessing graph G(D,s): configurations x ~ y iff for some vertex i, x and y
// differ at i but agree on the in-neighbourhood of i.
class GuessingGraph {
 public:
  GuessingGraph(Digraph d, int s) : d_(std::move(d)), space_(d_.size(), s) {}

  const Digraph& digraph() const { return d_; }
  int alphabet() const { return space_.alphabet(); }
  const ConfigSpace& space() const { return space_; }
  std::uint64_t vertex_count() const { return space_.size(); }

  bool adjacent(ConfigCode x, ConfigCode y) const {
    space_.check(x);
    space_.check(y);
    return adjacent_unchecked(x, y);
  }

  bool adjacent(std::span<const int> x, std::span<const int> y) const {
    return adjacent_unchecked(space_.encode(x), space_.encode(y));
  }

  bool adjacent_unchecked(ConfigCode x, ConfigCode y) const {
    const int n = d_.size();
    for (int i = 0; i < n; ++i) {
      if (space_.digit(x, i) == space_.digit(y, i)) continue;
      bool agree = true;
      for (int u : d_.in(i))
        if (space_.digit(x, u) != space_.digit(y, u)) {
          agree = false;
          break;
        }
      if (agree) return true;
    }
    return false;
  }

  // Exact neighbour list of x, ascending.
  std::vector<ConfigCode> neighbors(ConfigCode x, std::uint64_t guard = kDefaultMaterializeGuard) const {
    space_.check(x);
    if (vertex_count() > guard)
      throw Error(Errc::size_guard, "neighbour enumeration over " + std::to_string(vertex_count()) + " configurations exceeds guard");
    std::vector<ConfigCode> out;
    if (zero_neighbourhood_) {
      for (std::size_t d = zero_neighbourhood_->first(); d < zero_neighbourhood_->size(); d = zero_neighbourhood_->next(d + 1))
        out.push_back(space_.add(x, d));
      std::sort(out.begin(), out.end());
      return out;
    }
    for (ConfigCode y = 0; y < vertex_count(); ++y)
      if (adjacent_unchecked(x, y)) out.push_back(y);
    return out;
  }

  bool materialized() const { return zero_neighbourhood_.has_value(); }
  bool dense() const { return dense_.has_value(); }

  const BitGraph& adjacency() const {
    if (!dense_)
      throw Error(Errc::size_guard, "explicit adjacency needs at most " + std::to_string(kDenseLimit) + " configurations, have " +
                                        std::to_string(vertex_count()));
    return *dense_;
  }

  const Bits& zero_neighbourhood() const {
    if (!zero_neighbourhood_) throw Error(Errc::size_guard, "guessing graph not materialised");
    return *zero_neighbourhood_;
  }

  std::uint64_t degree() const { return zero_neighbourhood().count(); }

 private:
  friend GuessingGraph materialize(const Digraph& d, int s, std::uint64_t guard);

  Digraph d_;
  ConfigSpace space_;
  std::optional<Bits> zero_neighbourhood_;
  std::optional<BitGraph> dense_;
};

// Builds the neighbourhood of the zero configuration with the edge rule, then
// every row by translation (x ~ y iff y - x is a neighbour of 0).
inline GuessingGraph materialize(const Digraph& d, int s, std::uint64_t guard = kDefaultMaterializeGuard) {
  GuessingGraph h(d, s);
  const std::uint64_t count = h.vertex_count();
  if (count > guard) {
    int exponent = 0;
    while ((std::uint64_t{1} << exponent) < count && exponent < 63) ++exponent;
    throw Error(Errc::size_guard, std::to_string(s) + "^" + std::to_string(d.size()) + " = " + std::to_string(count) +
                                      " configurations exceed guard " + std::to_string(guard) + " (needs 2^" +
                                      std::to_string(exponent) + ")");
  }
  Bits zero(count);
  std::vector<ConfigCode> delta;
  for (ConfigCode y = 1; y < count; ++y)
    if (h.adjacent_unchecked(0, y)) {
      zero.set(y);
      delta.push_back(y);
    }
  h.zero_neighbourhood_ = std::move(zero);
  if (count <= kDenseLimit) {
    BitGraph g(count);
    for (ConfigCode x = 0; x < count; ++x) {
      Bits& row = g.mutable_row(x);
      for (ConfigCode dlt : delta) row.set(h.space_.add(x, dlt));
    }
    h.dense_ = std::move(g);
  }
  return h;
}

// Degree of G(D,s) by inclusion-exclusion over the digraph-independent sets I:
// sum of (-1)^{|I|-1} (s-1)^{|I|} s^{n-|N_-(I)|-|I|}. Needs n <= 64.
inline std::int64_t degree_closed_form(const Digraph& d, int s) {
  const int n = d.size();
  if (n > 64) throw Error(Errc::size_guard, "closed-form degree enumerates vertex subsets; n must be <= 64");
  const ConfigSpace space(n, s);  // validates that s^n fits
  std::vector<std::uint64_t> in(static_cast<std::size_t>(n)), touch(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    in[v] = d.in_mask(v);
    touch[v] = in[v] | d.out_mask(v);
  }
  std::vector<std::int64_t> spow(static_cast<std::size_t>(n) + 1, 1), s1pow(static_cast<std::size_t>(n) + 1, 1);
  for (int i = 1; i <= n; ++i) {
    spow[i] = spow[i - 1] * s;
    s1pow[i] = s1pow[i - 1] * (s - 1);
  }
  std::int64_t total = 0;
  // chosen: the independent set; blocked: vertices adjacent to it; inn: union of in-neighbourhoods.
  auto rec = [&](auto&& self, int from, std::uint64_t chosen, std::uint64_t blocked, std::uint64_t inn) -> void {
    for (int v = from; v < n; ++v) {
      const std::uint64_t bit = std::uint64_t{1} << v;
      if (blocked & bit) continue;
      const std::uint64_t c = chosen | bit;
      const std::uint64_t nin = inn | in[v];
      const int k = std::popcount(c);
      const std::int64_t term = s1pow[k] * spow[n - std::popcount(nin) - k];
      total += (k % 2 == 1) ? term : -term;
      self(self, v + 1, c, blocked | touch[v] | bit, nin);
    }
  };
  rec(rec, 0, 0, 0, 0);
  return total;
}

// Plain edge list over configuration codes: header `N E`, then `x y` with x < y.
inline void write_guessing_graph(std::ostream& out, const GuessingGraph& h) {
  const BitGraph& g = h.adjacency();
  out << g.size() << ' ' << g.edge_count() << '\n';
  for (std::size_t x = 0; x < g.size(); ++x) {
    const Bits& r = g.row(x);
    for (std::size_t y = r.next(x + 1); y < g.size(); y = r.next(y + 1)) out << x << ' ' << y << '\n';
  }
}

}  // namespace guessgraph
