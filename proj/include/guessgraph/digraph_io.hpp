#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "guessgraph/digraph.hpp"

namespace guessgraph {

namespace detail {

inline std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  std::string s = pos == std::string::npos ? line : line.substr(0, pos);
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

// Text format: first meaningful line `n`, then one `u v` edge per line.
// `#` starts a comment; duplicate edges collapse.
inline Digraph read_digraph(std::istream& in) {
  std::string line;
  int n = -1;
  int lineno = 0;
  std::vector<Edge> es;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = detail::strip_comment(line);
    if (body.empty()) continue;
    std::istringstream ss(body);
    if (n < 0) {
      if (!(ss >> n) || n < 0) throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": expected vertex count");
    } else {
      Edge e;
      if (!(ss >> e.from >> e.to)) throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": expected `u v`");
      es.push_back(e);
    }
    std::string extra;
    if (ss >> extra) throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": trailing tokens");
  }
  if (n < 0) throw Error(Errc::parse_error, "missing vertex count");
  return Digraph::from_edges(n, es);
}

inline Digraph read_digraph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::parse_error, "cannot open " + path);
  return read_digraph(f);
}

inline void write_digraph(std::ostream& out, const Digraph& d) {
  out << d.size() << '\n';
  for (const Edge& e : d.edges()) out << e.from << ' ' << e.to << '\n';
}

inline std::string to_text(const Digraph& d) {
  std::ostringstream ss;
  write_digraph(ss, d);
  return ss.str();
}

// Bidirectional pairs become a single `dir=both` edge.
inline void write_dot(std::ostream& out, const Digraph& d, const std::string& name = "D") {
  out << "digraph " << name << " {\n";
  for (int v = 0; v < d.size(); ++v) out << "  " << v << ";\n";
  for (const Edge& e : d.edges()) {
    const bool both = d.has_edge(e.to, e.from);
    if (both && e.from > e.to) continue;
    out << "  " << e.from << " -> " << e.to;
    if (both) out << " [dir=both]";
    out << ";\n";
  }
  out << "}\n";
}

}  // namespace guessgraph
