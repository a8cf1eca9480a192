#pragma once

// Text formats.
//
// Instance (one record per line, `c` lines are comments, ids are 0-based):
//   p aemfp <n> <m> <k>
//   n <id> s|t
//   a <id> <tail> <head> <cap>
//   h <setid> const <c> <edge ids...>
//   h <setid> affine <slope> <intercept> <edge ids...>
//   h <setid> poly <deg> <c0> ... <cdeg> <edge ids...>
// Rationals are written as p/q (or plain integers).

#include <algorithm>
#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aemf/errors.hpp"
#include "aemf/generators.hpp"
#include "aemf/instance.hpp"
#include "aemf/solvers.hpp"

namespace aemf {

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  /// Next non-empty, non-comment line split into tokens.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (pos_ <= text_.size()) {
      const std::size_t end = std::min(text_.find('\n', pos_), text_.size());
      line.assign(text_.substr(pos_, end - pos_));
      pos_ = end + 1;
      ++line_;
      tokens.clear();
      std::istringstream in(line);
      for (std::string t; in >> t;) tokens.push_back(t);
      if (tokens.empty() || tokens.front() == "c") continue;
      return true;
    }
    return false;
  }

  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, message); }

  std::size_t index(const std::string& token, const char* what) const {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
      fail(std::string("expected ") + what + ", got '" + token + "'");
    }
    try {
      return static_cast<std::size_t>(std::stoull(token));
    } catch (const std::out_of_range&) {
      fail(std::string(what) + " out of range: '" + token + "'");
    }
  }

  Rational rational(const std::string& token) const {
    try {
      return parse_rational(token);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
  detail::LineReader reader(text);
  std::vector<std::string> tok;
  if (!reader.next(tok)) throw ParseError(reader.line(), "empty input, expected 'p aemfp <n> <m> <k>'");
  if (tok.size() != 5 || tok[0] != "p" || tok[1] != "aemfp") reader.fail("expected 'p aemfp <n> <m> <k>'");
  const std::size_t n = reader.index(tok[2], "node count");
  const std::size_t m = reader.index(tok[3], "edge count");
  const std::size_t k = reader.index(tok[4], "set count");
  const std::size_t header_line = reader.line();

  std::optional<NodeId> source;
  std::optional<NodeId> sink;
  std::vector<std::optional<Edge>> arcs(m);
  std::vector<Rational> caps(m);
  std::vector<std::optional<HomologousSet>> sets(k);

  while (reader.next(tok)) {
    const std::string& kind = tok[0];
    if (kind == "n") {
      if (tok.size() != 3) reader.fail("expected 'n <id> s|t'");
      const NodeId v = reader.index(tok[1], "node id");
      if (v >= n) reader.fail("node id " + tok[1] + " out of range");
      if (tok[2] != "s" && tok[2] != "t") reader.fail("node role must be s or t");
      std::optional<NodeId>& slot = tok[2] == "s" ? source : sink;
      if (slot) reader.fail("duplicate " + tok[2] + " line");
      slot = v;
    } else if (kind == "a") {
      if (tok.size() != 5) reader.fail("expected 'a <id> <tail> <head> <cap>'");
      const EdgeId e = reader.index(tok[1], "edge id");
      if (e >= m) reader.fail("edge id " + tok[1] + " out of range");
      if (arcs[e]) reader.fail("duplicate edge id " + tok[1]);
      const NodeId tail = reader.index(tok[2], "tail");
      const NodeId head = reader.index(tok[3], "head");
      if (tail >= n || head >= n) reader.fail("edge endpoint out of range");
      if (tail == head) reader.fail("self-loop at node " + tok[2]);
      caps[e] = reader.rational(tok[4]);
      if (caps[e] < 0) reader.fail("negative capacity");
      arcs[e] = Edge{tail, head};
    } else if (kind == "h") {
      if (tok.size() < 4) reader.fail("incomplete homologous set line");
      const std::size_t id = reader.index(tok[1], "set id");
      if (id >= k) reader.fail("set id " + tok[1] + " out of range");
      if (sets[id]) reader.fail("duplicate set id " + tok[1]);
      std::size_t next = 3;
      auto take = [&]() -> const std::string& {
        if (next >= tok.size()) reader.fail("homologous set line ends early");
        return tok[next++];
      };
      std::optional<DeviationFn> dev;
      try {
        if (tok[2] == "const") {
          dev = DeviationFn::constant_shift(reader.rational(take()));
        } else if (tok[2] == "affine") {
          const Rational slope = reader.rational(take());
          dev = DeviationFn::affine(slope, reader.rational(take()));
        } else if (tok[2] == "poly") {
          const std::size_t degree = reader.index(take(), "degree");
          if (degree > 16) reader.fail("polynomial degree too large");
          std::vector<Rational> coeffs;
          for (std::size_t j = 0; j <= degree; ++j) coeffs.push_back(reader.rational(take()));
          dev = DeviationFn::polynomial(std::move(coeffs));
        } else {
          reader.fail("unknown deviation kind '" + tok[2] + "'");
        }
      } catch (const InvalidInstance& e) {
        reader.fail(e.what());
      }
      HomologousSet set{{}, *dev};
      while (next < tok.size()) {
        const EdgeId e = reader.index(tok[next++], "edge id");
        if (e >= m) reader.fail("set " + tok[1] + " names unknown edge " + std::to_string(e));
        set.edges.push_back(e);
      }
      if (set.edges.empty()) reader.fail("set " + tok[1] + " has no edges");
      sets[id] = std::move(set);
    } else if (kind == "p") {
      reader.fail("second problem line");
    } else {
      reader.fail("unknown record '" + kind + "'");
    }
  }

  if (!source || !sink) throw ParseError(header_line, "missing source or sink line");
  for (EdgeId e = 0; e < m; ++e) {
    if (!arcs[e]) throw ParseError(header_line, "edge " + std::to_string(e) + " is declared but missing");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!sets[i]) throw ParseError(header_line, "homologous set " + std::to_string(i) + " is declared but missing");
  }
  try {
    Graph g(n, *source, *sink);
    for (const auto& arc : arcs) g.add_edge(arc->tail, arc->head);
    std::vector<HomologousSet> plain;
    for (auto& s : sets) plain.push_back(std::move(*s));
    return Instance(std::move(g), std::move(caps), std::move(plain));
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidInstance& e) {
    throw ParseError(header_line, e.what());
  }
}

inline Instance read_instance(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

inline void write_instance(std::ostream& out, const Instance& inst) {
  const Graph& g = inst.graph();
  out << "p aemfp " << g.num_nodes() << ' ' << g.num_edges() << ' ' << inst.k() << '\n';
  out << "n " << g.source() << " s\n";
  out << "n " << g.sink() << " t\n";
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    out << "a " << e << ' ' << g.edge(e).tail << ' ' << g.edge(e).head << ' ' << to_string(inst.capacity(e)) << '\n';
  }
  for (std::size_t i = 0; i < inst.k(); ++i) {
    const DeviationFn& dev = inst.set(i).deviation;
    out << "h " << i;
    switch (dev.kind()) {
      case DeviationFn::Kind::ConstantShift:
        out << " const " << to_string(dev.shift());
        break;
      case DeviationFn::Kind::Affine:
        out << " affine " << to_string(dev.slope()) << ' ' << to_string(dev.intercept());
        break;
      case DeviationFn::Kind::Polynomial:
        out << " poly " << dev.declared_degree();
        for (std::size_t j = 0; j <= dev.declared_degree(); ++j) out << ' ' << to_string(dev.poly().coeff(j));
        break;
    }
    for (EdgeId e : inst.set(i).edges) out << ' ' << e;
    out << '\n';
  }
}

inline std::string format_instance(const Instance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

// X3C: first line `q p`, then p lines with three 1-based element indices.

inline X3CInstance parse_x3c(std::string_view text) {
  detail::LineReader reader(text);
  std::vector<std::string> tok;
  if (!reader.next(tok) || tok.size() != 2) throw ParseError(reader.line(), "expected 'q p'");
  X3CInstance x;
  x.q = reader.index(tok[0], "q");
  const std::size_t p = reader.index(tok[1], "p");
  while (reader.next(tok)) {
    if (tok.size() != 3) reader.fail("expected three element indices");
    std::array<std::size_t, 3> t{};
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t a = reader.index(tok[j], "element index");
      if (a < 1 || a > x.q) reader.fail("element index " + tok[j] + " outside 1.." + std::to_string(x.q));
      t[j] = a - 1;
    }
    x.triples.push_back(t);
  }
  if (x.triples.size() != p) throw ParseError(reader.line(), "expected " + std::to_string(p) + " triples, found " + std::to_string(x.triples.size()));
  try {
    x.validate();
  } catch (const InvalidInstance& e) {
    throw ParseError(1, e.what());
  }
  return x;
}

inline void write_x3c(std::ostream& out, const X3CInstance& x) {
  out << x.q << ' ' << x.triples.size() << '\n';
  for (const auto& t : x.triples) out << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

/// Solution record: value, lambda per set, flow per edge and the cut.
inline void write_solution(std::ostream& out, const SolveResult& r) {
  out << "c aemf solution\n";
  out << "s optimal\n";
  out << "m " << r.method << (r.exact ? "" : " tolerance " + to_string(r.tolerance)) << '\n';
  out << "v " << to_string(r.opt_value) << '\n';
  for (std::size_t i = 0; i < r.lambda_star.size(); ++i) out << "l " << i << ' ' << to_string(r.lambda_star[i]) << '\n';
  for (EdgeId e = 0; e < r.flow.values.size(); ++e) out << "f " << e << ' ' << to_string(r.flow.values[e]) << '\n';
  out << 'k';
  for (NodeId v = 0; v < r.certificate.s_side.size(); ++v) {
    if (r.certificate.s_side[v]) out << ' ' << v;
  }
  out << '\n';
  out << "g " << to_string(cut_capacity_at(r.certificate, r.lambda_star)) << '\n';
}

/// Reads the `f <edge> <value>` lines of a flow or solution file; every edge
/// must appear exactly once. Other records are ignored.
inline std::vector<Rational> parse_flow(std::string_view text, std::size_t num_edges) {
  detail::LineReader reader(text);
  std::vector<std::string> tok;
  std::vector<std::optional<Rational>> values(num_edges);
  while (reader.next(tok)) {
    if (tok[0] != "f") continue;
    if (tok.size() != 3) reader.fail("expected 'f <edge> <value>'");
    const EdgeId e = reader.index(tok[1], "edge id");
    if (e >= num_edges) reader.fail("edge id " + tok[1] + " out of range");
    if (values[e]) reader.fail("duplicate flow for edge " + tok[1]);
    values[e] = reader.rational(tok[2]);
  }
  std::vector<Rational> out;
  for (EdgeId e = 0; e < num_edges; ++e) {
    if (!values[e]) throw ParseError(reader.line(), "no flow value for edge " + std::to_string(e));
    out.push_back(*values[e]);
  }
  return out;
}

/// CSV with header `lambda,F,slope`; the slope column holds the slope of the
/// segment starting at that breakpoint and is empty on the last row.
inline void write_breakpoints_csv(std::ostream& out, const BreakpointProfile& p) {
  out << "lambda,F,slope\n";
  for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
    out << to_string(p.breakpoints[i]) << ',' << to_string(p.values[i]) << ',';
    if (i < p.segment_slopes.size()) out << to_string(p.segment_slopes[i]);
    out << '\n';
  }
}

}  // namespace aemf
