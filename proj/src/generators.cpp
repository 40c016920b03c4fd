#include "polytree/generators.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "polytree/errors.hpp"

namespace polytree {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool to_index(std::string_view tok, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

// Non-blank, non-comment lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    std::string_view l = text.substr(pos, end - pos);
    const auto first = l.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && l[first] != '#') out.emplace_back(line, l);
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

std::string edge_name(const UndirectedGraph& g, std::size_t a, std::size_t b) {
  std::string x = g.names[a];
  std::string y = g.names[b];
  if (y < x) std::swap(x, y);
  return "w_" + x + "_" + y;
}

}  // namespace

std::vector<std::vector<std::size_t>> UndirectedGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(size());
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& l : adj) std::sort(l.begin(), l.end());
  return adj;
}

UndirectedGraph make_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  UndirectedGraph g;
  for (std::size_t i = 0; i < n; ++i) g.names.push_back(std::to_string(i));
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw std::invalid_argument("edge endpoint out of range");
    if (a == b) throw std::invalid_argument("self-loop in graph");
    g.edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(g.edges.begin(), g.edges.end());
  if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end()) {
    throw std::invalid_argument("repeated edge in graph");
  }
  return g;
}

UndirectedGraph parse_graph(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(ParseErrorKind::kUnexpectedEnd, 0, "missing graph header");
  const auto header = tokens(lines[0].second);
  std::size_t n = 0;
  std::size_t m = 0;
  if (header.size() != 2 || !to_index(header[0], n) || !to_index(header[1], m)) {
    throw ParseError(ParseErrorKind::kMalformedHeader, lines[0].first, std::string(lines[0].second));
  }
  if (lines.size() < m + 1) throw ParseError(ParseErrorKind::kUnexpectedEnd, 0, "expected " + std::to_string(m) + " edges");
  if (lines.size() > m + 1) throw ParseError(ParseErrorKind::kTrailingContent, lines[m + 1].first, "extra line");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 1; i <= m; ++i) {
    const auto [line, l] = lines[i];
    const auto t = tokens(l);
    std::size_t a = 0;
    std::size_t b = 0;
    if (t.size() != 2 || !to_index(t[0], a) || !to_index(t[1], b)) {
      throw ParseError(ParseErrorKind::kMalformedEntry, line, std::string(l));
    }
    if (a >= n || b >= n) throw ParseError(ParseErrorKind::kUnknownVertex, line, std::string(l));
    if (a == b) throw ParseError(ParseErrorKind::kMalformedEntry, line, "self-loop");
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second) {
      throw ParseError(ParseErrorKind::kMalformedEntry, line, "repeated edge");
    }
    edges.emplace_back(a, b);
  }
  return make_graph(n, edges);
}

std::vector<std::vector<std::size_t>> parse_partition(std::string_view text) {
  std::vector<std::vector<std::size_t>> classes;
  for (const auto& [line, l] : content_lines(text)) {
    std::vector<std::size_t> cls;
    for (auto tok : tokens(l)) {
      std::size_t v = 0;
      if (!to_index(tok, v)) throw ParseError(ParseErrorKind::kMalformedEntry, line, std::string(tok));
      cls.push_back(v);
    }
    classes.push_back(std::move(cls));
  }
  return classes;
}

Instance gen_from_independent_set(const UndirectedGraph& g, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  const auto adj = g.adjacency();
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (adj[u].empty()) throw std::invalid_argument("vertex " + g.names[u] + " is isolated");
  }
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= k; ++i) names.push_back("v" + std::to_string(i));
  const auto star = static_cast<Vertex>(names.size());
  names.push_back("vstar");
  std::map<std::pair<std::size_t, std::size_t>, Vertex> w;
  for (auto [a, b] : g.edges) {
    w[{a, b}] = static_cast<Vertex>(names.size());
    names.push_back(edge_name(g, a, b));
  }

  // P_u = {w_e : u in e} u {vstar}; endpoints of an isolated edge share theirs.
  std::set<std::vector<Vertex>> sets;
  for (std::size_t u = 0; u < g.size(); ++u) {
    std::vector<Vertex> p{star};
    for (std::size_t x : adj[u]) p.push_back(w.at({std::min(u, x), std::max(u, x)}));
    std::sort(p.begin(), p.end());
    sets.insert(std::move(p));
  }
  std::vector<std::vector<ParentSetEntry>> entries(names.size());
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& p : sets) entries[i].push_back(ParentSetEntry{1, p});
  }
  return Instance(std::move(names), std::move(entries), static_cast<Score>(k));
}

Instance gen_from_multicolored_is(const UndirectedGraph& g, const std::vector<std::vector<std::size_t>>& classes) {
  const std::size_t k = classes.size();
  if (k < 2) throw std::invalid_argument("need at least two classes");
  std::vector<std::size_t> class_of(g.size(), k);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t v : classes[c]) {
      if (v >= g.size()) throw std::invalid_argument("partition names an unknown vertex");
      if (class_of[v] != k) throw std::invalid_argument("vertex in two classes");
      class_of[v] = c;
    }
  }
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (class_of[v] == k) throw std::invalid_argument("partition does not cover vertex " + g.names[v]);
  }
  std::set<std::pair<std::size_t, std::size_t>> edge_set(g.edges.begin(), g.edges.end());
  for (const auto& cls : classes) {
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (std::size_t j = i + 1; j < cls.size(); ++j) {
        if (!edge_set.count({std::min(cls[i], cls[j]), std::max(cls[i], cls[j])})) {
          throw std::invalid_argument("a class does not induce a clique");
        }
      }
    }
  }

  const std::size_t last = k - 1;
  const auto adj = g.adjacency();
  std::vector<std::string> names;
  std::vector<Vertex> index(g.size(), 0);
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (class_of[v] == last) continue;
    index[v] = static_cast<Vertex>(names.size());
    names.push_back(g.names[v]);
  }
  std::map<std::pair<std::size_t, std::size_t>, Vertex> w;
  for (auto [a, b] : g.edges) {
    if (class_of[a] == last || class_of[b] == last) continue;
    w[{a, b}] = static_cast<Vertex>(names.size());
    names.push_back(edge_name(g, a, b));
  }
  const auto star = static_cast<Vertex>(names.size());
  names.push_back("vstar");

  std::vector<std::vector<ParentSetEntry>> entries(names.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (class_of[v] == last) continue;
    std::vector<Vertex> p{star};
    for (std::size_t u : adj[v]) {
      if (class_of[u] != last) p.push_back(w.at({std::min(u, v), std::max(u, v)}));
    }
    entries[index[v]].push_back(ParentSetEntry{1, std::move(p)});
  }
  std::set<std::vector<Vertex>> star_sets;
  bool needs_empty = false;
  for (std::size_t v : classes[last]) {
    std::vector<Vertex> p;
    for (std::size_t u : adj[v]) {
      if (class_of[u] != last) p.push_back(index[u]);
    }
    if (p.empty()) {
      needs_empty = true;
      continue;
    }
    std::sort(p.begin(), p.end());
    star_sets.insert(std::move(p));
  }
  if (needs_empty) {
    // f(empty) = 1 cannot be stored; a private parent stands in for it.
    star_sets.insert({static_cast<Vertex>(names.size())});
    names.emplace_back(kMulticolorEmptyName);
    entries.emplace_back();
  }
  for (const auto& p : star_sets) entries[star].push_back(ParentSetEntry{1, p});
  return Instance(std::move(names), std::move(entries), static_cast<Score>(k));
}

Instance gen_random(std::size_t n, std::size_t delta, std::size_t p, Score max_score, std::uint64_t seed) {
  if (delta == 0) throw std::invalid_argument("delta must be at least 1");
  if (n > 0 && p >= n) throw std::invalid_argument("p must be below n");
  if (max_score < 1 || max_score > kMaxScore) throw std::invalid_argument("max_score out of range");
  std::mt19937_64 rng(seed);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  std::vector<std::vector<ParentSetEntry>> entries(n);
  if (p == 0) return Instance(std::move(names), std::move(entries));

  std::uniform_int_distribution<std::size_t> count_dist(0, delta - 1);
  std::uniform_int_distribution<std::size_t> size_dist(1, p);
  std::uniform_int_distribution<Score> score_dist(1, max_score);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<Vertex> others;
    for (std::size_t u = 0; u < n; ++u) {
      if (u != v) others.push_back(static_cast<Vertex>(u));
    }
    const std::size_t want = count_dist(rng);
    std::set<std::vector<Vertex>> seen;
    // Bounded retries: small n may not offer enough distinct sets.
    for (std::size_t tries = 0; seen.size() < want && tries < 64 * (want + 1); ++tries) {
      std::shuffle(others.begin(), others.end(), rng);
      std::vector<Vertex> ps(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(size_dist(rng)));
      std::sort(ps.begin(), ps.end());
      if (seen.insert(ps).second) entries[v].push_back(ParentSetEntry{score_dist(rng), std::move(ps)});
    }
  }
  return Instance(std::move(names), std::move(entries));
}

bool brute_is(const UndirectedGraph& g, std::size_t k) {
  const std::size_t n = g.size();
  if (n > 20) throw std::invalid_argument("brute_is supports at most 20 vertices");
  if (k > n) return false;
  std::vector<std::uint32_t> nbr(n, 0);
  for (auto [a, b] : g.edges) {
    nbr[a] |= std::uint32_t{1} << b;
    nbr[b] |= std::uint32_t{1} << a;
  }
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s) {
    if (static_cast<std::size_t>(std::popcount(s)) < k) continue;
    bool ok = true;
    for (std::uint32_t t = s; t && ok; t &= t - 1) ok = (nbr[std::countr_zero(t)] & s) == 0;
    if (ok) return true;
  }
  return false;
}

}  // namespace polytree
