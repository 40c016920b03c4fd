#include "polytree/polytree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "polytree/errors.hpp"

namespace polytree {

ArcSet normalized(ArcSet arcs) {
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  return arcs;
}

DisjointSetForest::DisjointSetForest(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSetForest::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    std::size_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool DisjointSetForest::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  return true;
}

void DisjointSetForest::reset() {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  std::fill(rank_.begin(), rank_.end(), 0);
}

bool is_polytree(std::size_t n, std::span<const Arc> arcs) {
  for (const Arc& a : arcs) {
    if (a.parent >= n || a.child >= n) throw std::out_of_range("arc endpoint out of range");
  }
  DisjointSetForest dsu(n);
  for (const Arc& a : arcs) {
    if (!dsu.unite(a.parent, a.child)) return false;
  }
  return true;
}

std::vector<std::vector<Vertex>> parent_sets(std::size_t n, std::span<const Arc> arcs) {
  std::vector<std::vector<Vertex>> parents(n);
  for (const Arc& a : arcs) {
    if (a.parent >= n || a.child >= n) throw std::out_of_range("arc endpoint out of range");
    parents[a.child].push_back(a.parent);
  }
  for (auto& ps : parents) {
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  }
  return parents;
}

Score score(const Instance& inst, std::span<const Arc> arcs) {
  const auto parents = parent_sets(inst.size(), arcs);
  Score total = 0;
  for (Vertex v = 0; v < inst.size(); ++v) total += inst.local_score(v, parents[v]);
  return total;
}

VerifyReport verify_solution(const Instance& inst, std::span<const Arc> arcs) {
  const ArcSet set = normalized(ArcSet(arcs.begin(), arcs.end()));
  VerifyReport r;
  r.polytree = is_polytree(inst.size(), set);
  r.score = score(inst, set);
  r.meets_t = r.polytree && r.score >= inst.threshold();
  return r;
}

ArcSet parse_arcs(std::string_view text, const Instance& inst) {
  ArcSet arcs;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) toks.push_back(line.substr(i, j - i));
      i = j;
    }
    if (toks.empty()) continue;
    if (toks.size() != 2) throw ParseError(ParseErrorKind::kMalformedEntry, line_no, "expected 'PARENT CHILD'");
    auto u = inst.find(toks[0]);
    if (!u) throw ParseError(ParseErrorKind::kUnknownVertex, line_no, std::string(toks[0]));
    auto v = inst.find(toks[1]);
    if (!v) throw ParseError(ParseErrorKind::kUnknownVertex, line_no, std::string(toks[1]));
    if (*u == *v) throw ParseError(ParseErrorKind::kSelfParent, line_no, std::string(toks[0]));
    arcs.push_back(Arc{*u, *v});
  }
  return normalized(std::move(arcs));
}

std::string write_arcs(const Instance& inst, std::span<const Arc> arcs) {
  std::string out;
  for (const Arc& a : arcs) out += inst.name(a.parent) + " " + inst.name(a.child) + "\n";
  return out;
}

}  // namespace polytree
