#include "polytree/instance.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "polytree/errors.hpp"

namespace polytree {

const char* describe(ParseErrorKind kind) noexcept {
  switch (kind) {
    case ParseErrorKind::kMalformedHeader: return "malformed header";
    case ParseErrorKind::kMalformedEntry: return "malformed entry";
    case ParseErrorKind::kUnexpectedEnd: return "unexpected end of input";
    case ParseErrorKind::kTrailingContent: return "trailing content";
    case ParseErrorKind::kDuplicateVertex: return "duplicate vertex name";
    case ParseErrorKind::kUnknownVertex: return "unknown vertex name";
    case ParseErrorKind::kSelfParent: return "self-parent";
    case ParseErrorKind::kRepeatedParent: return "repeated parent within a set";
    case ParseErrorKind::kEmptyParentSet: return "empty parent set";
    case ParseErrorKind::kDuplicateParentSet: return "duplicate parent set";
    case ParseErrorKind::kZeroScore: return "zero score entry";
    case ParseErrorKind::kNegativeScore: return "negative score";
    case ParseErrorKind::kNonIntegerScore: return "non-integer score";
    case ParseErrorKind::kScoreOutOfRange: return "score out of range";
  }
  return "parse error";
}

namespace {

std::string format_parse_error(ParseErrorKind kind, std::size_t line, const std::string& detail) {
  std::string msg;
  if (line > 0) msg = "line " + std::to_string(line) + ": ";
  msg += describe(kind);
  if (!detail.empty()) msg += " (" + detail + ")";
  return msg;
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
    : std::runtime_error(format_parse_error(kind, line, detail)), kind_(kind), line_(line) {}

TruncationFailure::TruncationFailure(std::uint64_t seed, int attempts)
    : std::runtime_error("rank truncation failed its independence check " + std::to_string(attempts) +
                         " times starting from seed " + std::to_string(seed)),
      seed_(seed) {}

Instance::Instance(std::vector<std::string> names, std::vector<std::vector<ParentSetEntry>> entries,
                   Score threshold)
    : names_(std::move(names)), entries_(std::move(entries)), threshold_(threshold) {
  if (threshold_ < 0) throw std::invalid_argument("threshold must be non-negative");
  if (entries_.size() != names_.size()) {
    throw std::invalid_argument("entry table size does not match vertex count");
  }
  if (names_.size() > std::numeric_limits<Vertex>::max()) {
    throw std::invalid_argument("too many vertices");
  }
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw std::invalid_argument("empty vertex name");
    if (!index_.emplace(names_[i], static_cast<Vertex>(i)).second) {
      throw std::invalid_argument("duplicate vertex name '" + names_[i] + "'");
    }
  }
  for (std::size_t v = 0; v < entries_.size(); ++v) {
    std::set<std::vector<Vertex>> seen;
    for (auto& e : entries_[v]) {
      if (e.score < 1) throw std::invalid_argument("stored scores must be positive");
      if (e.score > kMaxScore) throw std::invalid_argument("score out of range");
      if (e.parents.empty()) throw std::invalid_argument("stored parent sets must be nonempty");
      std::sort(e.parents.begin(), e.parents.end());
      if (std::adjacent_find(e.parents.begin(), e.parents.end()) != e.parents.end()) {
        throw std::invalid_argument("repeated parent in a parent set of '" + names_[v] + "'");
      }
      for (Vertex u : e.parents) {
        if (u >= names_.size()) throw std::invalid_argument("parent index out of range");
        if (u == v) throw std::invalid_argument("vertex '" + names_[v] + "' lists itself as parent");
      }
      if (!seen.insert(e.parents).second) {
        throw std::invalid_argument("duplicate parent set for '" + names_[v] + "'");
      }
    }
  }
}

std::optional<Vertex> Instance::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Score Instance::local_score(Vertex v, std::span<const Vertex> sorted_parents) const {
  if (sorted_parents.empty()) return 0;
  for (const auto& e : entries_.at(v)) {
    if (std::equal(e.parents.begin(), e.parents.end(), sorted_parents.begin(), sorted_parents.end())) {
      return e.score;
    }
  }
  return 0;
}

Instance Instance::with_threshold(Score t) const {
  Instance copy = *this;
  if (t < 0) throw std::invalid_argument("threshold must be non-negative");
  copy.threshold_ = t;
  return copy;
}

std::size_t Instance::delta() const noexcept {
  std::size_t best = 0;
  for (const auto& list : entries_) best = std::max(best, list.size() + 1);
  return best;
}

std::size_t Instance::max_parent_size() const noexcept {
  std::size_t best = 0;
  for (const auto& list : entries_) {
    for (const auto& e : list) best = std::max(best, e.parents.size());
  }
  return best;
}

std::size_t Instance::entry_count() const noexcept {
  std::size_t total = 0;
  for (const auto& list : entries_) total += list.size();
  return total;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
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

bool parse_count(std::string_view tok, std::size_t& out) {
  if (tok.empty() || tok.front() == '-' || tok.front() == '+') return false;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

Score parse_score(std::string_view tok, std::size_t line) {
  if (tok.empty()) throw ParseError(ParseErrorKind::kMalformedEntry, line, "missing score");
  bool negative = tok.front() == '-';
  std::string_view digits = negative ? tok.substr(1) : tok;
  if (digits.empty()) throw ParseError(ParseErrorKind::kMalformedEntry, line, std::string(tok));
  for (char c : digits) {
    if (c == '.' || c == 'e' || c == 'E') {
      throw ParseError(ParseErrorKind::kNonIntegerScore, line, std::string(tok));
    }
    if (c < '0' || c > '9') throw ParseError(ParseErrorKind::kMalformedEntry, line, std::string(tok));
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(negative ? ParseErrorKind::kNegativeScore : ParseErrorKind::kScoreOutOfRange, line,
                     std::string(tok));
  }
  if (negative && value != 0) throw ParseError(ParseErrorKind::kNegativeScore, line, std::string(tok));
  if (value == 0) throw ParseError(ParseErrorKind::kZeroScore, line, std::string(tok));
  if (value > static_cast<std::uint64_t>(kMaxScore)) {
    throw ParseError(ParseErrorKind::kScoreOutOfRange, line, std::string(tok));
  }
  return static_cast<Score>(value);
}

struct RawEntry {
  std::size_t line;
  Score score;
  std::vector<std::string_view> parents;
};

}  // namespace

Instance parse_instance(std::string_view text, Score threshold) {
  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      lines.push_back(text.substr(start, end - start));
      start = end + 1;
    }
  }
  // Trailing blank lines carry no content.
  while (!lines.empty() && split_ws(lines.back()).empty()) lines.pop_back();

  std::size_t cursor = 0;
  auto next_line = [&](const char* what) -> std::vector<std::string_view> {
    if (cursor >= lines.size()) throw ParseError(ParseErrorKind::kUnexpectedEnd, cursor + 1, what);
    return split_ws(lines[cursor++]);
  };

  auto header = next_line("vertex count");
  std::size_t n = 0;
  if (header.size() != 1 || !parse_count(header[0], n)) {
    throw ParseError(ParseErrorKind::kMalformedHeader, 1, "expected the vertex count");
  }

  std::vector<std::string> names;
  std::vector<std::size_t> name_lines;
  std::vector<std::vector<RawEntry>> raw(n);
  names.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto toks = next_line("vertex header");
    std::size_t line_no = cursor;
    std::size_t count = 0;
    if (toks.size() != 2 || !parse_count(toks[1], count)) {
      throw ParseError(ParseErrorKind::kMalformedHeader, line_no, "expected 'NAME COUNT'");
    }
    names.emplace_back(toks[0]);
    name_lines.push_back(line_no);
    for (std::size_t e = 0; e < count; ++e) {
      auto etoks = next_line("score entry");
      std::size_t eline = cursor;
      if (etoks.size() < 2) throw ParseError(ParseErrorKind::kMalformedEntry, eline, "expected 'SCORE K P1 .. PK'");
      Score s = parse_score(etoks[0], eline);
      std::size_t k = 0;
      if (!parse_count(etoks[1], k)) throw ParseError(ParseErrorKind::kMalformedEntry, eline, "bad parent count");
      if (etoks.size() != k + 2) {
        throw ParseError(ParseErrorKind::kMalformedEntry, eline, "parent count does not match parent list");
      }
      if (k == 0) throw ParseError(ParseErrorKind::kEmptyParentSet, eline, "");
      raw[v].push_back(RawEntry{eline, s, {etoks.begin() + 2, etoks.end()}});
    }
  }
  if (cursor < lines.size()) throw ParseError(ParseErrorKind::kTrailingContent, cursor + 1, "");

  std::unordered_map<std::string_view, Vertex> index;
  for (std::size_t v = 0; v < n; ++v) {
    if (!index.emplace(names[v], static_cast<Vertex>(v)).second) {
      throw ParseError(ParseErrorKind::kDuplicateVertex, name_lines[v], names[v]);
    }
  }

  std::vector<std::vector<ParentSetEntry>> entries(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::set<std::vector<Vertex>> seen;
    for (const auto& re : raw[v]) {
      ParentSetEntry e;
      e.score = re.score;
      for (auto tok : re.parents) {
        auto it = index.find(tok);
        if (it == index.end()) throw ParseError(ParseErrorKind::kUnknownVertex, re.line, std::string(tok));
        if (it->second == v) throw ParseError(ParseErrorKind::kSelfParent, re.line, std::string(tok));
        e.parents.push_back(it->second);
      }
      std::sort(e.parents.begin(), e.parents.end());
      if (std::adjacent_find(e.parents.begin(), e.parents.end()) != e.parents.end()) {
        throw ParseError(ParseErrorKind::kRepeatedParent, re.line, "");
      }
      if (!seen.insert(e.parents).second) {
        throw ParseError(ParseErrorKind::kDuplicateParentSet, re.line, names[v]);
      }
      entries[v].push_back(std::move(e));
    }
  }
  return Instance(std::move(names), std::move(entries), threshold);
}

Instance read_instance(const std::filesystem::path& path, Score threshold) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), threshold);
}

std::string write_instance(const Instance& inst) {
  std::string out = std::to_string(inst.size()) + "\n";
  for (Vertex v = 0; v < inst.size(); ++v) {
    std::vector<const ParentSetEntry*> sorted;
    for (const auto& e : inst.entries(v)) sorted.push_back(&e);
    std::sort(sorted.begin(), sorted.end(), [](const ParentSetEntry* a, const ParentSetEntry* b) {
      if (a->parents.size() != b->parents.size()) return a->parents.size() < b->parents.size();
      return a->parents < b->parents;
    });
    out += inst.name(v) + " " + std::to_string(sorted.size()) + "\n";
    for (const auto* e : sorted) {
      out += std::to_string(e->score) + " " + std::to_string(e->parents.size());
      for (Vertex u : e->parents) out += " " + inst.name(u);
      out += "\n";
    }
  }
  return out;
}

std::vector<std::vector<Vertex>> potential_parents(const Instance& inst, Vertex v) {
  std::vector<std::vector<Vertex>> out;
  out.emplace_back();
  for (const auto& e : inst.entries(v)) out.push_back(e.parents);
  return out;
}

std::vector<Vertex> dependent_vertices(const Instance& inst) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < inst.size(); ++v) {
    if (!inst.entries(v).empty()) out.push_back(v);
  }
  return out;
}

std::optional<std::size_t> Superstructure::index_of(Arc a) const {
  auto it = arc_index.find(a);
  if (it == arc_index.end()) return std::nullopt;
  return it->second;
}

Superstructure build_superstructure(const Instance& inst) {
  std::set<Arc> arcs;
  for (Vertex v = 0; v < inst.size(); ++v) {
    for (const auto& e : inst.entries(v)) {
      for (Vertex u : e.parents) arcs.insert(Arc{u, v});
    }
  }
  Superstructure s;
  s.arcs.assign(arcs.begin(), arcs.end());
  for (std::size_t i = 0; i < s.arcs.size(); ++i) s.arc_index.emplace(s.arcs[i], i);
  return s;
}

std::string padding_name(std::string_view base, std::size_t i) {
  return std::string(base) + "__pad" + std::to_string(i);
}

Instance pad_to_uniform(const Instance& inst, std::size_t p) {
  if (p < inst.max_parent_size()) {
    throw std::invalid_argument("padding size " + std::to_string(p) + " is smaller than an existing parent set (" +
                                std::to_string(inst.max_parent_size()) + ")");
  }
  const auto dependents = dependent_vertices(inst);
  std::vector<std::string> names = inst.names();
  std::vector<std::vector<ParentSetEntry>> entries(inst.size());
  for (Vertex v = 0; v < inst.size(); ++v) {
    entries[v].assign(inst.entries(v).begin(), inst.entries(v).end());
  }
  for (Vertex v : dependents) {
    const Vertex first_pad = static_cast<Vertex>(names.size());
    for (std::size_t i = 1; i <= p; ++i) {
      std::string pad = padding_name(inst.name(v), i);
      if (inst.find(pad)) throw std::invalid_argument("padding vertex name '" + pad + "' is already taken");
      names.push_back(std::move(pad));
      entries.emplace_back();
    }
    for (auto& e : entries[v]) {
      for (std::size_t i = 0; e.parents.size() < p; ++i) e.parents.push_back(first_pad + static_cast<Vertex>(i));
    }
  }
  return Instance(std::move(names), std::move(entries), inst.threshold());
}

UniformPadding make_uniform_padding(const Instance& inst) {
  UniformPadding out;
  out.original_size = inst.size();
  out.p = inst.max_parent_size();
  out.dependents = dependent_vertices(inst);
  out.padded = pad_to_uniform(inst, out.p);

  std::set<Arc> ground;
  Vertex next_pad = static_cast<Vertex>(inst.size());
  for (Vertex v : out.dependents) {
    std::vector<PaddedOption> opts;
    const auto padded_entries = out.padded.entries(v);
    for (std::size_t j = 0; j < padded_entries.size(); ++j) {
      opts.push_back(PaddedOption{padded_entries[j].parents, padded_entries[j].score, j});
    }
    PaddedOption all_pad;
    for (std::size_t i = 0; i < out.p; ++i) all_pad.parents.push_back(next_pad + static_cast<Vertex>(i));
    opts.push_back(std::move(all_pad));
    next_pad += static_cast<Vertex>(out.p);
    for (const auto& o : opts) {
      for (Vertex u : o.parents) ground.insert(Arc{u, v});
    }
    out.options.push_back(std::move(opts));
  }
  out.ground_set.assign(ground.begin(), ground.end());
  return out;
}

}  // namespace polytree
