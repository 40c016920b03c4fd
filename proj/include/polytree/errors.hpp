#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace polytree {

enum class ParseErrorKind {
  kMalformedHeader,
  kMalformedEntry,
  kUnexpectedEnd,
  kTrailingContent,
  kDuplicateVertex,
  kUnknownVertex,
  kSelfParent,
  kRepeatedParent,
  kEmptyParentSet,
  kDuplicateParentSet,
  kZeroScore,
  kNegativeScore,
  kNonIntegerScore,
  kScoreOutOfRange,
};

const char* describe(ParseErrorKind kind) noexcept;

/// Raised for any malformed score, arc, graph or partition file.
/// `line()` is 1-based; 0 means the error is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail);

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

/// A solver refused to start because its configured work or memory budget
/// would be exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Randomized rank truncation kept failing its independence self-check.
class TruncationFailure : public std::runtime_error {
 public:
  TruncationFailure(std::uint64_t seed, int attempts);

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace polytree
