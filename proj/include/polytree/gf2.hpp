#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace polytree {

/// Dense bit-packed matrix over the two-element field, stored column-major
/// (each column is a run of 64-bit words).
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool value);
  std::span<const std::uint64_t> column(std::size_t c) const;

  std::size_t rank() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

/// Rank of the selected columns. Throws std::out_of_range on a bad index.
std::size_t gf2_rank(const Gf2Matrix& m, std::span<const std::size_t> columns);

/// Arithmetic in GF(2^64) = GF(2)[x] / (x^64 + x^4 + x^3 + x + 1).
/// Addition is XOR.
namespace gf64 {

std::uint64_t mul(std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t pow(std::uint64_t a, std::uint64_t e) noexcept;
/// Multiplicative inverse; inv(0) == 0.
std::uint64_t inv(std::uint64_t a) noexcept;

/// Determinant of a k x k row-major matrix (destroyed in the process).
std::uint64_t det(std::span<std::uint64_t> a, std::size_t k);

/// Rank of an r x c row-major matrix (destroyed in the process).
std::size_t rank(std::span<std::uint64_t> a, std::size_t r, std::size_t c);

}  // namespace gf64

}  // namespace polytree
