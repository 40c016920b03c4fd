#include "polytree/gf2.hpp"

#include <bit>
#include <stdexcept>
#include <utility>

#if defined(__PCLMUL__)
#include <wmmintrin.h>
#endif

namespace polytree {

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((rows + 63) / 64), data_(words_ * cols, 0) {}

bool Gf2Matrix::get(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("Gf2Matrix index out of range");
  return (data_[c * words_ + r / 64] >> (r % 64)) & 1U;
}

void Gf2Matrix::set(std::size_t r, std::size_t c, bool value) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("Gf2Matrix index out of range");
  auto& w = data_[c * words_ + r / 64];
  const std::uint64_t bit = std::uint64_t{1} << (r % 64);
  w = value ? (w | bit) : (w & ~bit);
}

std::span<const std::uint64_t> Gf2Matrix::column(std::size_t c) const {
  if (c >= cols_) throw std::out_of_range("Gf2Matrix column out of range");
  return {data_.data() + c * words_, words_};
}

std::size_t Gf2Matrix::rank() const {
  std::vector<std::size_t> all(cols_);
  for (std::size_t c = 0; c < cols_; ++c) all[c] = c;
  return gf2_rank(*this, all);
}

std::size_t gf2_rank(const Gf2Matrix& m, std::span<const std::size_t> columns) {
  const std::size_t words = (m.rows() + 63) / 64;
  // basis[row] holds a reduced vector whose lowest set bit is `row`.
  std::vector<std::vector<std::uint64_t>> basis(m.rows());
  std::vector<std::uint64_t> v(words);
  std::size_t rank = 0;
  for (std::size_t c : columns) {
    auto col = m.column(c);
    std::copy(col.begin(), col.end(), v.begin());
    while (true) {
      std::size_t w = 0;
      while (w < words && v[w] == 0) ++w;
      if (w == words) break;
      const std::size_t pivot = w * 64 + static_cast<std::size_t>(std::countr_zero(v[w]));
      if (basis[pivot].empty()) {
        basis[pivot] = v;
        ++rank;
        break;
      }
      for (std::size_t k = 0; k < words; ++k) v[k] ^= basis[pivot][k];
    }
  }
  return rank;
}

namespace gf64 {

namespace {

std::uint64_t reduce(std::uint64_t hi, std::uint64_t lo) noexcept {
  // x^64 == x^4 + x^3 + x + 1; fold the high word twice.
  std::uint64_t r = lo ^ hi ^ (hi << 1) ^ (hi << 3) ^ (hi << 4);
  const std::uint64_t carry = (hi >> 63) ^ (hi >> 61) ^ (hi >> 60);
  r ^= carry ^ (carry << 1) ^ (carry << 3) ^ (carry << 4);
  return r;
}

}  // namespace

std::uint64_t mul(std::uint64_t a, std::uint64_t b) noexcept {
#if defined(__PCLMUL__)
  const __m128i x = _mm_set_epi64x(0, static_cast<long long>(a));
  const __m128i y = _mm_set_epi64x(0, static_cast<long long>(b));
  const __m128i p = _mm_clmulepi64_si128(x, y, 0x00);
  const auto lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(p));
  const auto hi = static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(p, p)));
  return reduce(hi, lo);
#else
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  for (int i = 0; i < 64; ++i) {
    if ((b >> i) & 1U) {
      lo ^= a << i;
      if (i > 0) hi ^= a >> (64 - i);
    }
  }
  return reduce(hi, lo);
#endif
}

std::uint64_t pow(std::uint64_t a, std::uint64_t e) noexcept {
  std::uint64_t result = 1;
  while (e != 0) {
    if (e & 1U) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::uint64_t inv(std::uint64_t a) noexcept { return pow(a, ~std::uint64_t{0} - 1); }

std::uint64_t det(std::span<std::uint64_t> a, std::size_t k) {
  if (a.size() < k * k) throw std::invalid_argument("determinant buffer too small");
  // Division-free elimination: row_r <- p * row_r + f * row_col multiplies the
  // determinant by p, which is undone with one inversion at the end.
  std::uint64_t d = 1;
  std::uint64_t scale = 1;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (piv < k && a[piv * k + col] == 0) ++piv;
    if (piv == k) return 0;
    if (piv != col) {
      for (std::size_t j = col; j < k; ++j) std::swap(a[piv * k + j], a[col * k + j]);
    }
    const std::uint64_t p = a[col * k + col];
    d = mul(d, p);
    for (std::size_t r = col + 1; r < k; ++r) {
      const std::uint64_t f = a[r * k + col];
      if (f == 0) continue;
      for (std::size_t j = col; j < k; ++j) a[r * k + j] = mul(p, a[r * k + j]) ^ mul(f, a[col * k + j]);
      scale = mul(scale, p);
    }
  }
  return scale == 1 ? d : mul(d, inv(scale));
}

std::size_t rank(std::span<std::uint64_t> a, std::size_t rows, std::size_t cols) {
  if (a.size() < rows * cols) throw std::invalid_argument("rank buffer too small");
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    }
    const std::uint64_t p = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const std::uint64_t f = a[i * cols + c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) a[i * cols + j] = mul(p, a[i * cols + j]) ^ mul(f, a[r * cols + j]);
    }
    ++r;
  }
  return r;
}

}  // namespace gf64

}  // namespace polytree
