#include "seshadri/linalg.hpp"

#include "seshadri/error.hpp"

#include <utility>

namespace seshadri {

ModMatrix::ModMatrix(std::size_t rows, std::size_t cols, const PrimeField& field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0u) {}

std::vector<std::uint32_t> ModMatrix::apply(std::span<const std::uint32_t> v) const {
  if (v.size() != cols_) throw InvalidArgument("vector length does not match matrix columns");
  std::vector<std::uint32_t> out(rows_, 0u);
  const std::uint64_t p = field_.modulus();
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    const std::uint32_t* a = data_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc = (acc + static_cast<std::uint64_t>(a[c]) * v[c]) % p;
    }
    out[r] = static_cast<std::uint32_t>(acc);
  }
  return out;
}

namespace {

// dst[i] <- dst[i] - f * src[i] mod p, using Shoup's precomputed quotient
// f_shoup = floor(f * 2^32 / p). Requires p < 2^31.
void submul_row(std::uint32_t* __restrict dst, const std::uint32_t* __restrict src, std::size_t len,
                std::uint32_t f, std::uint32_t p) {
  const std::uint32_t f_shoup = static_cast<std::uint32_t>((static_cast<std::uint64_t>(f) << 32) / p);
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint32_t b = src[i];
    const std::uint32_t q = static_cast<std::uint32_t>((static_cast<std::uint64_t>(b) * f_shoup) >> 32);
    std::uint32_t prod = b * f - q * p;  // in [0, 2p)
    std::uint32_t alt = prod - p;
    prod = alt < prod ? alt : prod;
    std::uint32_t x = dst[i] + (p - prod);  // in (0, 2p)
    alt = x - p;
    dst[i] = alt < x ? alt : x;
  }
}

void scale_row(std::uint32_t* row, std::size_t len, std::uint32_t f, const PrimeField& field) {
  for (std::size_t i = 0; i < len; ++i) row[i] = field.mul(row[i], f);
}

struct Echelon {
  std::vector<std::size_t> pivot_cols;
};

// Forward elimination; pivot rows are normalized to leading 1.
// When `reduce_above` is set, the result is in reduced row echelon form.
Echelon eliminate(ModMatrix& m, bool reduce_above) {
  const PrimeField& field = m.field();
  const std::uint32_t p = field.modulus();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Echelon out;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t found = rows;
    for (std::size_t r = pivot_row; r < rows; ++r) {
      if (m(r, c) != 0) {
        found = r;
        break;
      }
    }
    if (found == rows) continue;
    if (found != pivot_row) {
      auto a = m.row(found);
      auto b = m.row(pivot_row);
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(c), a.end(), b.begin() + static_cast<std::ptrdiff_t>(c));
    }
    std::uint32_t* prow = m.row(pivot_row).data();
    const std::uint32_t inv = field.inv(prow[c]);
    scale_row(prow + c, cols - c, inv, field);
    const std::size_t tail = cols - c - 1;
    for (std::size_t r = reduce_above ? 0 : pivot_row + 1; r < rows; ++r) {
      if (r == pivot_row) continue;
      std::uint32_t* row = m.row(r).data();
      const std::uint32_t f = row[c];
      if (f == 0) continue;
      submul_row(row + c + 1, prow + c + 1, tail, f, p);
      row[c] = 0;
    }
    out.pivot_cols.push_back(c);
    ++pivot_row;
  }
  return out;
}

}  // namespace

std::size_t rank(ModMatrix m) { return eliminate(m, false).pivot_cols.size(); }

RankKernel rank_and_kernel(ModMatrix m) {
  Echelon ech = eliminate(m, true);
  RankKernel out;
  out.rank = ech.pivot_cols.size();
  const PrimeField& field = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : ech.pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(m.cols(), 0u);
    v[free] = 1;
    for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) {
      v[ech.pivot_cols[i]] = field.neg(m(i, free));
    }
    out.kernel.push_back(std::move(v));
  }
  return out;
}

}  // namespace seshadri
