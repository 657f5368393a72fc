#pragma once

#include "seshadri/prime_field.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace seshadri {

/// Dense row-major matrix of residues modulo a prime.
class ModMatrix {
 public:
  ModMatrix(std::size_t rows, std::size_t cols, const PrimeField& field);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const PrimeField& field() const noexcept { return field_; }

  std::uint32_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<std::uint32_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const std::uint32_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  /// M * v, for v of length cols().
  std::vector<std::uint32_t> apply(std::span<const std::uint32_t> v) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  PrimeField field_;
  std::vector<std::uint32_t> data_;
};

struct RankKernel {
  std::size_t rank = 0;
  /// Basis of the right kernel, one vector per free column, in column order.
  std::vector<std::vector<std::uint32_t>> kernel;
};

/// Rank by forward elimination (the matrix is consumed).
std::size_t rank(ModMatrix m);

/// Rank and right-kernel basis by reduction to reduced row echelon form.
/// Pivots are the first nonzero entry in each column, so the result is
/// deterministic for a fixed input.
RankKernel rank_and_kernel(ModMatrix m);

}  // namespace seshadri
