#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace mvsp {

/// Dense matrix over the prime field F_p with row-echelon helpers.
class FpMatrix {
 public:
  FpMatrix(std::uint64_t p, std::size_t rows, std::size_t cols);

  std::uint64_t p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint64_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::size_t rank() const;
  /// Basis of {x : M x = 0}.
  std::vector<std::vector<std::uint64_t>> nullspace() const;
  /// Some x with M x = b, or nullopt.
  std::optional<std::vector<std::uint64_t>> solve(const std::vector<std::uint64_t>& b) const;

 private:
  /// Reduces in place to reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref();

  std::uint64_t p_;
  std::size_t rows_, cols_;
  std::vector<std::uint64_t> data_;
};

/// Incremental F_p row basis: insert vectors one by one and learn whether each
/// was independent of those inserted before.
class FpRowBasis {
 public:
  FpRowBasis(std::uint64_t p, std::size_t cols) : p_(p), cols_(cols) {}

  bool insert(std::vector<std::uint64_t> row);
  std::size_t rank() const { return rows_.size(); }

 private:
  std::uint64_t p_;
  std::size_t cols_;
  std::vector<std::vector<std::uint64_t>> rows_;  // each normalized, pivot = first nonzero
  std::vector<std::size_t> pivots_;
};

std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p);

}  // namespace mvsp
