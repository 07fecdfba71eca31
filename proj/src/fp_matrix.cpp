#include "mvsp/fp_matrix.hpp"

#include <algorithm>

namespace mvsp {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

}  // namespace

std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
  // Fermat; p is prime.
  std::uint64_t r = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = mulmod(r, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return r;
}

FpMatrix::FpMatrix(std::uint64_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

std::vector<std::size_t> FpMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t sel = r;
    while (sel < rows_ && at(sel, c) == 0) ++sel;
    if (sel == rows_) continue;
    if (sel != r)
      std::swap_ranges(data_.begin() + sel * cols_, data_.begin() + (sel + 1) * cols_, data_.begin() + r * cols_);
    const std::uint64_t iv = fp_inv(at(r, c), p_);
    for (std::size_t j = c; j < cols_; ++j) at(r, j) = mulmod(at(r, j), iv, p_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const std::uint64_t f = at(i, c);
      if (f == 0) continue;
      const std::uint64_t nf = p_ - f;
      for (std::size_t j = c; j < cols_; ++j) {
        const std::uint64_t x = at(r, j);
        if (x) at(i, j) = (at(i, j) + mulmod(nf, x, p_)) % p_;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t FpMatrix::rank() const {
  FpMatrix m = *this;
  return m.rref().size();
}

std::vector<std::vector<std::uint64_t>> FpMatrix::nullspace() const {
  FpMatrix m = *this;
  const auto pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint64_t> x(cols_, 0);
    x[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      const std::uint64_t v = m.at(i, f);
      x[pivots[i]] = v == 0 ? 0 : p_ - v;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<std::vector<std::uint64_t>> FpMatrix::solve(const std::vector<std::uint64_t>& b) const {
  FpMatrix aug(p_, rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[i] % p_;
  }
  const auto pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
  std::vector<std::uint64_t> x(cols_, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, cols_);
  return x;
}

bool FpRowBasis::insert(std::vector<std::uint64_t> row) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::uint64_t f = row[pivots_[i]];
    if (f == 0) continue;
    const std::uint64_t nf = p_ - f;
    const auto& b = rows_[i];
    for (std::size_t j = pivots_[i]; j < cols_; ++j)
      if (b[j]) row[j] = (row[j] + mulmod(nf, b[j], p_)) % p_;
  }
  std::size_t piv = 0;
  while (piv < cols_ && row[piv] == 0) ++piv;
  if (piv == cols_) return false;
  const std::uint64_t iv = fp_inv(row[piv], p_);
  for (std::size_t j = piv; j < cols_; ++j) row[j] = mulmod(row[j], iv, p_);
  // Keep earlier rows reduced against the new pivot so that reduction above
  // stays a single pass.
  for (auto& b : rows_) {
    const std::uint64_t f = b[piv];
    if (f == 0) continue;
    const std::uint64_t nf = p_ - f;
    for (std::size_t j = piv; j < cols_; ++j)
      if (row[j]) b[j] = (b[j] + mulmod(nf, row[j], p_)) % p_;
  }
  rows_.push_back(std::move(row));
  pivots_.push_back(piv);
  return true;
}

}  // namespace mvsp
