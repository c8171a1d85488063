#include "ccmul/matrix.hpp"

namespace ccmul {

namespace {

// Row-reduces `work` in place, returns the pivot column of each kept row.
size_t eliminate(const Field& F, std::vector<std::vector<coeffs_t>>& work) {
  size_t rank = 0;
  size_t cols = work.empty() ? 0 : work[0].size();
  for (size_t col = 0; col < cols && rank < work.size(); ++col) {
    size_t piv = rank;
    while (piv < work.size() && F->is_zero(work[piv][col])) ++piv;
    if (piv == work.size()) continue;
    std::swap(work[piv], work[rank]);
    coeffs_t inv = F->inv(work[rank][col]);
    for (size_t j = col; j < cols; ++j) work[rank][j] = F->mul(work[rank][j], inv);
    for (size_t i = 0; i < work.size(); ++i) {
      if (i == rank || F->is_zero(work[i][col])) continue;
      coeffs_t factor = work[i][col];
      for (size_t j = col; j < cols; ++j)
        work[i][j] = F->sub(work[i][j], F->mul(factor, work[rank][j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

size_t Matrix::rank() const {
  std::vector<std::vector<coeffs_t>> work(rows_, std::vector<coeffs_t>(cols_));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) work[i][j] = at(i, j);
  return eliminate(f_, work);
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  size_t n = rows_;
  std::vector<std::vector<coeffs_t>> work(n, std::vector<coeffs_t>(2 * n, f_->zero()));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) work[i][j] = at(i, j);
    work[i][n + i] = f_->one();
  }
  if (eliminate(f_, work) != n) return std::nullopt;
  Matrix out(f_, n, n);
  // eliminate() leaves a reduced echelon identity block on the left.
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out.set(i, j, work[i][n + j]);
  return out;
}

std::vector<size_t> Matrix::independent_rows(size_t target) const {
  std::vector<size_t> picked;
  std::vector<std::vector<coeffs_t>> basis;  // reduced rows kept so far
  for (size_t i = 0; i < rows_ && picked.size() < target; ++i) {
    std::vector<coeffs_t> row(cols_);
    for (size_t j = 0; j < cols_; ++j) row[j] = at(i, j);
    // Reduce against the current basis.
    for (const auto& b : basis) {
      size_t lead = 0;
      while (lead < cols_ && f_->is_zero(b[lead])) ++lead;
      if (lead == cols_ || f_->is_zero(row[lead])) continue;
      coeffs_t factor = row[lead];
      for (size_t j = lead; j < cols_; ++j) row[j] = f_->sub(row[j], f_->mul(factor, b[j]));
    }
    size_t lead = 0;
    while (lead < cols_ && f_->is_zero(row[lead])) ++lead;
    if (lead == cols_) continue;
    coeffs_t inv = f_->inv(row[lead]);
    for (size_t j = lead; j < cols_; ++j) row[j] = f_->mul(row[j], inv);
    // Keep the basis reduced so later leads are well-defined.
    std::vector<std::vector<coeffs_t>> nb;
    for (auto& b : basis) {
      if (!f_->is_zero(b[lead])) {
        coeffs_t factor = b[lead];
        for (size_t j = lead; j < cols_; ++j) b[j] = f_->sub(b[j], f_->mul(factor, row[j]));
      }
      nb.push_back(b);
    }
    nb.push_back(row);
    basis = std::move(nb);
    picked.push_back(i);
  }
  return picked;
}

Matrix Matrix::select_rows(const std::vector<size_t>& idx) const {
  Matrix out(f_, idx.size(), cols_);
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < cols_; ++j) out.set(i, j, at(idx[i], j));
  return out;
}

Matrix Matrix::mul(const Matrix& other) const {
  Matrix out(f_, rows_, other.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t l = 0; l < cols_; ++l) {
      const coeffs_t& a = at(i, l);
      if (f_->is_zero(a)) continue;
      for (size_t j = 0; j < other.cols_; ++j)
        out.set(i, j, f_->add(out.at(i, j), f_->mul(a, other.at(l, j))));
    }
  return out;
}

std::vector<coeffs_t> Matrix::mul_vec(const std::vector<coeffs_t>& v) const {
  std::vector<coeffs_t> out(rows_, f_->zero());
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (!f_->is_zero(at(i, j)) && !f_->is_zero(v[j]))
        out[i] = f_->add(out[i], f_->mul(at(i, j), v[j]));
  return out;
}

}  // namespace ccmul
