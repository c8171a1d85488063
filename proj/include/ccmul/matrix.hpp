#pragma once

#include <optional>
#include <vector>

#include "ccmul/fq.hpp"

namespace ccmul {

// Dense matrix over F_q with exact Gaussian elimination. Sizes here are tiny
// (a few dozen rows), so everything is plain schoolbook.
class Matrix {
 public:
  Matrix(Field f, size_t rows, size_t cols)
      : f_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, f_->zero()) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const Field& field() const { return f_; }

  const coeffs_t& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }
  void set(size_t i, size_t j, coeffs_t v) { a_[i * cols_ + j] = std::move(v); }

  size_t rank() const;
  // Inverse of a square matrix; nullopt when singular.
  std::optional<Matrix> inverse() const;
  // Greedy top-down scan keeping each row that enlarges the row space;
  // returns the first `target` independent row indices (deterministic).
  std::vector<size_t> independent_rows(size_t target) const;
  Matrix select_rows(const std::vector<size_t>& idx) const;

  Matrix mul(const Matrix& other) const;
  std::vector<coeffs_t> mul_vec(const std::vector<coeffs_t>& v) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return same_field(a.f_, b.f_) && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  Field f_;
  size_t rows_, cols_;
  std::vector<coeffs_t> a_;  // row-major
};

}  // namespace ccmul
