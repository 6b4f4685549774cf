#pragma once

#include <optional>
#include <vector>

#include "qdp4/field.hpp"

namespace qdp4 {

// Dense matrix of Scalars over a single field, row-major.
class Mat {
 public:
  Mat(FieldPtr f, std::size_t rows, std::size_t cols);
  static Mat identity(FieldPtr f, std::size_t n);
  static Mat from_ints(FieldPtr f, const std::vector<std::vector<long long>>& rows);
  static Mat diagonal(FieldPtr f, const std::vector<Scalar>& d);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Mat transpose() const;
  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Scalar& s) const;
  std::vector<Scalar> operator*(const std::vector<Scalar>& v) const;
  bool operator==(const Mat& o) const;

  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  bool is_diagonal() const;
  bool is_zero() const;

 private:
  FieldPtr field_;
  std::size_t rows_, cols_;
  std::vector<Scalar> a_;
};

Scalar det(const Mat& m);
std::size_t rank(const Mat& m);
// Basis of {v : m v = 0}, in reduced echelon form.
std::vector<std::vector<Scalar>> kernel(const Mat& m);
// Throws DegenerateForm when singular.
Mat inverse(const Mat& m);
// Some x with m x = b, if one exists.
std::optional<std::vector<Scalar>> solve(const Mat& m, const std::vector<Scalar>& b);

// Symmetric Gaussian elimination: transform^T * q * transform = diag(diagonal).
// Requires characteristic != 2.
struct CongruenceDiagonal {
  Mat transform;
  std::vector<Scalar> diagonal;
};
CongruenceDiagonal diagonalize_congruence(const Mat& q);

Mat map_entries(const Mat& m, const Embedding& e);

}  // namespace qdp4
