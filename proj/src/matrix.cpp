#include "qdp4/matrix.hpp"

#include <utility>

namespace qdp4 {

Mat::Mat(FieldPtr f, std::size_t rows, std::size_t cols)
    : field_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(field_)) {}

Mat Mat::identity(FieldPtr f, std::size_t n) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
  return m;
}

Mat Mat::from_ints(FieldPtr f, const std::vector<std::vector<long long>>& rows) {
  const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  Mat m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorCode::InvalidInput, "ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar::from_int(f, rows[i][j]);
  }
  return m;
}

Mat Mat::diagonal(FieldPtr f, const std::vector<Scalar>& d) {
  Mat m(f, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::transpose() const {
  Mat t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::operator*(const Mat& o) const {
  require_same_field(field_, o.field_);
  if (cols_ != o.rows_) throw Error(ErrorCode::InvalidInput, "matrix shape mismatch");
  Mat r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  require_same_field(field_, o.field_);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::InvalidInput, "matrix shape mismatch");
  Mat r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  require_same_field(field_, o.field_);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::InvalidInput, "matrix shape mismatch");
  Mat r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

Mat Mat::operator*(const Scalar& s) const {
  Mat r = *this;
  for (auto& x : r.a_) x *= s;
  return r;
}

std::vector<Scalar> Mat::operator*(const std::vector<Scalar>& v) const {
  if (v.size() != cols_) throw Error(ErrorCode::InvalidInput, "matrix-vector shape mismatch");
  std::vector<Scalar> r(rows_, Scalar::zero(field_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

bool Mat::operator==(const Mat& o) const {
  return same_field(field_, o.field_) && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool Mat::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool Mat::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

bool Mat::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    const Scalar inv = m(row, col).inv();
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const Scalar c = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= c * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Scalar det(const Mat& m) {
  if (!m.is_square()) throw Error(ErrorCode::InvalidInput, "determinant of a non-square matrix");
  Mat a = m;
  const std::size_t n = a.rows();
  Scalar d = Scalar::one(a.field());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col).is_zero()) ++piv;
    if (piv == n) return Scalar::zero(a.field());
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      d = -d;
    }
    d *= a(col, col);
    const Scalar inv = a(col, col).inv();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col).is_zero()) continue;
      const Scalar c = a(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) a(i, j) -= c * a(col, j);
    }
  }
  return d;
}

std::size_t rank(const Mat& m) {
  Mat a = m;
  return rref(a).size();
}

std::vector<std::vector<Scalar>> kernel(const Mat& m) {
  Mat a = m;
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(a.cols(), Scalar::zero(a.field()));
    v[free] = Scalar::one(a.field());
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Mat inverse(const Mat& m) {
  if (!m.is_square()) throw Error(ErrorCode::DegenerateForm, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Mat aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar::one(m.field());
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    throw Error(ErrorCode::DegenerateForm, "matrix is singular");
  Mat inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::optional<std::vector<Scalar>> solve(const Mat& m, const std::vector<Scalar>& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::InvalidInput, "right-hand side shape mismatch");
  Mat aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto pivots = rref(aug);
  std::vector<Scalar> x(m.cols(), Scalar::zero(m.field()));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == m.cols()) return std::nullopt;
    x[pivots[r]] = aug(r, m.cols());
  }
  return x;
}

CongruenceDiagonal diagonalize_congruence(const Mat& q) {
  if (!q.is_symmetric()) throw Error(ErrorCode::InvalidInput, "congruence diagonalization needs a symmetric matrix");
  if (q.field()->characteristic() == 2)
    throw Error(ErrorCode::UnsupportedField, "characteristic 2");
  const std::size_t n = q.rows();
  Mat s = q;
  Mat t = Mat::identity(q.field(), n);
  auto swap_index = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < n; ++j) std::swap(s(a, j), s(b, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(s(i, a), s(i, b));
    for (std::size_t i = 0; i < n; ++i) std::swap(t(i, a), t(i, b));
  };
  // index a += index b (row, column and transform column)
  auto add_index = [&](std::size_t a, std::size_t b, const Scalar& c) {
    for (std::size_t j = 0; j < n; ++j) s(a, j) += c * s(b, j);
    for (std::size_t i = 0; i < n; ++i) s(i, a) += c * s(i, b);
    for (std::size_t i = 0; i < n; ++i) t(i, a) += c * t(i, b);
  };
  const Scalar one = Scalar::one(q.field());
  for (std::size_t k = 0; k < n; ++k) {
    if (s(k, k).is_zero()) {
      std::size_t j = k + 1;
      while (j < n && s(j, j).is_zero()) ++j;
      if (j < n) {
        swap_index(k, j);
      } else {
        j = k + 1;
        while (j < n && s(k, j).is_zero()) ++j;
        if (j == n) continue;
        add_index(k, j, one);  // s(k,k) becomes 2 s(k,j)
      }
    }
    const Scalar inv = s(k, k).inv();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (s(i, k).is_zero()) continue;
      add_index(i, k, -(s(i, k) * inv));
    }
  }
  std::vector<Scalar> d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(s(i, i));
  return {std::move(t), std::move(d)};
}

Mat map_entries(const Mat& m, const Embedding& e) {
  Mat r(e.target(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = e(m(i, j));
  return r;
}

}  // namespace qdp4
