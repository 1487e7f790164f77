#include "arq/matrix.hpp"

#include <cassert>

namespace arq {

uint32_t add_mod(uint32_t a, uint32_t b, uint32_t p) {
  uint64_t s = static_cast<uint64_t>(a) + b;
  return static_cast<uint32_t>(s >= p ? s - p : s);
}

uint32_t sub_mod(uint32_t a, uint32_t b, uint32_t p) {
  return a >= b ? a - b : a + p - b;
}

uint32_t mul_mod(uint32_t a, uint32_t b, uint32_t p) {
  return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
}

uint32_t neg_mod(uint32_t a, uint32_t p) {
  return a == 0 ? 0 : p - a;
}

uint32_t inv_mod(uint32_t a, uint32_t p) {
  if (a == 0) throw PreconditionError("inv_mod: zero is not invertible");
  // Fermat: a^(p-2) mod p.
  uint64_t base = a, result = 1, e = p - 2;
  while (e) {
    if (e & 1) result = (result * base) % p;
    base = (base * base) % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(result);
}

uint32_t reduce_mod(int64_t a, uint32_t p) {
  int64_t r = a % static_cast<int64_t>(p);
  if (r < 0) r += p;
  return static_cast<uint32_t>(r);
}

Matrix::Matrix(size_t rows, size_t cols, uint32_t p)
    : rows_(rows), cols_(cols), p_(p), e_(rows * cols, 0) {
  if (!is_prime(p)) throw PreconditionError("Matrix: modulus must be prime");
}

Matrix Matrix::identity(size_t n, uint32_t p) {
  Matrix m(n, n, p);
  for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::zero(size_t rows, size_t cols, uint32_t p) {
  return Matrix(rows, cols, p);
}

Matrix Matrix::from_rows(const std::vector<std::vector<int64_t>>& rows, uint32_t p) {
  size_t r = rows.size();
  size_t c = r == 0 ? 0 : rows[0].size();
  Matrix m(r, c, p);
  for (size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw PreconditionError("from_rows: ragged rows");
    for (size_t j = 0; j < c; ++j) m.set_signed(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::column(const std::vector<uint32_t>& v, uint32_t p) {
  Matrix m(v.size(), 1, p);
  for (size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
  return m;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && e_ == o.e_;
}

bool Matrix::is_zero() const {
  for (uint32_t v : e_)
    if (v != 0) return false;
  return true;
}

Matrix Matrix::operator+(const Matrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_);
  Matrix m(rows_, cols_, p_);
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = add_mod(e_[i], o.e_[i], p_);
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_);
  Matrix m(rows_, cols_, p_);
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = sub_mod(e_[i], o.e_[i], p_);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_ || p_ != o.p_)
    throw PreconditionError("Matrix::operator*: dimension or modulus mismatch");
  Matrix m(rows_, o.cols_, p_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t k = 0; k < cols_; ++k) {
      uint32_t aik = at(i, k);
      if (aik == 0) continue;
      for (size_t j = 0; j < o.cols_; ++j) {
        uint32_t v = add_mod(m.at(i, j), mul_mod(aik, o.at(k, j), p_), p_);
        m.set(i, j, v);
      }
    }
  }
  return m;
}

Matrix Matrix::scaled(uint32_t c) const {
  Matrix m(rows_, cols_, p_);
  c %= p_;
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = mul_mod(e_[i], c, p_);
  return m;
}

Matrix Matrix::negated() const {
  Matrix m(rows_, cols_, p_);
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = neg_mod(e_[i], p_);
  return m;
}

Matrix Matrix::transposed() const {
  Matrix m(cols_, rows_, p_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) m.set(j, i, at(i, j));
  return m;
}

Matrix Matrix::pow(size_t n) const {
  if (rows_ != cols_) throw PreconditionError("Matrix::pow: square matrices only");
  Matrix result = identity(rows_, p_);
  Matrix base = *this;
  while (n) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

Matrix Matrix::hstack(const Matrix& o) const {
  assert(rows_ == o.rows_ && p_ == o.p_);
  Matrix m(rows_, cols_ + o.cols_, p_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) m.set(i, j, at(i, j));
    for (size_t j = 0; j < o.cols_; ++j) m.set(i, cols_ + j, o.at(i, j));
  }
  return m;
}

Matrix Matrix::vstack(const Matrix& o) const {
  assert(cols_ == o.cols_ && p_ == o.p_);
  Matrix m(rows_ + o.rows_, cols_, p_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) m.set(i, j, at(i, j));
  for (size_t i = 0; i < o.rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) m.set(rows_ + i, j, o.at(i, j));
  return m;
}

Matrix Matrix::block(size_t i0, size_t j0, size_t nrows, size_t ncols) const {
  assert(i0 + nrows <= rows_ && j0 + ncols <= cols_);
  Matrix m(nrows, ncols, p_);
  for (size_t i = 0; i < nrows; ++i)
    for (size_t j = 0; j < ncols; ++j) m.set(i, j, at(i0 + i, j0 + j));
  return m;
}

Matrix Matrix::col(size_t j) const { return block(0, j, rows_, 1); }

std::vector<uint32_t> Matrix::col_vec(size_t j) const {
  std::vector<uint32_t> v(rows_);
  for (size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void Matrix::set_block(size_t i0, size_t j0, const Matrix& m) {
  assert(i0 + m.rows() <= rows_ && j0 + m.cols() <= cols_);
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) set(i0 + i, j0 + j, m.at(i, j));
}

Matrix Matrix::vectorized() const {
  Matrix m(rows_ * cols_, 1, p_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) m.set(i * cols_ + j, 0, at(i, j));
  return m;
}

Echelon rref(const Matrix& m) {
  Matrix a = m;
  uint32_t p = a.modulus();
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    // First nonzero entry at or below `row`.
    size_t piv = row;
    while (piv < a.rows() && a.at(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row) {
      for (size_t j = 0; j < a.cols(); ++j) {
        uint32_t t = a.at(row, j);
        a.set(row, j, a.at(piv, j));
        a.set(piv, j, t);
      }
    }
    uint32_t inv = inv_mod(a.at(row, col), p);
    for (size_t j = 0; j < a.cols(); ++j) a.set(row, j, mul_mod(a.at(row, j), inv, p));
    for (size_t i = 0; i < a.rows(); ++i) {
      if (i == row) continue;
      uint32_t f = a.at(i, col);
      if (f == 0) continue;
      for (size_t j = 0; j < a.cols(); ++j)
        a.set(i, j, sub_mod(a.at(i, j), mul_mod(f, a.at(row, j), p), p));
    }
    pivots.push_back(col);
    ++row;
  }
  return {a, pivots};
}

size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows())
    throw PreconditionError("solve: row count mismatch");
  if (a.modulus() != b.modulus())
    throw PreconditionError("solve: modulus mismatch");
  Echelon e = rref(a.hstack(b));
  size_t n = a.cols();
  // Any pivot in the b-part marks inconsistency.
  for (size_t piv : e.pivots)
    if (piv >= n) return std::nullopt;
  Matrix x(n, b.cols(), a.modulus());
  for (size_t r = 0; r < e.pivots.size(); ++r)
    for (size_t j = 0; j < b.cols(); ++j) x.set(e.pivots[r], j, e.mat.at(r, n + j));
  return x;
}

Matrix nullspace(const Matrix& m) {
  Echelon e = rref(m);
  uint32_t p = m.modulus();
  std::vector<size_t> free_cols;
  {
    size_t pi = 0;
    for (size_t c = 0; c < m.cols(); ++c) {
      if (pi < e.pivots.size() && e.pivots[pi] == c) {
        ++pi;
      } else {
        free_cols.push_back(c);
      }
    }
  }
  Matrix basis(m.cols(), free_cols.size(), p);
  for (size_t k = 0; k < free_cols.size(); ++k) {
    size_t fc = free_cols[k];
    basis.set(fc, k, 1);
    for (size_t r = 0; r < e.pivots.size(); ++r)
      basis.set(e.pivots[r], k, neg_mod(e.mat.at(r, fc), p));
  }
  return basis;
}

Matrix image(const Matrix& m) {
  Echelon e = rref(m);
  Matrix basis(m.rows(), e.pivots.size(), m.modulus());
  for (size_t k = 0; k < e.pivots.size(); ++k)
    for (size_t i = 0; i < m.rows(); ++i) basis.set(i, k, m.at(i, e.pivots[k]));
  return basis;
}

bool in_column_space(const Matrix& basis, const Matrix& v) {
  return solve(basis, v).has_value();
}

bool subspace_leq(const Matrix& sub_cols, const Matrix& ambient_cols) {
  if (sub_cols.cols() == 0) return true;
  return rank(ambient_cols) == rank(ambient_cols.hstack(sub_cols));
}

bool subspace_eq(const Matrix& a_cols, const Matrix& b_cols) {
  return subspace_leq(a_cols, b_cols) && subspace_leq(b_cols, a_cols);
}

Matrix subspace_intersection(const Matrix& a_cols, const Matrix& b_cols) {
  // x with a*u = b*v ranges over nullspace of [a | -b]; a*u parts span the
  // intersection.
  if (a_cols.cols() == 0 || b_cols.cols() == 0)
    return Matrix(a_cols.rows(), 0, a_cols.modulus());
  Matrix combined = a_cols.hstack(b_cols.negated());
  Matrix ns = nullspace(combined);
  Matrix u = ns.block(0, 0, a_cols.cols(), ns.cols());
  return image(a_cols * u);
}

QuotientSpace::QuotientSpace(const Matrix& ambient_cols, const Matrix& sub_cols) {
  if (ambient_cols.modulus() != sub_cols.modulus() ||
      ambient_cols.rows() != sub_cols.rows())
    throw PreconditionError("QuotientSpace: shape/modulus mismatch");
  if (!subspace_leq(sub_cols, ambient_cols))
    throw PreconditionError("QuotientSpace: sub is not contained in ambient span");
  sub_ = image(sub_cols);
  Matrix acc = sub_;
  Matrix reps(ambient_cols.rows(), 0, ambient_cols.modulus());
  size_t r = rank(acc);
  for (size_t j = 0; j < ambient_cols.cols(); ++j) {
    Matrix v = ambient_cols.col(j);
    Matrix trial = acc.hstack(v);
    if (rank(trial) > r) {
      acc = trial;
      reps = reps.hstack(v);
      ++r;
    }
  }
  reps_ = reps;
  combined_ = sub_.hstack(reps_);
}

Matrix QuotientSpace::reduce(const Matrix& v) const {
  auto sol = solve(combined_, v);
  if (!sol) throw PreconditionError("QuotientSpace::reduce: vector outside ambient span");
  return sol->block(sub_.cols(), 0, reps_.cols(), v.cols());
}

Matrix QuotientSpace::canonical(const Matrix& v) const {
  if (reps_.cols() == 0) return Matrix::zero(v.rows(), v.cols(), v.modulus());
  return reps_ * reduce(v);
}

}  // namespace arq
