// Dense exact linear algebra over the prime field F_p.
//
// Every matrix carries its modulus; entries are kept reduced to [0, p).
// All eliminations use deterministic reduced-row-echelon pivoting (first
// nonzero entry in row-major scan order), so bases and coset
// representatives are reproducible across runs.

#pragma once

#include <cstdint>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace arq {

// Thrown when inputs violate a documented precondition.
class PreconditionError : public std::runtime_error {
public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an exhaustive enumeration would exceed the configured cap.
class CapExceeded : public std::runtime_error {
public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Scalar arithmetic mod p.
uint32_t add_mod(uint32_t a, uint32_t b, uint32_t p);
uint32_t sub_mod(uint32_t a, uint32_t b, uint32_t p);
uint32_t mul_mod(uint32_t a, uint32_t b, uint32_t p);
uint32_t neg_mod(uint32_t a, uint32_t p);
uint32_t inv_mod(uint32_t a, uint32_t p);  // a != 0
uint32_t reduce_mod(int64_t a, uint32_t p);

class Matrix {
public:
  Matrix() : rows_(0), cols_(0), p_(2) {}
  Matrix(size_t rows, size_t cols, uint32_t p);

  static Matrix identity(size_t n, uint32_t p);
  static Matrix zero(size_t rows, size_t cols, uint32_t p);
  static Matrix from_rows(const std::vector<std::vector<int64_t>>& rows, uint32_t p);
  // Single-column matrix from a flat vector.
  static Matrix column(const std::vector<uint32_t>& v, uint32_t p);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  uint32_t modulus() const { return p_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  uint32_t at(size_t i, size_t j) const { return e_[i * cols_ + j]; }
  void set(size_t i, size_t j, uint32_t v) { e_[i * cols_ + j] = v % p_; }
  void set_signed(size_t i, size_t j, int64_t v) { e_[i * cols_ + j] = reduce_mod(v, p_); }

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_zero() const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;  // matrix product
  Matrix scaled(uint32_t c) const;
  Matrix negated() const;
  Matrix transposed() const;
  Matrix pow(size_t n) const;  // square matrices only

  Matrix hstack(const Matrix& o) const;  // same rows
  Matrix vstack(const Matrix& o) const;  // same cols
  Matrix block(size_t i0, size_t j0, size_t nrows, size_t ncols) const;
  Matrix col(size_t j) const;
  std::vector<uint32_t> col_vec(size_t j) const;
  void set_block(size_t i0, size_t j0, const Matrix& m);

  // Flatten row-major into a single column vector (rows*cols x 1).
  Matrix vectorized() const;

private:
  size_t rows_, cols_;
  uint32_t p_;
  std::vector<uint32_t> e_;
};

// Reduced row echelon form together with its pivot columns.
struct Echelon {
  Matrix mat;
  std::vector<size_t> pivots;
};

Echelon rref(const Matrix& m);
size_t rank(const Matrix& m);

// Solves a * x = b for x; dimensions a: m x n, b: m x k. Returns the
// echelon-determined particular solution (free variables set to 0) when the
// system is consistent, nullopt otherwise.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

// Returns a matrix whose columns form the canonical nullspace basis of m
// (one column per free variable of the RREF, in column order).
Matrix nullspace(const Matrix& m);

// Returns the columns of m at the pivot positions of rref(m): a basis of
// the column space drawn from the original columns.
Matrix image(const Matrix& m);

// Is the column vector v contained in the column space of basis?
bool in_column_space(const Matrix& basis, const Matrix& v);

// Canonical basis of a column span: image() of the input.
// Subspace comparisons.
bool subspace_leq(const Matrix& sub_cols, const Matrix& ambient_cols);
bool subspace_eq(const Matrix& a_cols, const Matrix& b_cols);

// Intersection of two column spans, as columns.
Matrix subspace_intersection(const Matrix& a_cols, const Matrix& b_cols);

// A quotient span(ambient)/span(sub) with chosen coset representatives and
// a deterministic linear projection onto their coordinates.
class QuotientSpace {
public:
  // sub_cols must span a subspace of span(ambient_cols); throws otherwise.
  QuotientSpace(const Matrix& ambient_cols, const Matrix& sub_cols);

  size_t dim() const { return reps_.cols(); }
  const Matrix& representatives() const { return reps_; }
  const Matrix& sub_basis() const { return sub_; }

  // Coordinates of v + sub in the representative basis. v must lie in the
  // ambient span.
  Matrix reduce(const Matrix& v) const;
  // The canonical coset representative of v: reps * reduce(v).
  Matrix canonical(const Matrix& v) const;

private:
  Matrix sub_;   // basis of the subspace (columns)
  Matrix reps_;  // chosen ambient columns completing sub_ to a basis
  Matrix combined_;  // [sub_ | reps_]
};

}  // namespace arq
