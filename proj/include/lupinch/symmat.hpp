#pragma once

// Dense symmetric-matrix algebra for small shape-operator families.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "lupinch/errors.hpp"

namespace lupinch {

/// Dense square matrix, row-major. Used for commutators, rotations and
/// eigenvector bases.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  static Matrix identity(std::size_t n);

  std::size_t dim() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  Matrix transposed() const;
  double frobenius_norm_sq() const;
  double trace() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// Real symmetric n x n matrix. Only the upper triangle is stored, so
/// entry(i, j) == entry(j, i) holds bit-exactly.
class SymMatrix {
 public:
  SymMatrix() : SymMatrix(1) {}
  explicit SymMatrix(std::size_t n);

  /// Builds from a row-major upper triangle (n(n+1)/2 values).
  static SymMatrix from_upper(std::size_t n, std::span<const double> upper);
  /// Requires `a` to be symmetric within `tol`; the upper triangle is kept.
  static SymMatrix from_dense(const Matrix& a, double tol = 0.0);
  static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static SymMatrix diagonal(std::span<const double> d);
  static SymMatrix identity(std::size_t n);
  /// The n x n matrix with 1 at (i, j) and (j, i), zero elsewhere.
  static SymMatrix unit_pair(std::size_t n, std::size_t i, std::size_t j);

  std::size_t dim() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return upper_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) { upper_[index(i, j)] = v; }

  std::span<const double> upper() const noexcept { return upper_; }

  double trace() const;
  double frobenius_norm_sq() const;
  bool is_diagonal(double tol) const;
  Matrix dense() const;

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(double s);
  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }
  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i + 1) / 2 + j;
  }

  std::size_t n_;
  std::vector<double> upper_;
};

/// <A, B> = Tr(A B^T) = sum_ij a_ij b_ij.
double frobenius_inner(const SymMatrix& a, const SymMatrix& b);

/// AB - BA. The result is antisymmetric by construction: entry (j, i) is
/// written as the exact negation of entry (i, j) and the diagonal is zero.
Matrix commutator(const SymMatrix& a, const SymMatrix& b);

/// ||AB - BA||^2 in the Frobenius norm.
double commutator_norm_sq(const SymMatrix& a, const SymMatrix& b);

/// Q A Q^T for orthogonal (or arbitrary square) Q.
SymMatrix congruence(const Matrix& q, const SymMatrix& a);

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k belongs to values[k]
  int sweeps = 0;
};

struct JacobiOptions {
  double relative_threshold = 1e-14;  // off-diagonal norm vs. ||A||
  int max_sweeps = 100;
};

/// Cyclic Jacobi eigensolver. Throws NumericError past the sweep cap.
EigenDecomposition sym_eigen(const SymMatrix& a, const JacobiOptions& opts = {});

/// Eigenvalues sorted descending.
std::vector<double> sym_eigenvalues(const SymMatrix& a, const JacobiOptions& opts = {});

}  // namespace lupinch
