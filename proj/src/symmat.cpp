#include "lupinch/symmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lupinch {

namespace {

void require_same_dim(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) {
    throw InputError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                     std::to_string(b.dim()));
  }
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::frobenius_norm_sq() const {
  return std::inner_product(a_.begin(), a_.end(), a_.begin(), 0.0);
}

double Matrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.n_ != b.n_) throw InputError("dimension mismatch in matrix product");
  const std::size_t n = a.n_;
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.n_ != b.n_) throw InputError("dimension mismatch in matrix difference");
  Matrix c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] -= b.a_[k];
  return c;
}

SymMatrix::SymMatrix(std::size_t n) : n_(n), upper_(n * (n + 1) / 2, 0.0) {
  if (n == 0) throw InputError("SymMatrix dimension must be >= 1");
}

SymMatrix SymMatrix::from_upper(std::size_t n, std::span<const double> upper) {
  SymMatrix s(n);
  if (upper.size() != s.upper_.size()) {
    throw InputError("upper triangle of a " + std::to_string(n) + "x" + std::to_string(n) +
                     " matrix needs " + std::to_string(s.upper_.size()) + " values, got " +
                     std::to_string(upper.size()));
  }
  std::copy(upper.begin(), upper.end(), s.upper_.begin());
  return s;
}

SymMatrix SymMatrix::from_dense(const Matrix& a, double tol) {
  SymMatrix s(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j) {
      if (std::abs(a(i, j) - a(j, i)) > tol) throw InputError("matrix is not symmetric");
      s.set(i, j, a(i, j));
    }
  return s;
}

SymMatrix SymMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t n = rows.size();
  Matrix a(n);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n) throw InputError("from_rows needs a square matrix");
    std::size_t j = 0;
    for (double v : row) a(i, j++) = v;
    ++i;
  }
  return from_dense(a);
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s.set(i, i, d[i]);
  return s;
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) s.set(i, i, 1.0);
  return s;
}

SymMatrix SymMatrix::unit_pair(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n || i == j) throw InputError("unit_pair needs distinct indices < n");
  SymMatrix s(n);
  s.set(i, j, 1.0);
  return s;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::frobenius_norm_sq() const { return frobenius_inner(*this, *this); }

bool SymMatrix::is_diagonal(double tol) const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (std::abs((*this)(i, j)) > tol) return false;
  return true;
}

Matrix SymMatrix::dense() const {
  Matrix a(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) a(i, j) = (*this)(i, j);
  return a;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  require_same_dim(*this, o);
  for (std::size_t k = 0; k < upper_.size(); ++k) upper_[k] += o.upper_[k];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  require_same_dim(*this, o);
  for (std::size_t k = 0; k < upper_.size(); ++k) upper_[k] -= o.upper_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& v : upper_) v *= s;
  return *this;
}

double frobenius_inner(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  double diag = 0.0;
  double off = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    diag += a(i, i) * b(i, i);
    for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * b(i, j);
  }
  return diag + 2.0 * off;
}

Matrix commutator(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  Matrix c(n);
  // (AB - BA)_ij = sum_k a_ik b_kj - b_ik a_kj; for symmetric A, B the
  // (j, i) entry is the negation, so only i < j is computed.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < n; ++k) v += a(i, k) * b(k, j) - b(i, k) * a(k, j);
      c(i, j) = v;
      c(j, i) = -v;
    }
  return c;
}

double commutator_norm_sq(const SymMatrix& a, const SymMatrix& b) {
  return commutator(a, b).frobenius_norm_sq();
}

SymMatrix congruence(const Matrix& q, const SymMatrix& a) {
  if (q.dim() != a.dim()) throw InputError("dimension mismatch in congruence");
  const Matrix qa = q * a.dense();
  const std::size_t n = a.dim();
  SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < n; ++k) v += qa(i, k) * q(j, k);
      out.set(i, j, v);
    }
  return out;
}

EigenDecomposition sym_eigen(const SymMatrix& s, const JacobiOptions& opts) {
  const std::size_t n = s.dim();
  Matrix a = s.dense();
  Matrix v = Matrix::identity(n);

  const double norm = std::sqrt(s.frobenius_norm_sq());
  const double threshold = opts.relative_threshold * norm;
  auto off_norm = [&] {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    return std::sqrt(2.0 * off);
  };

  int sweep = 0;
  while (off_norm() > threshold) {
    if (sweep == opts.max_sweeps) {
      throw NumericError("Jacobi eigensolver did not converge in " +
                             std::to_string(opts.max_sweeps) + " sweeps",
                         off_norm());
    }
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        const double tau = sn / (1.0 + c);

        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = a(r, p);
            const double arq = a(r, q);
            a(r, p) = a(p, r) = arp - sn * (arq + tau * arp);
            a(r, q) = a(q, r) = arq + sn * (arp - tau * arq);
          }
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - sn * (vrq + tau * vrp);
          v(r, q) = vrq + sn * (vrp - tau * vrq);
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n);
  out.sweeps = sweep;
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

std::vector<double> sym_eigenvalues(const SymMatrix& a, const JacobiOptions& opts) {
  return sym_eigen(a, opts).values;
}

}  // namespace lupinch
