#pragma once

// Shape-operator families, their fundamental (Gram) matrix, and the
// power-trace functionals f_p = Tr(S^p), g_p = f_p^(1/p).

#include <cstddef>
#include <span>
#include <vector>

#include "json.hpp"

#include "lupinch/symmat.hpp"

namespace lupinch {

/// Ordered list A_1..A_m of symmetric n x n matrices; the second fundamental
/// form at a point, one matrix per normal direction.
class MatrixFamily {
 public:
  MatrixFamily(std::size_t n, std::vector<SymMatrix> members);

  static MatrixFamily zeros(std::size_t n, std::size_t m);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return members_.size(); }
  const SymMatrix& operator[](std::size_t alpha) const { return members_[alpha]; }
  std::span<const SymMatrix> members() const noexcept { return members_; }

  /// |Tr A_alpha| <= tol for every member (minimality).
  bool is_trace_free(double tol) const;
  /// |<A_alpha, A_beta>| <= tol for every alpha != beta.
  bool is_orthogonal(double tol) const;

  /// Simultaneous change of tangent basis: A_alpha -> Q A_alpha Q^T.
  MatrixFamily conjugated(const Matrix& q) const;
  /// Change of normal frame: A_alpha -> sum_beta Q(alpha, beta) A_beta.
  MatrixFamily mixed(const Matrix& q) const;
  /// Appends zero members up to size m.
  MatrixFamily padded(std::size_t m) const;
  /// Rotates the tangent basis so that A_1 becomes exactly diagonal (its
  /// eigenvalues, descending); the rotation is applied to every member.
  MatrixFamily with_diagonal_first() const;

 private:
  std::size_t n_;
  std::vector<SymMatrix> members_;
};

/// JSON document {"n", "m", "matrices": [[row-major upper triangle]]}.
nlohmann::json to_json(const MatrixFamily& f);
MatrixFamily family_from_json(const nlohmann::json& doc);

/// S = (<A_alpha, A_beta>) with its eigenvalues lambda_1 >= ... >= lambda_m.
class FundamentalMatrix {
 public:
  explicit FundamentalMatrix(const MatrixFamily& f);

  const SymMatrix& gram() const noexcept { return gram_; }
  std::size_t m() const noexcept { return gram_.dim(); }
  double sigma() const noexcept { return sigma_; }
  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }

  /// 1-based eigenvalue lambda_i, zero past m (codimension padding).
  double lambda(std::size_t i) const;
  double lambda1() const { return lambda(1); }
  double lambda2() const { return lambda(2); }

  /// Eigenvalues padded with zeros up to `codim` entries.
  std::vector<double> padded_eigenvalues(std::size_t codim) const;

 private:
  SymMatrix gram_;
  double sigma_;
  std::vector<double> eigenvalues_;
};

struct PowerTrace {
  int p = 2;
  double f_p = 0.0;      // may be +inf when Tr(S^p) exceeds double range
  double log_f_p = 0.0;  // -inf when f_p == 0
  double g_p = 0.0;      // always finite
};

/// f_p from the eigenvalue list, factored as lambda_1^p * sum (lambda/lambda_1)^p
/// so that g_p stays finite for p up to 1e4 and beyond.
PowerTrace power_trace(std::span<const double> eigenvalues, int p);
PowerTrace power_trace(const FundamentalMatrix& s, int p);

struct RatioDecay {
  std::size_t multiplicity = 0;  // r: eigenvalues equal to lambda_1 within tol
  std::vector<double> ratios;    // lambda_{r+1}^p / f_p for p = 2..p_max
};

/// Empty `ratios` when every eigenvalue equals lambda_1.
RatioDecay top_eigenvalue_ratio_decay(std::span<const double> eigenvalues, int p_max,
                                      double tol = kDefaultTol);
RatioDecay top_eigenvalue_ratio_decay(const FundamentalMatrix& s, int p_max,
                                      double tol = kDefaultTol);

}  // namespace lupinch
