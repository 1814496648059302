#pragma once

// Lu's commutator inequality and the underlying weighted quadratic
// inequality
//
//   sum_{i<j} (eta_i - eta_j)^2 r_ij <= sum_{i<j} r_ij + max_{i<j} r_ij
//
// for eta on the unit sphere of the zero-sum hyperplane, together with the
// exact maximizer (top eigenpair of the weighted graph Laplacian) and the
// classification of every configuration attaining equality.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lupinch/family.hpp"
#include "lupinch/symmat.hpp"

namespace lupinch {

/// Nonnegative weights r_ij for 0 <= i < j < n, packed row-major.
class EdgeWeights {
 public:
  explicit EdgeWeights(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return w_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double v);

  std::span<const double> values() const noexcept { return w_; }
  double sum() const;
  /// Max over the (possibly empty) edge set; 0 when there are no edges.
  double max() const;
  bool all_zero() const;
  EdgeWeights scaled(double s) const;
  /// Relabels vertices: result(i, j) = this(perm[i], perm[j]).
  EdgeWeights permuted(std::span<const std::size_t> perm) const;

 private:
  std::size_t index(std::size_t i, std::size_t j) const;

  std::size_t n_;
  std::vector<double> w_;
};

/// Input of the quadratic inequality: eta with sum 0 and unit norm, plus weights.
struct EtaWeights {
  std::vector<double> eta;
  EdgeWeights r;

  std::size_t n() const noexcept { return eta.size(); }
  /// Throws InputError naming the violated constraint.
  void validate(double tol = kDefaultTol) const;
};

struct InequalityReport {
  double lhs = 0.0;
  double bound = 0.0;
  double slack = 0.0;  // bound - lhs
  bool is_equality = false;
};

/// Relative slack below which a report is flagged as an equality.
inline constexpr double kEqualityTol = 1e-9;

double lemma1_lhs(const EtaWeights& x, double tol = kDefaultTol);
/// sum r + max r. Throws InputError on a negative weight.
double lemma1_bound(const EdgeWeights& r);
InequalityReport lemma1_check(const EtaWeights& x, double tol = kDefaultTol);

/// L_r = sum_{i<j} r_ij (e_i - e_j)(e_i - e_j)^T, so eta^T L_r eta is the
/// left-hand side of the quadratic inequality.
SymMatrix weighted_laplacian(const EdgeWeights& r);

/// Critical point of the Lagrangian
///   Phi = f(eta) + lambda * sum(eta) + mu * (|eta|^2 - 1).
struct StationaryPoint {
  std::vector<double> eta;
  double lagrange_lambda = 0.0;
  double lagrange_mu = 0.0;
  double critical_value = 0.0;  // == -mu
};

/// Global maximum of the left-hand side over the constraint set, from the
/// top eigenpair of L_r. Throws InputError when every weight is zero.
StationaryPoint lemma1_maximize(const EdgeWeights& r);

enum class Orientation { case1, case2 };

/// One of the equality configurations: eta_1 = sqrt(n-k)/sqrt(n-k+1),
/// eta_2..eta_k = 0, the rest -1/sqrt((n-k+1)(n-k)), with r_1j = weight for
/// j > k (case1), or its reversal-negation (case2).
struct EqualityCase {
  std::size_t n = 2;
  std::size_t k = 1;
  double weight = 1.0;
  Orientation orientation = Orientation::case1;
};

EtaWeights construct_equality_eta(const EqualityCase& spec);

struct EqualityMatch {
  Orientation orientation;
  std::size_t k;
  friend bool operator==(const EqualityMatch&, const EqualityMatch&) = default;
};

struct Classification {
  /// Every (orientation, k) whose family matches; several cases coincide
  /// (e.g. case1(n-1) and case2(n-1) describe the same configuration).
  std::vector<EqualityMatch> matches;
  /// Sorting permutation: sorted eta[i] = input eta[permutation[i]].
  std::vector<std::size_t> permutation;
  double weight = 0.0;

  bool is_equality() const noexcept { return !matches.empty(); }
  bool contains(const EqualityMatch& m) const;
};

/// Sorts eta descending, permutes r accordingly, and compares against every
/// constructed equality family entrywise within tol.
Classification classify_equality(const EtaWeights& x, double tol = 1e-9);

// Commutator form ------------------------------------------------------------

/// sum_{alpha >= 2} ||[A_1, A_alpha]||^2. Requires m >= 2.
double lemma2_lhs(const MatrixFamily& f);

/// sum_{alpha >= 2} ||A_alpha||^2 + max_{alpha >= 2} ||A_alpha||^2. Requires
/// ||A_1|| = 1 and pairwise orthogonality within tol (scaled by
/// ||A_alpha|| ||A_beta|| when that exceeds 1); the members A_2..A_m
/// are ordered by descending norm before the formula is applied.
double lemma2_bound(const MatrixFamily& f, double tol = kDefaultTol);

InequalityReport lemma2_check(const MatrixFamily& f, double tol = kDefaultTol);

struct Lemma2EqualityConfig {
  std::size_t n = 2;
  std::size_t m = 2;
  std::size_t k = 1;
  double lambda_scale = 1.0;  // Frobenius norm of A_1
  double mu_scale = 1.0;      // value of the (1,i), (i,1) entries of A_i
};

/// A_1 = lambda * diag(sqrt(k)/sqrt(k+1), -1/sqrt(k(k+1)) x k, 0 x (n-k-1)),
/// A_i = mu * (E_1i + E_i1) for i = 2..k+1, the remaining members zero.
MatrixFamily construct_lemma2_equality(const Lemma2EqualityConfig& cfg);

/// With A_1 diagonal: eta = diag(A_1), r_ij = 2 sum_{alpha>=2} (a^alpha_ij)^2.
/// Then lemma1_lhs(result) == lemma2_lhs(f) identically.
EtaWeights lemma2_to_lemma1(const MatrixFamily& f, double tol = kDefaultTol);

}  // namespace lupinch
