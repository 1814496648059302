#pragma once

// First eigenvalue of the Schrodinger operator L = -Laplacian - sigma on the
// catalog models. For constant sigma, spec(L) = spec(-Laplacian) - sigma, so
// the analytic side reduces to classical sphere, product and projective-plane
// spectra. The flat Clifford torus M_{1,1} also gets a finite-difference
// cross-check.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lupinch/model_catalog.hpp"

namespace lupinch {

/// Round sphere S^k(rho).
struct SphereSpec {
  int k = 1;
  double rho = 1.0;
};

struct SpectrumLevel {
  double eigenvalue = 0.0;
  std::uint64_t multiplicity = 0;
  friend bool operator==(const SpectrumLevel&, const SpectrumLevel&) = default;
};

/// Distinct eigenvalues of -Laplacian, ascending, with multiplicities.
using AnalyticSpectrum = std::vector<SpectrumLevel>;

/// Eigenvalues that differ by at most this much are merged.
inline constexpr double kMergeTol = 1e-12;

/// Levels l = 0..cutoff: eigenvalue l(l+k-1)/rho^2, multiplicity
/// C(k+l, k) - C(k+l-2, k).
AnalyticSpectrum sphere_spectrum(const SphereSpec& s, int cutoff);

/// Spectrum of a Riemannian product, complete below `threshold`: every sum of
/// factor eigenvalues <= threshold is enumerated and multiplicities multiply.
AnalyticSpectrum product_spectrum(std::span<const SphereSpec> factors, double threshold);

/// S^r(sqrt(r/n)) x S^{n-r}(sqrt((n-r)/n)), complete below `threshold`.
AnalyticSpectrum clifford_spectrum(int r, int n, double threshold);

/// Real projective plane of curvature 1/3 (Veronese surface): even levels
/// l <= cutoff, eigenvalue l(l+1)/3, multiplicity 2l+1.
AnalyticSpectrum veronese_spectrum(int cutoff);

/// Analytic spectrum of a catalog model, complete below `threshold`.
AnalyticSpectrum model_spectrum(const ModelSubmanifold& model, double threshold);

/// Smallest eigenvalue of -Laplacian - sigma for constant sigma.
double schrodinger_mu1(const AnalyticSpectrum& spec, double sigma);

struct MainTheoremReport {
  double mu1 = 0.0;
  double lambda2 = 0.0;
  double bound = 0.0;  // -n + max lambda_2
  double gap = 0.0;    // bound - mu1
  bool totally_geodesic = false;
  bool holds = false;  // gap >= -tol, or the geodesic branch with mu1 = 0
  std::string note;
};

MainTheoremReport main_theorem_check(const ModelSubmanifold& model, double tol = kDefaultTol);

// Discrete cross-check -------------------------------------------------------

/// Real symmetric linear operator on R^size().
class SymmetricOperator {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
  };

  virtual ~SymmetricOperator() = default;
  virtual std::size_t size() const = 0;
  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
  virtual double entry(std::size_t i, std::size_t j) const = 0;
  /// Nonzero entries, both triangles.
  virtual std::vector<Entry> entries() const = 0;

  /// min_i (a_ii - sum_{j != i} |a_ij|).
  double gershgorin_lower() const;
  /// max_i sum_j |a_ij|, an upper bound on the spectral norm.
  double norm_bound() const;
};

/// -Laplacian_h - sigma on the flat torus S^1(rho) x S^1(rho), periodic
/// 5-point stencil with mesh width h = 2 pi rho / N.
class TorusGridOperator final : public SymmetricOperator {
 public:
  TorusGridOperator(int n_points, double sigma, double rho);

  int points() const noexcept { return n_; }
  double h() const noexcept { return h_; }
  double rho() const noexcept { return rho_; }
  double sigma() const noexcept { return sigma_; }

  std::size_t size() const override { return std::size_t(n_) * std::size_t(n_); }
  void apply(std::span<const double> x, std::span<double> y) const override;
  double entry(std::size_t i, std::size_t j) const override;
  std::vector<Entry> entries() const override;

  /// Samples f(u, v) at the grid nodes (u, v in [0, 2 pi rho)).
  std::vector<double> sample(const std::function<double(double, double)>& f) const;

 private:
  int n_;
  double h_;
  double rho_;
  double sigma_;
};

/// Flat Clifford torus M_{1,1}: rho = 1/sqrt(2).
TorusGridOperator torus_grid_operator(int n_points, double sigma);

class DiagonalOperator final : public SymmetricOperator {
 public:
  explicit DiagonalOperator(std::vector<double> diag) : d_(std::move(diag)) {}
  std::size_t size() const override { return d_.size(); }
  void apply(std::span<const double> x, std::span<double> y) const override;
  double entry(std::size_t i, std::size_t j) const override { return i == j ? d_[i] : 0.0; }
  std::vector<Entry> entries() const override;

 private:
  std::vector<double> d_;
};

struct EigenSolverOptions {
  std::uint64_t seed = 42;
  /// Iterate until every residual is below this times norm_bound().
  double relative_residual = 1e-12;
  int max_iterations = 2000;
};

struct EigenpairResult {
  std::vector<double> values;  // ascending
  std::vector<std::vector<double>> vectors;
  std::vector<double> residuals;  // ||G x - theta x||
  int iterations = 0;
};

/// The `count` algebraically smallest eigenpairs: shifted inverse subspace
/// iteration with a sparse LDL^T factorization and Rayleigh-Ritz
/// projection. Throws NumericError (carrying the worst residual) at the
/// iteration cap.
EigenpairResult smallest_eigenvalues(const SymmetricOperator& op, int count,
                                     const EigenSolverOptions& opts = {});

/// <G f, f> / <f, f>. Throws InputError on f == 0.
double rayleigh_quotient(const SymmetricOperator& op, std::span<const double> f);

struct ConvergenceRow {
  int n_points = 0;
  double h = 0.0;
  double smallest = 0.0;
  double second = 0.0;
  double error = 0.0;           // |second - (1/rho^2 - sigma)|
  double observed_order = 0.0;  // vs. the previous row; 0 for the first
};

std::vector<ConvergenceRow> torus_convergence_study(std::span<const int> grid_sizes, double sigma,
                                                    const EigenSolverOptions& opts = {});

}  // namespace lupinch
