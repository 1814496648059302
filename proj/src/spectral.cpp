#include "lupinch/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "lupinch/random.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

namespace lupinch {

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * std::uint64_t(n - k + i) / std::uint64_t(i);
  return c;
}

double sphere_level(const SphereSpec& s, int l) {
  return double(l) * double(l + s.k - 1) / (s.rho * s.rho);
}

std::uint64_t sphere_multiplicity(int k, int l) {
  return binomial(k + l, k) - binomial(k + l - 2, k);
}

AnalyticSpectrum merge_levels(AnalyticSpectrum levels) {
  std::sort(levels.begin(), levels.end(),
            [](const SpectrumLevel& a, const SpectrumLevel& b) { return a.eigenvalue < b.eigenvalue; });
  AnalyticSpectrum out;
  for (const auto& lv : levels) {
    if (!out.empty() && lv.eigenvalue - out.back().eigenvalue <= kMergeTol)
      out.back().multiplicity += lv.multiplicity;
    else
      out.push_back(lv);
  }
  return out;
}

void validate_sphere(const SphereSpec& s) {
  if (s.k < 1) throw InputError("sphere dimension must be >= 1");
  if (!(s.rho > 0.0)) throw InputError("sphere radius must be positive");
}

}  // namespace

AnalyticSpectrum sphere_spectrum(const SphereSpec& s, int cutoff) {
  validate_sphere(s);
  if (cutoff < 0) throw InputError("spectrum cutoff must be >= 0");
  AnalyticSpectrum out;
  for (int l = 0; l <= cutoff; ++l) out.push_back({sphere_level(s, l), sphere_multiplicity(s.k, l)});
  return out;
}

AnalyticSpectrum product_spectrum(std::span<const SphereSpec> factors, double threshold) {
  if (factors.empty()) throw InputError("product spectrum needs at least one factor");
  if (threshold < 0.0) throw InputError("spectrum threshold must be >= 0");
  AnalyticSpectrum acc{{0.0, 1}};
  for (const SphereSpec& s : factors) {
    validate_sphere(s);
    // l(l+k-1)/rho^2 is increasing in l, so stop at the first level past the
    // threshold.
    AnalyticSpectrum factor;
    for (int l = 0; sphere_level(s, l) <= threshold + kMergeTol; ++l)
      factor.push_back({sphere_level(s, l), sphere_multiplicity(s.k, l)});
    AnalyticSpectrum next;
    for (const auto& a : acc)
      for (const auto& b : factor)
        if (a.eigenvalue + b.eigenvalue <= threshold + kMergeTol)
          next.push_back({a.eigenvalue + b.eigenvalue, a.multiplicity * b.multiplicity});
    acc = merge_levels(std::move(next));
  }
  return acc;
}

AnalyticSpectrum clifford_spectrum(int r, int n, double threshold) {
  if (n < 2 || r < 1 || r > n - 1) throw InputError("Clifford hypersurface needs 1 <= r <= n-1");
  const SphereSpec factors[] = {{r, std::sqrt(double(r) / n)}, {n - r, std::sqrt(double(n - r) / n)}};
  return product_spectrum(factors, threshold);
}

AnalyticSpectrum veronese_spectrum(int cutoff) {
  if (cutoff < 0) throw InputError("spectrum cutoff must be >= 0");
  AnalyticSpectrum out;
  // S^2(sqrt 3) modulo the antipodal map keeps the even harmonics only.
  for (int l = 0; l <= cutoff; l += 2)
    out.push_back({double(l) * double(l + 1) / 3.0, std::uint64_t(2 * l + 1)});
  return out;
}

AnalyticSpectrum model_spectrum(const ModelSubmanifold& model, double threshold) {
  switch (model.kind) {
    case ModelKind::clifford:
      return clifford_spectrum(model.r, model.n, threshold);
    case ModelKind::veronese: {
      int cutoff = 0;
      while (double(cutoff + 2) * double(cutoff + 3) / 3.0 <= threshold + kMergeTol) cutoff += 2;
      return veronese_spectrum(cutoff);
    }
    case ModelKind::totally_geodesic:
      break;
  }
  const SphereSpec unit{model.n, 1.0};
  return product_spectrum(std::span<const SphereSpec>(&unit, 1), threshold);
}

double schrodinger_mu1(const AnalyticSpectrum& spec, double sigma) {
  if (spec.empty()) throw InputError("empty spectrum");
  double lowest = spec.front().eigenvalue;
  for (const auto& lv : spec) lowest = std::min(lowest, lv.eigenvalue);
  return lowest - sigma;
}

MainTheoremReport main_theorem_check(const ModelSubmanifold& model, double tol) {
  const FundamentalMatrix s(model.family);
  MainTheoremReport rep;
  rep.mu1 = schrodinger_mu1(model_spectrum(model, 0.0), s.sigma());
  rep.lambda2 = s.lambda2();
  rep.bound = -double(model.n) + rep.lambda2;
  rep.gap = rep.bound - rep.mu1;
  rep.totally_geodesic = s.sigma() <= tol;
  if (rep.totally_geodesic) {
    rep.holds = std::abs(rep.mu1) <= tol;
    rep.note = "totally geodesic branch, mu1 = 0; the bound does not apply";
  } else {
    rep.holds = rep.gap >= -tol;
    rep.note = std::abs(rep.gap) <= tol ? "equality: mu1 = -n + max lambda2" : "strict inequality";
  }
  return rep;
}

double SymmetricOperator::gershgorin_lower() const {
  std::vector<double> diag(size(), 0.0), off(size(), 0.0);
  for (const Entry& e : entries()) {
    if (e.row == e.col)
      diag[e.row] += e.value;
    else
      off[e.row] += std::abs(e.value);
  }
  double lo = diag.empty() ? 0.0 : diag[0] - off[0];
  for (std::size_t i = 0; i < size(); ++i) lo = std::min(lo, diag[i] - off[i]);
  return lo;
}

double SymmetricOperator::norm_bound() const {
  std::vector<double> row(size(), 0.0);
  for (const Entry& e : entries()) row[e.row] += std::abs(e.value);
  return row.empty() ? 0.0 : *std::max_element(row.begin(), row.end());
}

TorusGridOperator::TorusGridOperator(int n_points, double sigma, double rho)
    : n_(n_points), h_(2.0 * std::numbers::pi * rho / n_points), rho_(rho), sigma_(sigma) {
  if (n_points < 4) throw InputError("torus grid needs N >= 4");
  if (!(rho > 0.0)) throw InputError("torus radius must be positive");
}

void TorusGridOperator::apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = std::size_t(n_);
  if (x.size() != size() || y.size() != size()) throw InputError("vector size mismatch");
  const double inv_h2 = 1.0 / (h_ * h_);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t up = (a + 1) % n, dn = (a + n - 1) % n;
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t rt = (b + 1) % n, lt = (b + n - 1) % n;
      const double c = x[a * n + b];
      // Pairwise neighbour sums keep 4c - sum exactly zero on constants.
      const double nb = (x[up * n + b] + x[dn * n + b]) + (x[a * n + rt] + x[a * n + lt]);
      y[a * n + b] = (4.0 * c - nb) * inv_h2 - sigma_ * c;
    }
  }
}

double TorusGridOperator::entry(std::size_t i, std::size_t j) const {
  const std::size_t n = std::size_t(n_);
  const double inv_h2 = 1.0 / (h_ * h_);
  if (i == j) return 4.0 * inv_h2 - sigma_;
  const std::size_t ai = i / n, bi = i % n, aj = j / n, bj = j % n;
  const bool same_row = ai == aj && ((bi + 1) % n == bj || (bj + 1) % n == bi);
  const bool same_col = bi == bj && ((ai + 1) % n == aj || (aj + 1) % n == ai);
  return same_row || same_col ? -inv_h2 : 0.0;
}

std::vector<SymmetricOperator::Entry> TorusGridOperator::entries() const {
  const std::size_t n = std::size_t(n_);
  const double inv_h2 = 1.0 / (h_ * h_);
  std::vector<Entry> out;
  out.reserve(5 * size());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t i = a * n + b;
      out.push_back({i, i, 4.0 * inv_h2 - sigma_});
      for (std::size_t j : {((a + 1) % n) * n + b, ((a + n - 1) % n) * n + b, a * n + (b + 1) % n,
                            a * n + (b + n - 1) % n})
        out.push_back({i, j, -inv_h2});
    }
  return out;
}

std::vector<double> TorusGridOperator::sample(const std::function<double(double, double)>& f) const {
  const std::size_t n = std::size_t(n_);
  std::vector<double> out(size());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out[a * n + b] = f(double(a) * h_, double(b) * h_);
  return out;
}

TorusGridOperator torus_grid_operator(int n_points, double sigma) {
  return TorusGridOperator(n_points, sigma, 1.0 / std::sqrt(2.0));
}

void DiagonalOperator::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != size() || y.size() != size()) throw InputError("vector size mismatch");
  for (std::size_t i = 0; i < d_.size(); ++i) y[i] = d_[i] * x[i];
}

std::vector<SymmetricOperator::Entry> DiagonalOperator::entries() const {
  std::vector<Entry> out;
  for (std::size_t i = 0; i < d_.size(); ++i) out.push_back({i, i, d_[i]});
  return out;
}

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) { return std::inner_product(a.begin(), a.end(), b.begin(), 0.0); }

// Modified Gram-Schmidt, two passes. Columns that collapse are replaced by
// fresh random directions.
void orthonormalize(std::vector<Vec>& block, Rng& rng) {
  std::normal_distribution<double> normal;
  for (std::size_t i = 0; i < block.size(); ++i) {
    for (int attempt = 0;; ++attempt) {
      const double before = std::sqrt(dot(block[i], block[i]));
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t k = 0; k < i; ++k) {
          const double d = dot(block[i], block[k]);
          for (std::size_t t = 0; t < block[i].size(); ++t) block[i][t] -= d * block[k][t];
        }
      const double norm = std::sqrt(dot(block[i], block[i]));
      if (norm > 1e-10 * before && norm > 0.0) {
        for (double& v : block[i]) v /= norm;
        break;
      }
      if (attempt == 8) throw NumericError("subspace basis collapsed");
      for (double& v : block[i]) v = normal(rng);
    }
  }
}

}  // namespace

EigenpairResult smallest_eigenvalues(const SymmetricOperator& op, int count, const EigenSolverOptions& opts) {
  const std::size_t dim = op.size();
  if (count < 1 || std::size_t(count) > dim) throw InputError("eigenvalue count must lie in 1..size");
  const std::size_t want = std::size_t(count);
  const std::size_t block = std::min(dim, want + std::max<std::size_t>(4, want));

  // G + shift*I has Gershgorin lower bound 1, hence is positive definite.
  const double shift = 1.0 - op.gershgorin_lower();
  std::vector<Eigen::Triplet<double>> trips;
  for (const auto& e : op.entries()) trips.emplace_back(int(e.row), int(e.col), e.value);
  for (std::size_t i = 0; i < dim; ++i) trips.emplace_back(int(i), int(i), shift);
  Eigen::SparseMatrix<double> shifted(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  shifted.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(shifted);
  if (ldlt.info() != Eigen::Success) throw NumericError("sparse factorization of the shifted operator failed");

  Rng rng(opts.seed);
  std::normal_distribution<double> normal;
  std::vector<Vec> basis(block, Vec(dim));
  for (auto& v : basis)
    for (double& x : v) x = normal(rng);
  orthonormalize(basis, rng);

  const double target = opts.relative_residual * std::max(op.norm_bound(), 1.0);
  EigenpairResult out;
  Vec applied(dim);
  for (int it = 1; it <= opts.max_iterations; ++it) {
    for (auto& v : basis) {
      const Eigen::Map<const Eigen::VectorXd> rhs(v.data(), Eigen::Index(dim));
      const Eigen::VectorXd sol = ldlt.solve(rhs);
      std::copy(sol.data(), sol.data() + dim, v.begin());
    }
    orthonormalize(basis, rng);

    // Rayleigh-Ritz on span(basis).
    std::vector<Vec> images(block, Vec(dim));
    for (std::size_t c = 0; c < block; ++c) op.apply(basis[c], images[c]);
    SymMatrix projected(block);
    for (std::size_t a = 0; a < block; ++a)
      for (std::size_t b = a; b < block; ++b)
        projected.set(a, b, 0.5 * (dot(basis[a], images[b]) + dot(basis[b], images[a])));
    const EigenDecomposition ritz = sym_eigen(projected);  // descending

    std::vector<Vec> rotated(block, Vec(dim, 0.0));
    std::vector<Vec> rotated_images(block, Vec(dim, 0.0));
    for (std::size_t c = 0; c < block; ++c) {
      const std::size_t src = block - 1 - c;  // ascending order
      for (std::size_t a = 0; a < block; ++a) {
        const double w = ritz.vectors(a, src);
        if (w == 0.0) continue;
        for (std::size_t t = 0; t < dim; ++t) {
          rotated[c][t] += w * basis[a][t];
          rotated_images[c][t] += w * images[a][t];
        }
      }
    }
    basis = std::move(rotated);

    out.values.assign(want, 0.0);
    out.residuals.assign(want, 0.0);
    double worst = 0.0;
    for (std::size_t c = 0; c < want; ++c) {
      const double theta = ritz.values[block - 1 - c];
      double res = 0.0;
      for (std::size_t t = 0; t < dim; ++t) {
        const double d = rotated_images[c][t] - theta * basis[c][t];
        res += d * d;
      }
      out.values[c] = theta;
      out.residuals[c] = std::sqrt(res);
      worst = std::max(worst, out.residuals[c]);
    }
    out.iterations = it;
    if (worst <= target) {
      for (std::size_t c = 0; c < want; ++c) {
        // Rayleigh quotient of the final vector, using the exact operator.
        op.apply(basis[c], applied);
        out.values[c] = dot(applied, basis[c]) / dot(basis[c], basis[c]);
      }
      out.vectors.assign(basis.begin(), basis.begin() + std::ptrdiff_t(want));
      return out;
    }
    if (it == opts.max_iterations)
      throw NumericError("inverse subspace iteration did not converge; worst residual " + std::to_string(worst),
                         worst);
  }
  return out;
}

double rayleigh_quotient(const SymmetricOperator& op, std::span<const double> f) {
  if (f.size() != op.size()) throw InputError("grid function size mismatch");
  const double ff = std::inner_product(f.begin(), f.end(), f.begin(), 0.0);
  if (ff == 0.0) throw InputError("Rayleigh quotient of the zero function");
  std::vector<double> gf(f.size());
  op.apply(f, gf);
  return std::inner_product(gf.begin(), gf.end(), f.begin(), 0.0) / ff;
}

std::vector<ConvergenceRow> torus_convergence_study(std::span<const int> grid_sizes, double sigma,
                                                    const EigenSolverOptions& opts) {
  std::vector<ConvergenceRow> rows;
  for (int n : grid_sizes) {
    const TorusGridOperator op = torus_grid_operator(n, sigma);
    const EigenpairResult eig = smallest_eigenvalues(op, 2, opts);
    ConvergenceRow row;
    row.n_points = n;
    row.h = op.h();
    row.smallest = eig.values[0];
    row.second = eig.values[1];
    row.error = std::abs(row.second - (1.0 / (op.rho() * op.rho()) - sigma));
    if (!rows.empty() && row.error > 0.0 && rows.back().error > 0.0)
      row.observed_order = std::log(rows.back().error / row.error) / std::log(rows.back().h / row.h);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace lupinch
