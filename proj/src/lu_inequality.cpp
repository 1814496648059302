#include "lupinch/lu_inequality.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace lupinch {

EdgeWeights::EdgeWeights(std::size_t n) : n_(n), w_(n * (n - 1) / 2, 0.0) {
  if (n < 2) throw InputError("edge weights need n >= 2");
}

std::size_t EdgeWeights::index(std::size_t i, std::size_t j) const {
  if (i == j || i >= n_ || j >= n_) throw InputError("edge index out of range");
  if (i > j) std::swap(i, j);
  // Row i holds edges (i, i+1..n-1), preceded by i*(2n-i-1)/2 entries.
  return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

void EdgeWeights::set(std::size_t i, std::size_t j, double v) { w_[index(i, j)] = v; }

double EdgeWeights::sum() const { return std::accumulate(w_.begin(), w_.end(), 0.0); }

double EdgeWeights::max() const {
  return w_.empty() ? 0.0 : std::max(0.0, *std::max_element(w_.begin(), w_.end()));
}

bool EdgeWeights::all_zero() const {
  return std::all_of(w_.begin(), w_.end(), [](double v) { return v == 0.0; });
}

EdgeWeights EdgeWeights::scaled(double s) const {
  EdgeWeights out = *this;
  for (double& v : out.w_) v *= s;
  return out;
}

EdgeWeights EdgeWeights::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != n_) throw InputError("permutation size mismatch");
  EdgeWeights out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) out.set(i, j, (*this)(perm[i], perm[j]));
  return out;
}

void EtaWeights::validate(double tol) const {
  if (eta.size() != r.n())
    throw InputError("eta has " + std::to_string(eta.size()) + " entries but weights are for n = " +
                     std::to_string(r.n()));
  const double sum = std::accumulate(eta.begin(), eta.end(), 0.0);
  if (!(std::abs(sum) <= tol)) throw InputError("constraint sum(eta) = 0 violated: sum = " + std::to_string(sum));
  const double norm_sq = std::inner_product(eta.begin(), eta.end(), eta.begin(), 0.0);
  if (!(std::abs(norm_sq - 1.0) <= tol))
    throw InputError("constraint |eta|^2 = 1 violated: |eta|^2 = " + std::to_string(norm_sq));
  for (double v : r.values())
    if (!(v >= 0.0)) throw InputError("weights must be nonnegative");
}

double lemma1_lhs(const EtaWeights& x, double tol) {
  x.validate(tol);
  double lhs = 0.0;
  for (std::size_t i = 0; i < x.n(); ++i)
    for (std::size_t j = i + 1; j < x.n(); ++j) {
      const double d = x.eta[i] - x.eta[j];
      lhs += d * d * x.r(i, j);
    }
  return lhs;
}

double lemma1_bound(const EdgeWeights& r) {
  for (double v : r.values())
    if (!(v >= 0.0)) throw InputError("weights must be nonnegative");
  return r.sum() + r.max();
}

InequalityReport lemma1_check(const EtaWeights& x, double tol) {
  InequalityReport rep;
  rep.lhs = lemma1_lhs(x, tol);
  rep.bound = lemma1_bound(x.r);
  rep.slack = rep.bound - rep.lhs;
  rep.is_equality = std::abs(rep.slack) <= kEqualityTol * std::max(1.0, rep.bound);
  return rep;
}

SymMatrix weighted_laplacian(const EdgeWeights& r) {
  const std::size_t n = r.n();
  SymMatrix l(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = r(i, j);
      if (w < 0.0) throw InputError("weights must be nonnegative");
      l.set(i, i, l(i, i) + w);
      l.set(j, j, l(j, j) + w);
      l.set(i, j, -w);
    }
  return l;
}

StationaryPoint lemma1_maximize(const EdgeWeights& r) {
  if (r.all_zero()) throw InputError("maximizer is undefined when every weight is zero");
  const SymMatrix lap = weighted_laplacian(r);
  const EigenDecomposition eig = sym_eigen(lap);
  const std::size_t n = r.n();

  StationaryPoint out;
  out.eta.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eta[i] = eig.vectors(i, 0);
  // Orthogonal to the kernel vector (1, ..., 1) up to rounding; project and
  // renormalize so the constraints hold to machine precision.
  const double mean = std::accumulate(out.eta.begin(), out.eta.end(), 0.0) / double(n);
  for (double& v : out.eta) v -= mean;
  const double norm = std::sqrt(std::inner_product(out.eta.begin(), out.eta.end(), out.eta.begin(), 0.0));
  const auto big = std::max_element(out.eta.begin(), out.eta.end(),
                                    [](double a, double b) { return std::abs(a) < std::abs(b); });
  const double sign = *big < 0.0 ? -1.0 : 1.0;
  for (double& v : out.eta) v *= sign / norm;

  out.critical_value = eig.values.front();
  out.lagrange_mu = -out.critical_value;
  // dPhi/deta_i = 2 (L eta)_i + lambda + 2 mu eta_i = 0; summing over i
  // determines lambda.
  double grad_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double li = 0.0;
    for (std::size_t j = 0; j < n; ++j) li += lap(i, j) * out.eta[j];
    grad_sum += 2.0 * li + 2.0 * out.lagrange_mu * out.eta[i];
  }
  out.lagrange_lambda = -grad_sum / double(n);
  return out;
}

namespace {

std::vector<double> case1_eta(std::size_t n, std::size_t k) {
  const double nk = double(n - k);
  std::vector<double> eta(n, 0.0);
  eta[0] = std::sqrt(nk) / std::sqrt(nk + 1.0);
  for (std::size_t i = k; i < n; ++i) eta[i] = -1.0 / std::sqrt((nk + 1.0) * nk);
  return eta;
}

std::vector<double> case2_eta(std::size_t n, std::size_t k) {
  const std::vector<double> c1 = case1_eta(n, k);
  std::vector<double> eta(n);
  for (std::size_t i = 0; i < n; ++i) eta[i] = -c1[n - 1 - i];
  return eta;
}

bool has_edge(Orientation o, std::size_t n, std::size_t k, std::size_t i, std::size_t j) {
  if (o == Orientation::case1) return i == 0 && j >= k;
  return j == n - 1 && i < n - k;
}

}  // namespace

EtaWeights construct_equality_eta(const EqualityCase& spec) {
  if (spec.n < 2) throw InputError("equality family needs n >= 2");
  if (spec.k < 1 || spec.k > spec.n - 1)
    throw InputError("k must lie in 1..n-1, got " + std::to_string(spec.k));
  if (!(spec.weight > 0.0)) throw InputError("equality family needs a positive weight");

  EtaWeights x{spec.orientation == Orientation::case1 ? case1_eta(spec.n, spec.k)
                                                      : case2_eta(spec.n, spec.k),
               EdgeWeights(spec.n)};
  for (std::size_t i = 0; i < spec.n; ++i)
    for (std::size_t j = i + 1; j < spec.n; ++j)
      if (has_edge(spec.orientation, spec.n, spec.k, i, j)) x.r.set(i, j, spec.weight);
  return x;
}

bool Classification::contains(const EqualityMatch& m) const {
  return std::find(matches.begin(), matches.end(), m) != matches.end();
}

Classification classify_equality(const EtaWeights& x, double tol) {
  x.validate(std::max(tol, kDefaultTol));
  const std::size_t n = x.n();
  Classification out;
  out.permutation.resize(n);
  std::iota(out.permutation.begin(), out.permutation.end(), std::size_t{0});
  std::stable_sort(out.permutation.begin(), out.permutation.end(),
                   [&](std::size_t a, std::size_t b) { return x.eta[a] > x.eta[b]; });
  if (x.r.all_zero()) return out;

  std::vector<double> eta(n);
  for (std::size_t i = 0; i < n; ++i) eta[i] = x.eta[out.permutation[i]];
  const EdgeWeights r = x.r.permuted(out.permutation);

  for (Orientation o : {Orientation::case1, Orientation::case2}) {
    for (std::size_t k = 1; k < n; ++k) {
      const std::vector<double> expect = o == Orientation::case1 ? case1_eta(n, k) : case2_eta(n, k);
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) ok = std::abs(eta[i] - expect[i]) <= tol;
      if (!ok) continue;

      // Edge (1, n) carries the common weight in both orientations.
      const double w = r(0, n - 1);
      if (!(w > tol)) continue;
      const double wtol = tol * std::max(1.0, w);
      for (std::size_t i = 0; i < n && ok; ++i)
        for (std::size_t j = i + 1; j < n && ok; ++j) {
          const double want = has_edge(o, n, k, i, j) ? w : 0.0;
          ok = std::abs(r(i, j) - want) <= wtol;
        }
      if (ok) {
        out.matches.push_back({o, k});
        out.weight = w;
      }
    }
  }
  return out;
}

double lemma2_lhs(const MatrixFamily& f) {
  if (f.m() < 2) throw InputError("commutator inequality needs m >= 2");
  double lhs = 0.0;
  for (std::size_t a = 1; a < f.m(); ++a) lhs += commutator_norm_sq(f[0], f[a]);
  return lhs;
}

double lemma2_bound(const MatrixFamily& f, double tol) {
  if (f.m() < 2) throw InputError("commutator inequality needs m >= 2");
  const double norm1 = std::sqrt(f[0].frobenius_norm_sq());
  if (std::abs(norm1 - 1.0) > tol)
    throw InputError("hypothesis ||A_1|| = 1 violated: ||A_1|| = " + std::to_string(norm1));
  for (std::size_t a = 0; a < f.m(); ++a)
    for (std::size_t b = a + 1; b < f.m(); ++b) {
      const double scale = std::sqrt(f[a].frobenius_norm_sq() * f[b].frobenius_norm_sq());
      if (std::abs(frobenius_inner(f[a], f[b])) > tol * std::max(1.0, scale))
        throw InputError("hypothesis <A_alpha, A_beta> = 0 (alpha != beta) violated for alpha = " +
                         std::to_string(a + 1) + ", beta = " + std::to_string(b + 1));
    }

  std::vector<double> norms;
  for (std::size_t a = 1; a < f.m(); ++a) norms.push_back(f[a].frobenius_norm_sq());
  std::sort(norms.begin(), norms.end(), std::greater<>());
  return std::accumulate(norms.begin(), norms.end(), 0.0) + norms.front();
}

InequalityReport lemma2_check(const MatrixFamily& f, double tol) {
  InequalityReport rep;
  rep.bound = lemma2_bound(f, tol);
  rep.lhs = lemma2_lhs(f);
  rep.slack = rep.bound - rep.lhs;
  rep.is_equality = std::abs(rep.slack) <= kEqualityTol * std::max(1.0, rep.bound);
  return rep;
}

MatrixFamily construct_lemma2_equality(const Lemma2EqualityConfig& cfg) {
  if (cfg.n < 2 || cfg.m < 2) throw InputError("equality configuration needs n >= 2 and m >= 2");
  if (cfg.k < 1 || cfg.k > std::min(cfg.n - 1, cfg.m - 1))
    throw InputError("k must lie in 1..min(n-1, m-1), got " + std::to_string(cfg.k));

  const double k = double(cfg.k);
  std::vector<double> diag(cfg.n, 0.0);
  diag[0] = cfg.lambda_scale * std::sqrt(k) / std::sqrt(k + 1.0);
  for (std::size_t i = 1; i <= cfg.k; ++i) diag[i] = -cfg.lambda_scale / std::sqrt(k * (k + 1.0));

  std::vector<SymMatrix> members(cfg.m, SymMatrix(cfg.n));
  members[0] = SymMatrix::diagonal(diag);
  for (std::size_t i = 1; i <= cfg.k; ++i) members[i].set(0, i, cfg.mu_scale);
  return MatrixFamily(cfg.n, std::move(members));
}

EtaWeights lemma2_to_lemma1(const MatrixFamily& f, double tol) {
  const SymMatrix& a1 = f[0];
  if (!a1.is_diagonal(tol)) throw InputError("A_1 must be diagonal; rotate the family first");
  const std::size_t n = f.n();
  if (n < 2) throw InputError("reduction needs n >= 2");

  EtaWeights x{std::vector<double>(n), EdgeWeights(n)};
  for (std::size_t i = 0; i < n; ++i) x.eta[i] = a1(i, i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t a = 1; a < f.m(); ++a) s += f[a](i, j) * f[a](i, j);
      x.r.set(i, j, 2.0 * s);
    }
  x.validate(tol);
  return x;
}

}  // namespace lupinch
