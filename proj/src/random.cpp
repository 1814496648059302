#include "lupinch/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lupinch {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

namespace {

double normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }
double uniform(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

// Projects onto the zero-sum hyperplane and normalizes; false if degenerate.
bool center_and_normalize(std::vector<double>& v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
  for (double& x : v) x -= mean;
  const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  if (norm < 1e-8) return false;
  for (double& x : v) x /= norm;
  return true;
}

}  // namespace

std::vector<double> random_eta(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (;;) {
    const std::size_t kind = uniform_index(rng, 0, 3);
    if (kind <= 1) {
      for (double& x : v) x = normal(rng);
    } else if (kind == 2) {
      const std::size_t k = uniform_index(rng, 1, n - 1);
      const auto base = construct_equality_eta({n, k, 1.0, Orientation::case1}).eta;
      const double eps = std::pow(10.0, -double(uniform_index(rng, 1, 6)));
      for (std::size_t i = 0; i < n; ++i) v[i] = base[i] + eps * normal(rng);
      std::shuffle(v.begin(), v.end(), rng);
    } else {
      std::fill(v.begin(), v.end(), 0.0);
      const std::size_t i = uniform_index(rng, 0, n - 1);
      std::size_t j = uniform_index(rng, 0, n - 2);
      if (j >= i) ++j;
      v[i] = 1.0 + 0.1 * normal(rng);
      v[j] = -1.0 + 0.1 * normal(rng);
    }
    if (center_and_normalize(v)) return v;
  }
}

EdgeWeights random_weights(Rng& rng, std::size_t n) {
  EdgeWeights r(n);
  const std::size_t kind = uniform_index(rng, 0, 4);
  switch (kind) {
    case 0:  // dense uniform
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) r.set(i, j, uniform(rng));
      break;
    case 1: {  // sparse Bernoulli
      const double p = 0.05 + 0.5 * uniform(rng);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (uniform(rng) < p) r.set(i, j, uniform(rng));
      break;
    }
    case 2: {  // star around one vertex, equal or uneven weights
      const std::size_t c = uniform_index(rng, 0, n - 1);
      const bool equal = uniform(rng) < 0.5;
      const double w = 0.5 + uniform(rng);
      for (std::size_t j = 0; j < n; ++j)
        if (j != c && uniform(rng) < 0.8) r.set(c, j, equal ? w : uniform(rng));
      break;
    }
    case 3: {  // single edge
      const std::size_t i = uniform_index(rng, 0, n - 1);
      std::size_t j = uniform_index(rng, 0, n - 2);
      if (j >= i) ++j;
      r.set(i, j, 0.1 + 10.0 * uniform(rng));
      break;
    }
    default:  // heavy-tailed
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          const double e = std::exponential_distribution<double>(1.0)(rng);
          r.set(i, j, e * e * e);
        }
      break;
  }
  return r;
}

EtaWeights random_eta_weights(Rng& rng, std::size_t n) {
  std::vector<double> eta = random_eta(rng, n);
  return {std::move(eta), random_weights(rng, n)};
}

SymMatrix random_symmetric(Rng& rng, std::size_t n) {
  SymMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a.set(i, j, normal(rng));
  return a;
}

Matrix random_orthogonal(Rng& rng, std::size_t n) {
  Matrix q(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = normal(rng);
  // Modified Gram-Schmidt on the rows, twice for orthogonality to rounding.
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < i; ++k) {
        double d = 0.0;
        for (std::size_t j = 0; j < n; ++j) d += q(i, j) * q(k, j);
        for (std::size_t j = 0; j < n; ++j) q(i, j) -= d * q(k, j);
      }
      double norm = 0.0;
      for (std::size_t j = 0; j < n; ++j) norm += q(i, j) * q(i, j);
      norm = std::sqrt(norm);
      for (std::size_t j = 0; j < n; ++j) q(i, j) /= norm;
    }
  return q;
}

MatrixFamily random_orthogonal_family(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<SymMatrix> members;
  members.reserve(m);
  for (std::size_t a = 0; a < m; ++a) {
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) s.set(i, j, normal(rng));
    const double shift = s.trace() / double(n);
    for (std::size_t i = 0; i < n; ++i) s.set(i, i, s(i, i) - shift);
    members.push_back(std::exp(0.5 * normal(rng)) * s);
  }
  // Gram-Schmidt in the Frobenius inner product (two passes); only A_1 is
  // normalized so the remaining norms stay random.
  std::vector<double> original(m);
  for (std::size_t a = 0; a < m; ++a) original[a] = members[a].frobenius_norm_sq();
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < a; ++b) {
        const double nb = members[b].frobenius_norm_sq();
        if (nb == 0.0) continue;
        members[a] -= (frobenius_inner(members[a], members[b]) / nb) * members[b];
      }
      if (members[a].frobenius_norm_sq() <= 1e-20 * original[a]) members[a] = SymMatrix(n);
    }
  members[0] *= 1.0 / std::sqrt(members[0].frobenius_norm_sq());
  return MatrixFamily(n, std::move(members));
}

}  // namespace lupinch
