#include "lupinch/model_catalog.hpp"

#include <algorithm>
#include <cmath>

namespace lupinch {

std::string ModelSubmanifold::name() const {
  switch (kind) {
    case ModelKind::clifford:
      return "clifford(r=" + std::to_string(r) + ",n=" + std::to_string(n) + ",m=" + std::to_string(m) + ")";
    case ModelKind::veronese:
      return "veronese(m=" + std::to_string(m) + ")";
    case ModelKind::totally_geodesic:
      break;
  }
  return "geodesic(n=" + std::to_string(n) + ",m=" + std::to_string(m) + ")";
}

ModelSubmanifold clifford_family(int r, int n, int m) {
  if (n < 2) throw InputError("Clifford hypersurface needs n >= 2");
  if (r < 1 || r > n - 1) throw InputError("Clifford hypersurface needs 1 <= r <= n-1");
  if (m < 1) throw InputError("codimension m must be >= 1");
  std::vector<double> diag(static_cast<std::size_t>(n));
  const double plus = std::sqrt(double(n - r) / double(r));
  const double minus = -std::sqrt(double(r) / double(n - r));
  for (int i = 0; i < n; ++i) diag[std::size_t(i)] = i < r ? plus : minus;
  MatrixFamily fam(std::size_t(n), {SymMatrix::diagonal(diag)});
  return {ModelKind::clifford, r, n, m, fam.padded(std::size_t(m)), double(n)};
}

ModelSubmanifold veronese_family(int m) {
  if (m < 2) throw InputError("Veronese surface needs codimension m >= 2");
  const double s = 1.0 / std::sqrt(3.0);
  const SymMatrix diag = SymMatrix::from_rows({{s, 0.0}, {0.0, -s}});
  const SymMatrix off = SymMatrix::from_rows({{0.0, s}, {s, 0.0}});
  MatrixFamily fam(2, {diag, off});
  return {ModelKind::veronese, 0, 2, m, fam.padded(std::size_t(m)), 4.0 / 3.0};
}

ModelSubmanifold geodesic_family(int n, int m) {
  if (n < 1 || m < 1) throw InputError("totally geodesic model needs n >= 1 and m >= 1");
  return {ModelKind::totally_geodesic, 0, n, m, MatrixFamily::zeros(std::size_t(n), std::size_t(m)), 0.0};
}

PinchingReport pinching_report(const MatrixFamily& f, int n, double tol) {
  const FundamentalMatrix s(f);
  PinchingReport rep;
  rep.sigma = s.sigma();
  rep.lambda1 = s.lambda1();
  rep.lambda2 = s.lambda2();
  rep.pinching = rep.sigma + rep.lambda2;
  rep.n = n;
  rep.saturates = rep.sigma > tol && std::abs(rep.pinching - double(n)) <= tol;
  return rep;
}

PinchingReport pinching_report(const ModelSubmanifold& model, double tol) {
  return pinching_report(model.family, model.n, tol);
}

std::vector<double> simons_residual(const MatrixFamily& f, int n) {
  std::vector<double> out(f.m());
  for (std::size_t a = 0; a < f.m(); ++a) {
    double commutators = 0.0;  // sum Tr(C^2) = -sum ||C||^2 for antisymmetric C
    double grams = 0.0;
    for (std::size_t b = 0; b < f.m(); ++b) {
      commutators -= commutator_norm_sq(f[a], f[b]);
      const double g = frobenius_inner(f[a], f[b]);
      grams += g * g;
    }
    out[a] = double(n) * f[a].frobenius_norm_sq() + commutators - grams;
  }
  return out;
}

InequalityReport lemma2_saturation(const MatrixFamily& f, double tol) {
  std::vector<std::size_t> order(f.m());
  for (std::size_t a = 0; a < f.m(); ++a) order[a] = a;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return f[x].frobenius_norm_sq() > f[y].frobenius_norm_sq();
  });
  const double top = f[order.front()].frobenius_norm_sq();
  if (top == 0.0) throw InputError("lemma2_saturation needs a nonzero family member");

  std::vector<SymMatrix> members;
  members.reserve(f.m());
  members.push_back((1.0 / std::sqrt(top)) * f[order.front()]);
  for (std::size_t a = 1; a < f.m(); ++a) members.push_back(f[order[a]]);
  if (members.size() == 1) members.emplace_back(f.n());
  return lemma2_check(MatrixFamily(f.n(), std::move(members)), tol);
}

InequalityReport lemma2_saturation(const ModelSubmanifold& model, double tol) {
  return lemma2_saturation(model.family, tol);
}

}  // namespace lupinch
