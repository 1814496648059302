#include "lupinch/family.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace lupinch {

MatrixFamily::MatrixFamily(std::size_t n, std::vector<SymMatrix> members)
    : n_(n), members_(std::move(members)) {
  if (n == 0) throw InputError("family dimension n must be >= 1");
  if (members_.empty()) throw InputError("family must have at least one member");
  for (const auto& a : members_)
    if (a.dim() != n) throw InputError("family member has dimension " + std::to_string(a.dim()) +
                                       ", expected " + std::to_string(n));
}

MatrixFamily MatrixFamily::zeros(std::size_t n, std::size_t m) {
  return MatrixFamily(n, std::vector<SymMatrix>(m, SymMatrix(n)));
}

bool MatrixFamily::is_trace_free(double tol) const {
  return std::all_of(members_.begin(), members_.end(),
                     [tol](const SymMatrix& a) { return std::abs(a.trace()) <= tol; });
}

bool MatrixFamily::is_orthogonal(double tol) const {
  for (std::size_t a = 0; a < m(); ++a)
    for (std::size_t b = a + 1; b < m(); ++b)
      if (std::abs(frobenius_inner(members_[a], members_[b])) > tol) return false;
  return true;
}

MatrixFamily MatrixFamily::conjugated(const Matrix& q) const {
  std::vector<SymMatrix> out;
  out.reserve(m());
  for (const auto& a : members_) out.push_back(congruence(q, a));
  return MatrixFamily(n_, std::move(out));
}

MatrixFamily MatrixFamily::mixed(const Matrix& q) const {
  if (q.dim() != m()) throw InputError("normal-frame rotation must be m x m");
  std::vector<SymMatrix> out(m(), SymMatrix(n_));
  for (std::size_t a = 0; a < m(); ++a)
    for (std::size_t b = 0; b < m(); ++b)
      if (q(a, b) != 0.0) out[a] += q(a, b) * members_[b];
  return MatrixFamily(n_, std::move(out));
}

MatrixFamily MatrixFamily::padded(std::size_t m_target) const {
  if (m_target < m()) throw InputError("cannot pad a family to fewer members");
  std::vector<SymMatrix> out = members_;
  out.resize(m_target, SymMatrix(n_));
  return MatrixFamily(n_, std::move(out));
}

MatrixFamily MatrixFamily::with_diagonal_first() const {
  const EigenDecomposition eig = sym_eigen(members_.front());
  // Rows of Q^T V^T: conjugating by V^T maps A_1 to diag(eigenvalues).
  const Matrix vt = eig.vectors.transposed();
  std::vector<SymMatrix> out;
  out.reserve(m());
  out.push_back(SymMatrix::diagonal(eig.values));
  for (std::size_t a = 1; a < m(); ++a) out.push_back(congruence(vt, members_[a]));
  return MatrixFamily(n_, std::move(out));
}

nlohmann::json to_json(const MatrixFamily& f) {
  nlohmann::json mats = nlohmann::json::array();
  for (const auto& a : f.members())
    mats.push_back(std::vector<double>(a.upper().begin(), a.upper().end()));
  return {{"n", f.n()}, {"m", f.m()}, {"matrices", std::move(mats)}};
}

MatrixFamily family_from_json(const nlohmann::json& doc) {
  try {
    const auto n = doc.at("n").get<std::size_t>();
    const auto m = doc.at("m").get<std::size_t>();
    const auto& mats = doc.at("matrices");
    if (!mats.is_array() || mats.size() != m)
      throw InputError("\"matrices\" must hold exactly m = " + std::to_string(m) + " entries");
    std::vector<SymMatrix> members;
    members.reserve(m);
    for (const auto& upper : mats) members.push_back(SymMatrix::from_upper(n, upper.get<std::vector<double>>()));
    return MatrixFamily(n, std::move(members));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed family document: ") + e.what());
  }
}

FundamentalMatrix::FundamentalMatrix(const MatrixFamily& f) : gram_(f.m()), sigma_(0.0) {
  for (std::size_t a = 0; a < f.m(); ++a)
    for (std::size_t b = a; b < f.m(); ++b) gram_.set(a, b, frobenius_inner(f[a], f[b]));
  sigma_ = gram_.trace();
  eigenvalues_ = sym_eigenvalues(gram_);
}

double FundamentalMatrix::lambda(std::size_t i) const {
  if (i == 0) throw InputError("eigenvalue index is 1-based");
  return i <= eigenvalues_.size() ? eigenvalues_[i - 1] : 0.0;
}

std::vector<double> FundamentalMatrix::padded_eigenvalues(std::size_t codim) const {
  std::vector<double> out = eigenvalues_;
  if (out.size() < codim) out.resize(codim, 0.0);
  return out;
}

PowerTrace power_trace(std::span<const double> eigenvalues, int p) {
  if (p < 2) throw InputError("power trace needs p >= 2, got " + std::to_string(p));
  PowerTrace out;
  out.p = p;
  double top = 0.0;
  for (double l : eigenvalues) top = std::max(top, l);
  if (top == 0.0) {
    out.log_f_p = -std::numeric_limits<double>::infinity();
    return out;
  }
  double scaled = 0.0;  // sum (lambda / lambda_1)^p, in [1, m]
  for (double l : eigenvalues)
    if (l > 0.0) scaled += std::pow(l / top, p);
  out.f_p = std::pow(top, p) * scaled;
  out.log_f_p = p * std::log(top) + std::log(scaled);
  out.g_p = top * std::pow(scaled, 1.0 / p);
  return out;
}

PowerTrace power_trace(const FundamentalMatrix& s, int p) { return power_trace(s.eigenvalues(), p); }

RatioDecay top_eigenvalue_ratio_decay(std::span<const double> eigenvalues, int p_max, double tol) {
  std::vector<double> lam;
  for (double l : eigenvalues) lam.push_back(std::max(l, 0.0));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  if (lam.empty() || lam.front() == 0.0)
    throw InputError("ratio decay is undefined for a zero fundamental matrix");

  const double top = lam.front();
  RatioDecay out;
  while (out.multiplicity < lam.size() && top - lam[out.multiplicity] <= tol * std::max(1.0, top))
    ++out.multiplicity;
  if (out.multiplicity == lam.size()) return out;

  const double q = lam[out.multiplicity] / top;
  for (int p = 2; p <= p_max; ++p) {
    double scaled = 0.0;
    for (double l : lam) scaled += std::pow(l / top, p);
    out.ratios.push_back(std::pow(q, p) / scaled);
  }
  return out;
}

RatioDecay top_eigenvalue_ratio_decay(const FundamentalMatrix& s, int p_max, double tol) {
  return top_eigenvalue_ratio_decay(s.eigenvalues(), p_max, tol);
}

}  // namespace lupinch
