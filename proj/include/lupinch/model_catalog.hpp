#pragma once

// Closed-form second fundamental forms of the rigidity models: Clifford
// hypersurfaces M_{r,n-r}, the Veronese surface, and totally geodesic
// spheres. All have parallel second fundamental form, so one point
// represents the whole submanifold.

#include <string>
#include <vector>

#include "lupinch/family.hpp"
#include "lupinch/lu_inequality.hpp"

namespace lupinch {

enum class ModelKind { clifford, veronese, totally_geodesic };

struct ModelSubmanifold {
  ModelKind kind;
  int r = 0;  // Clifford only
  int n = 0;  // intrinsic dimension
  int m = 1;  // codimension in S^{n+m}
  MatrixFamily family;
  double sigma = 0.0;  // closed-form squared norm of the second fundamental form

  std::string name() const;
};

/// A_1 = diag(sqrt((n-r)/r) x r, -sqrt(r/(n-r)) x (n-r)), A_2..A_m = 0.
ModelSubmanifold clifford_family(int r, int n, int m = 1);
/// n = 2; A_1 = diag(1,-1)/sqrt(3), A_2 = offdiag(1)/sqrt(3), rest zero.
ModelSubmanifold veronese_family(int m = 2);
ModelSubmanifold geodesic_family(int n, int m);

struct PinchingReport {
  double sigma = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double pinching = 0.0;  // sigma + lambda2
  int n = 0;
  bool saturates = false;
};

PinchingReport pinching_report(const MatrixFamily& f, int n, double tol = kDefaultTol);
PinchingReport pinching_report(const ModelSubmanifold& model, double tol = kDefaultTol);

/// R_alpha = n ||A_alpha||^2 + sum_beta Tr([A_alpha, A_beta]^2)
///           - sum_beta (Tr A_alpha A_beta)^2,
/// the right-hand side of Simons' identity; zero for parallel second
/// fundamental form.
std::vector<double> simons_residual(const MatrixFamily& f, int n);

/// Moves the largest-norm member to the front scaled to unit norm, then runs
/// lemma2_check. Throws InputError on an all-zero family.
InequalityReport lemma2_saturation(const MatrixFamily& f, double tol = kDefaultTol);
InequalityReport lemma2_saturation(const ModelSubmanifold& model, double tol = kDefaultTol);

}  // namespace lupinch
