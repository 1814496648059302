#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lupinch/lu_inequality.hpp"
#include "lupinch/model_catalog.hpp"
#include "lupinch/random.hpp"

using namespace lupinch;

namespace {

EdgeWeights weights(std::size_t n, std::initializer_list<std::tuple<std::size_t, std::size_t, double>> e) {
  EdgeWeights r(n);
  for (auto [i, j, v] : e) r.set(i, j, v);
  return r;
}

// Projected gradient ascent on {sum eta = 0, |eta| = 1} from many starts.
double projected_gradient_max(const EdgeWeights& r, Rng& rng) {
  const std::size_t n = r.n();
  const SymMatrix l = weighted_laplacian(r);
  const double step = 0.25 / std::max(1e-300, 2.0 * r.sum());
  double best = 0.0;
  for (int start = 0; start < 8; ++start) {
    std::vector<double> eta = random_eta(rng, n);
    for (int it = 0; it < 20000; ++it) {
      std::vector<double> g(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g[i] += 2.0 * l(i, j) * eta[j];
      for (std::size_t i = 0; i < n; ++i) eta[i] += step * g[i];
      const double mean = std::accumulate(eta.begin(), eta.end(), 0.0) / double(n);
      double nrm = 0.0;
      for (auto& v : eta) {
        v -= mean;
        nrm += v * v;
      }
      nrm = std::sqrt(nrm);
      for (auto& v : eta) v /= nrm;
    }
    double val = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) val += (eta[i] - eta[j]) * (eta[i] - eta[j]) * r(i, j);
    best = std::max(best, val);
  }
  return best;
}

}  // namespace

TEST_CASE("lemma1_lhs examples") {
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(lemma1_lhs({{s, -s}, weights(2, {{0, 1, 1.0}})}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(lemma1_lhs(construct_equality_eta({4, 1, 1.0})) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(lemma1_lhs({{s, -s}, EdgeWeights(2)}) == 0.0);

  CHECK_THROWS_AS(lemma1_lhs({{1.0, 0.0}, EdgeWeights(2)}), InputError);
  CHECK_THROWS_AS(lemma1_lhs({{0.5, -0.5}, EdgeWeights(2)}), InputError);
  CHECK_THROWS_AS(lemma1_lhs({{s, -s}, EdgeWeights(3)}), InputError);
  CHECK_THROWS_AS(lemma1_lhs({{1.0}, EdgeWeights(1)}), InputError);
}

TEST_CASE("lemma1_bound examples") {
  CHECK(lemma1_bound(weights(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}})) == 4.0);
  CHECK(lemma1_bound(EdgeWeights(5)) == 0.0);
  CHECK(lemma1_bound(weights(3, {{0, 1, 3}})) == 6.0);
  CHECK_THROWS_AS(lemma1_bound(weights(3, {{0, 1, -1}})), InputError);
  CHECK_THROWS_AS(EdgeWeights(3).set(1, 1, 1.0), InputError);
}

TEST_CASE("lemma1_check examples") {
  const InequalityReport eq = lemma1_check(construct_equality_eta({4, 1, 1.0}));
  CHECK(std::abs(eq.slack) <= 1e-14);
  CHECK(eq.is_equality);

  const double a = 2.0 / std::sqrt(6.0), b = -1.0 / std::sqrt(6.0);
  const InequalityReport rep = lemma1_check({{a, b, b}, weights(3, {{1, 2, 1.0}})});
  CHECK(rep.lhs == 0.0);
  CHECK(rep.bound == 2.0);
  CHECK(rep.slack == 2.0);
  CHECK_FALSE(rep.is_equality);
}

TEST_CASE("weighted_laplacian") {
  const SymMatrix l2 = weighted_laplacian(weights(2, {{0, 1, 1.0}}));
  CHECK(l2 == SymMatrix::from_rows({{1, -1}, {-1, 1}}));
  CHECK(weighted_laplacian(EdgeWeights(4)) == SymMatrix(4));

  // Star on three vertices: det(L - x I) = -x (x - 1) (x - 3).
  const auto ev = sym_eigenvalues(weighted_laplacian(weights(3, {{0, 1, 1.0}, {0, 2, 1.0}})));
  CHECK(ev[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(ev[2]) <= 1e-14);
}

TEST_CASE("Laplacian quadratic form equals the left-hand side") {
  Rng rng(31);
  for (int t = 0; t < 500; ++t) {
    const EtaWeights x = random_eta_weights(rng, uniform_index(rng, 2, 12));
    const SymMatrix l = weighted_laplacian(x.r);
    double quad = 0.0;
    for (std::size_t i = 0; i < x.n(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < x.n(); ++j) row += l(i, j);
      CHECK(std::abs(row) <= 1e-12 * std::max(1.0, x.r.sum()));
      for (std::size_t j = 0; j < x.n(); ++j) quad += x.eta[i] * l(i, j) * x.eta[j];
    }
    const double lhs = lemma1_lhs(x);
    CHECK(std::abs(quad - lhs) <= 1e-12 * std::max(lhs, 1e-300) + 1e-15 * x.r.sum());
    CHECK(sym_eigenvalues(l).back() >= -1e-12 * std::max(1.0, x.r.sum()));
  }
}

TEST_CASE("lemma1_maximize") {
  SUBCASE("n = 2") {
    const StationaryPoint sp = lemma1_maximize(weights(2, {{0, 1, 1.0}}));
    CHECK(sp.critical_value == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(std::abs(std::abs(sp.eta[0]) - 1.0 / std::sqrt(2.0)) <= 1e-15);
    CHECK(sp.eta[0] == doctest::Approx(-sp.eta[1]).epsilon(1e-15));
    CHECK(sp.lagrange_mu == -sp.critical_value);
  }
  SUBCASE("n = 4 equality weights reach 4 at the stated eta") {
    const EtaWeights x = construct_equality_eta({4, 1, 1.0});
    const StationaryPoint sp = lemma1_maximize(x.r);
    CHECK(sp.critical_value == doctest::Approx(4.0).epsilon(1e-14));
    const double sign = sp.eta[0] > 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(sign * sp.eta[i] - x.eta[i]) <= 1e-12);
  }
  SUBCASE("all-zero weights") { CHECK_THROWS_AS(lemma1_maximize(EdgeWeights(3)), InputError); }
}

TEST_CASE("lemma1_maximize agrees with projected gradient ascent") {
  Rng rng(32);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = uniform_index(rng, 2, 7);
    EdgeWeights r = random_weights(rng, n);
    if (r.all_zero()) continue;
    r = r.scaled(1.0 / r.max());
    const StationaryPoint sp = lemma1_maximize(r);
    const double ascent = projected_gradient_max(r, rng);
    CHECK(ascent <= sp.critical_value + 1e-8);
    CHECK(std::abs(ascent - sp.critical_value) <= 1e-8);
    CHECK(sp.critical_value <= lemma1_bound(r) + 1e-8);
  }
}

TEST_CASE("stationarity at the maximizer") {
  Rng rng(33);
  for (int t = 0; t < 500; ++t) {
    const EdgeWeights r = random_weights(rng, uniform_index(rng, 2, 12));
    if (r.all_zero()) continue;
    const StationaryPoint sp = lemma1_maximize(r);
    const SymMatrix l = weighted_laplacian(r);
    double res = 0.0;
    for (std::size_t i = 0; i < r.n(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < r.n(); ++j) row += l(i, j) * sp.eta[j];
      res += std::pow(row - sp.critical_value * sp.eta[i], 2);
    }
    const double scale = std::max(1.0, sp.critical_value);
    CHECK(std::sqrt(res) <= 1e-10 * scale);
    CHECK(std::abs(sp.lagrange_lambda) <= 1e-12 * scale);
    CHECK(sp.critical_value == doctest::Approx(lemma1_lhs({sp.eta, r})).epsilon(1e-10));
    CHECK(sp.critical_value <= lemma1_bound(r) + 1e-8);
  }
}

TEST_CASE("construct_equality_eta") {
  SUBCASE("n = 4, k = 1") {
    const EtaWeights x = construct_equality_eta({4, 1, 1.0});
    CHECK(x.eta[0] == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
    for (std::size_t i = 1; i < 4; ++i)
      CHECK(x.eta[i] == doctest::Approx(-1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-15));
    CHECK(x.r(0, 1) == 1.0);
    CHECK(x.r(0, 3) == 1.0);
    CHECK(x.r(1, 2) == 0.0);
  }
  SUBCASE("n = 4, k = 3") {
    const EtaWeights x = construct_equality_eta({4, 3, 1.0});
    CHECK(x.eta[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(x.eta[1] == 0.0);
    CHECK(x.eta[2] == 0.0);
    CHECK(x.eta[3] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(x.r.sum() == 1.0);
    CHECK(x.r(0, 3) == 1.0);
  }
  SUBCASE("case2 is the reversal-negation of case1") {
    for (std::size_t n = 2; n <= 8; ++n)
      for (std::size_t k = 1; k < n; ++k) {
        const EtaWeights a = construct_equality_eta({n, k, 2.5, Orientation::case1});
        const EtaWeights b = construct_equality_eta({n, k, 2.5, Orientation::case2});
        for (std::size_t i = 0; i < n; ++i) {
          CHECK(b.eta[i] == -a.eta[n - 1 - i]);
          for (std::size_t j = i + 1; j < n; ++j) CHECK(b.r(i, j) == a.r(n - 1 - j, n - 1 - i));
        }
      }
  }
  CHECK_THROWS_AS(construct_equality_eta({4, 0, 1.0}), InputError);
  CHECK_THROWS_AS(construct_equality_eta({4, 4, 1.0}), InputError);
  CHECK_THROWS_AS(construct_equality_eta({4, 2, 0.0}), InputError);
}

TEST_CASE("every equality family saturates and round-trips") {
  for (std::size_t n = 2; n <= 10; ++n)
    for (std::size_t k = 1; k < n; ++k)
      for (Orientation o : {Orientation::case1, Orientation::case2})
        for (double w : {1.0, 7.5}) {
          const EtaWeights x = construct_equality_eta({n, k, w, o});
          CHECK_NOTHROW(x.validate(1e-14));
          const InequalityReport rep = lemma1_check(x);
          CHECK(std::abs(rep.slack) <= 1e-12);
          CHECK(rep.is_equality);
          const Classification c = classify_equality(x);
          CHECK(c.contains({o, k}));
          CHECK(c.weight == doctest::Approx(w).epsilon(1e-15));
        }
}

TEST_CASE("classify_equality") {
  SUBCASE("round trip example") {
    const Classification c = classify_equality(construct_equality_eta({5, 2, 3.0}));
    CHECK(c.contains({Orientation::case1, 2}));
    CHECK(c.weight == 3.0);
  }
  SUBCASE("shuffled input is sorted and the permutation recorded") {
    Rng rng(34);
    const EtaWeights x = construct_equality_eta({6, 2, 1.5, Orientation::case2});
    std::vector<std::size_t> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    EtaWeights y{std::vector<double>(6), x.r.permuted(perm)};
    for (std::size_t i = 0; i < 6; ++i) y.eta[i] = x.eta[perm[i]];
    const Classification c = classify_equality(y);
    CHECK(c.contains({Orientation::case2, 2}));
    for (std::size_t i = 0; i < 6; ++i) CHECK(y.eta[c.permutation[i]] == x.eta[i]);
  }
  SUBCASE("generic random input is not an equality") {
    Rng rng(35);
    for (int t = 0; t < 2000; ++t)
      CHECK_FALSE(classify_equality(random_eta_weights(rng, uniform_index(rng, 3, 10))).is_equality());
  }
  SUBCASE("all-zero weights") {
    EtaWeights x = construct_equality_eta({4, 1, 1.0});
    x.r = EdgeWeights(4);
    CHECK_FALSE(classify_equality(x).is_equality());
  }
  SUBCASE("coincident families are all reported") {
    const Classification c = classify_equality(construct_equality_eta({5, 4, 1.0}));
    CHECK(c.contains({Orientation::case1, 4}));
    CHECK(c.contains({Orientation::case2, 4}));
  }
}

TEST_CASE("scale equivariance") {
  Rng rng(36);
  for (int t = 0; t < 300; ++t) {
    EtaWeights x = random_eta_weights(rng, uniform_index(rng, 2, 10));
    const InequalityReport a = lemma1_check(x);
    x.r = x.r.scaled(2.0);
    const InequalityReport b = lemma1_check(x);
    CHECK(b.lhs == doctest::Approx(2.0 * a.lhs).epsilon(1e-14));
    CHECK(b.bound == doctest::Approx(2.0 * a.bound).epsilon(1e-14));
  }
  for (double s : {1e-6, 0.3, 40.0, 1e6}) {
    EtaWeights x = construct_equality_eta({7, 3, 1.0});
    x.r = x.r.scaled(s);
    CHECK(lemma1_check(x).is_equality);
  }
}

TEST_CASE("lemma2_lhs and lemma2_bound") {
  const double s = 1.0 / std::sqrt(2.0);
  const MatrixFamily veronese_normalized(
      2, {SymMatrix::from_rows({{s, 0}, {0, -s}}),
          SymMatrix::from_rows({{0, 1 / std::sqrt(3.0)}, {1 / std::sqrt(3.0), 0}})});
  CHECK(lemma2_lhs(veronese_normalized) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(lemma2_bound(veronese_normalized) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(std::abs(lemma2_check(veronese_normalized).slack) <= 1e-14);

  const MatrixFamily clifford = clifford_family(1, 2, 3).family;
  const MatrixFamily unit(2, {s * clifford[0], clifford[1], clifford[2]});
  CHECK(lemma2_lhs(unit) == 0.0);
  CHECK(lemma2_bound(unit) == 0.0);
  CHECK(lemma2_check(unit).slack == 0.0);

  const auto cfg = construct_lemma2_equality({3, 3, 2, 1.0, 1.0});
  CHECK(std::abs(lemma2_lhs(cfg) - lemma2_bound(cfg)) <= 1e-14);

  CHECK_THROWS_AS(lemma2_lhs(clifford_family(1, 2).family), InputError);
  CHECK_THROWS_WITH_AS(lemma2_bound(clifford_family(1, 2, 2).family), doctest::Contains("||A_1||"),
                       InputError);
  const MatrixFamily skew(2, {SymMatrix::from_rows({{s, 0}, {0, -s}}), SymMatrix::from_rows({{1, 0}, {0, 0}})});
  CHECK_THROWS_WITH_AS(lemma2_bound(skew), doctest::Contains("<A_alpha, A_beta>"), InputError);
}

TEST_CASE("lemma2 holds on random orthogonal families") {
  Rng rng(37);
  for (int t = 0; t < 2000; ++t) {
    const MatrixFamily f = random_orthogonal_family(rng, uniform_index(rng, 2, 8), uniform_index(rng, 2, 6));
    const InequalityReport rep = lemma2_check(f);
    CHECK(rep.slack >= -1e-10 * std::max(1.0, rep.bound));
  }
}

TEST_CASE("construct_lemma2_equality") {
  SUBCASE("n = 2, k = 1") {
    const double mu = 0.7;
    const MatrixFamily f = construct_lemma2_equality({2, 2, 1, 1.0, mu});
    CHECK(f[0](0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(f[0](1, 1) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(f[1](0, 1) == mu);
    CHECK(f[1](0, 0) == 0.0);
    CHECK(lemma2_check(f).is_equality);
  }
  SUBCASE("n = 5, m = 4, k = 3") {
    const MatrixFamily f = construct_lemma2_equality({5, 4, 3, 1.0, 1.0});
    CHECK(f.m() == 4);
    for (std::size_t a = 1; a < 4; ++a) {
      int nonzero = 0;
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) nonzero += f[a](i, j) != 0.0;
      CHECK(nonzero == 2);
    }
    CHECK(std::abs(lemma2_check(f).slack) <= 1e-12);
  }
  SUBCASE("mu = 0") {
    const MatrixFamily f = construct_lemma2_equality({4, 3, 2, 1.0, 0.0});
    CHECK(lemma2_lhs(f) == 0.0);
    CHECK(lemma2_bound(f) == 0.0);
  }
  SUBCASE("all admissible configurations saturate and are exactly orthogonal") {
    for (std::size_t n = 2; n <= 8; ++n)
      for (std::size_t m = 2; m <= 6; ++m)
        for (std::size_t k = 1; k <= std::min(n - 1, m - 1); ++k)
          for (double mu : {1.0, 0.37}) {
            const MatrixFamily f = construct_lemma2_equality({n, m, k, 1.0, mu});
            CHECK(f.is_orthogonal(0.0));
            CHECK(f.is_trace_free(1e-15));
            CHECK(std::abs(f[0].frobenius_norm_sq() - 1.0) <= 1e-15);
            CHECK(std::abs(lemma2_check(f).slack) <= 1e-12);
          }
  }
  CHECK_THROWS_AS(construct_lemma2_equality({4, 3, 3, 1.0, 1.0}), InputError);
  CHECK_THROWS_AS(construct_lemma2_equality({3, 5, 3, 1.0, 1.0}), InputError);
  CHECK_THROWS_AS(construct_lemma2_equality({3, 3, 0, 1.0, 1.0}), InputError);
}

TEST_CASE("lemma2_to_lemma1") {
  SUBCASE("normalized Veronese") {
    const MatrixFamily f = construct_lemma2_equality({2, 2, 1, 1.0, 1.0 / std::sqrt(3.0)});
    const EtaWeights x = lemma2_to_lemma1(f);
    CHECK(x.eta[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(x.eta[1] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(x.r(0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(lemma1_lhs(x) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(lemma1_lhs(x) == doctest::Approx(lemma2_lhs(f)).epsilon(1e-14));
  }
  SUBCASE("diagonal members give zero weights") {
    const double d1[] = {1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0};
    const double d2[] = {0.1, 0.2, -0.3};
    const MatrixFamily f(3, {SymMatrix::diagonal(d1), SymMatrix::diagonal(d2)});
    const EtaWeights x = lemma2_to_lemma1(f, 1.0);
    CHECK(x.r.all_zero());
    CHECK(lemma1_lhs(x) == 0.0);
  }
  SUBCASE("reduction identity on random families") {
    Rng rng(38);
    for (int t = 0; t < 500; ++t) {
      const MatrixFamily f =
          random_orthogonal_family(rng, uniform_index(rng, 2, 8), uniform_index(rng, 2, 6)).with_diagonal_first();
      const double a = lemma1_lhs(lemma2_to_lemma1(f));
      const double b = lemma2_lhs(f);
      CHECK(std::abs(a - b) <= 1e-12 * std::max(b, 1e-300));
    }
  }
  SUBCASE("Lemma 2 k maps to Lemma 1 k' = n - k") {
    for (std::size_t n = 2; n <= 9; ++n)
      for (std::size_t k = 1; k < n; ++k) {
        const MatrixFamily f = construct_lemma2_equality({n, k + 1, k, 1.0, 0.8});
        const Classification c = classify_equality(lemma2_to_lemma1(f));
        CHECK(c.contains({Orientation::case1, n - k}));
        CHECK(c.weight == doctest::Approx(2 * 0.8 * 0.8).epsilon(1e-15));
      }
  }
  SUBCASE("non-diagonal A_1") {
    const MatrixFamily f = veronese_family().family;
    const MatrixFamily swapped(2, {f[1], f[0]});
    CHECK_THROWS_AS(lemma2_to_lemma1(swapped), InputError);
  }
}
