// One line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>

#include "lupinch/random.hpp"
#include "lupinch/verify.hpp"

using namespace lupinch;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& details) {
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, title.c_str(), details.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

const CheckResult* find(const VerificationSummary& s, const std::string& name) {
  for (const auto& c : s.checks)
    if (c.name == name) return &c;
  return nullptr;
}

void criterion1() {
  RunConfig cfg;
  cfg.trials = 100000;
  cfg.n_range = {2, 12};
  cfg.equality_only = false;
  const auto t0 = std::chrono::steady_clock::now();
  const VerificationSummary s = verify_lemma1(cfg);
  const double secs = seconds_since(t0);
  const CheckResult* sweep = find(s, "lemma1_random_sweep");
  const bool pass = sweep && sweep->pass && s.trials_run == 100000 && s.min_slack >= -1e-10 && secs <= 30.0;
  report(1, "Lemma 1 soundness over 1e5 random inputs", pass,
         "min slack " + fmt(s.min_slack) + ", " + fmt(secs) + " s");
}

void criterion2() {
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t evaluated = 0;
  for (std::uint64_t i = 0; evaluated < 10000; ++i) {
    Rng rng(mix_seed(2024, i));
    const EdgeWeights r = random_weights(rng, uniform_index(rng, 2, 12));
    ++evaluated;
    const double lmax = sym_eigenvalues(weighted_laplacian(r)).front();
    worst = std::max(worst, lmax - lemma1_bound(r));
  }
  report(2, "Laplacian top eigenvalue never exceeds the bound", worst <= 1e-8,
         std::to_string(evaluated) + " weight sets, max excess " + fmt(worst));
}

void criterion3() {
  double worst = 0.0;
  std::size_t families = 0, round_trips = 0;
  for (std::size_t n = 2; n <= 10; ++n)
    for (std::size_t k = 1; k < n; ++k)
      for (Orientation o : {Orientation::case1, Orientation::case2}) {
        const EtaWeights x = construct_equality_eta({n, k, 1.0, o});
        worst = std::max(worst, std::abs(lemma1_check(x).slack));
        ++families;
        round_trips += classify_equality(x).contains({o, k});
      }
  report(3, "Lemma 1 equality families saturate and classify", worst <= 1e-12 && round_trips == families,
         std::to_string(families) + " families, max |slack| " + fmt(worst) + ", round trips " +
             std::to_string(round_trips));
}

void criterion4() {
  RunConfig cfg;
  cfg.trials = 10000;
  cfg.n_range = {2, 8};
  cfg.m_range = {2, 6};
  const VerificationSummary s = verify_lemma2(cfg);
  const CheckResult* sweep = find(s, "lemma2_random_sweep");

  double worst = 0.0;
  std::size_t configs = 0;
  for (std::size_t n = 2; n <= 8; ++n)
    for (std::size_t m = 2; m <= 6; ++m)
      for (std::size_t k = 1; k <= std::min(n - 1, m - 1); ++k) {
        const MatrixFamily f = construct_lemma2_equality({n, m, k, 1.0, 1.0});
        worst = std::max(worst, std::abs(lemma2_check(f).slack));
        ++configs;
      }
  const bool pass = sweep && sweep->pass && s.min_slack >= -1e-10 && worst <= 1e-12;
  report(4, "Lemma 2 soundness and equality saturation", pass,
         "min slack " + fmt(s.min_slack) + " over " + std::to_string(s.trials_run) + " families; " +
             std::to_string(configs) + " equality configs, max |slack| " + fmt(worst));
}

void criterion5() {
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Rng rng(mix_seed(555, i));
    const std::size_t n = uniform_index(rng, 2, 8), m = uniform_index(rng, 2, 6);
    const MatrixFamily f = random_orthogonal_family(rng, n, m).with_diagonal_first();
    const double a = lemma1_lhs(lemma2_to_lemma1(f));
    const double b = lemma2_lhs(f);
    if (b > 0.0) worst = std::max(worst, std::abs(a - b) / b);
    else worst = std::max(worst, std::abs(a));
  }
  report(5, "Reduction identity between the two forms", worst <= 1e-12,
         "1000 families, max relative error " + fmt(worst));
}

void criterion6() {
  double worst = 0.0, worst_simons = 0.0;
  for (int n = 2; n <= 10; ++n)
    for (int r = 1; r < n; ++r) {
      const PinchingReport p = pinching_report(clifford_family(r, n));
      worst = std::max({worst, std::abs(p.sigma - n), std::abs(p.lambda2), std::abs(p.pinching - n)});
      for (double v : simons_residual(clifford_family(r, n, 3).family, n)) worst_simons = std::max(worst_simons, std::abs(v));
    }
  const auto v = veronese_family(2);
  const PinchingReport pv = pinching_report(v);
  worst = std::max({worst, std::abs(pv.sigma - 4.0 / 3.0), std::abs(pv.lambda2 - 2.0 / 3.0), std::abs(pv.pinching - 2.0)});
  for (int m : {2, 4})
    for (double r : simons_residual(veronese_family(m).family, 2)) worst_simons = std::max(worst_simons, std::abs(r));
  for (double r : simons_residual(geodesic_family(4, 2).family, 4)) worst_simons = std::max(worst_simons, std::abs(r));
  report(6, "Catalog pinching values and Simons residuals", worst <= 1e-12 && worst_simons <= 1e-12,
         "max pinching error " + fmt(worst) + ", max Simons residual " + fmt(worst_simons));
}

void criterion7() {
  double worst = 0.0;
  bool holds = true;
  for (int n = 2; n <= 10; ++n)
    for (int r = 1; r < n; ++r) {
      const MainTheoremReport rep = main_theorem_check(clifford_family(r, n));
      worst = std::max({worst, std::abs(rep.gap), std::abs(rep.mu1 + n)});
      holds = holds && rep.holds;
    }
  const MainTheoremReport v = main_theorem_check(veronese_family(2));
  worst = std::max({worst, std::abs(v.gap), std::abs(v.mu1 + 4.0 / 3.0)});
  holds = holds && v.holds;
  report(7, "First eigenvalue saturates the bound on the models", holds && worst <= 1e-12,
         "max |gap| or mu1 error " + fmt(worst));
}

void criterion8() {
  const auto t0 = std::chrono::steady_clock::now();
  const int sizes[] = {16, 32, 64, 128};
  const auto rows = torus_convergence_study(sizes, 2.0);
  const double secs = seconds_since(t0);
  double worst = 0.0, min_order = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    worst = std::max(worst, std::abs(rows[i].smallest + 2.0));
    if (i > 0) min_order = std::min(min_order, rows[i].observed_order);
  }
  const bool pass = rows.size() == 4 && worst <= 1e-12 && min_order >= 1.9 && secs <= 60.0;
  report(8, "Flat torus grid ground state and second-eigenvalue convergence", pass,
         "max |smallest + 2| " + fmt(worst) + ", min order " + fmt(min_order) + ", " + fmt(secs) + " s");
}

void criterion9() {
  std::size_t spectra = 0;
  double worst = -std::numeric_limits<double>::infinity();
  bool finite = true;
  for (std::uint64_t i = 0; spectra < 100; ++i) {
    Rng rng(mix_seed(909, i));
    std::vector<double> ev(uniform_index(rng, 2, 8));
    for (auto& x : ev) x = std::exp(2.0 * std::normal_distribution<double>()(rng));
    std::sort(ev.rbegin(), ev.rend());
    const std::size_t r = uniform_index(rng, 1, ev.size() - 1);
    for (std::size_t j = 1; j < r; ++j) ev[j] = ev[0];
    if (!(ev[r] < ev[0])) continue;
    ++spectra;
    const RatioDecay d = top_eigenvalue_ratio_decay(ev, 10000);
    const double q = ev[r] / ev[0];
    for (std::size_t j = 0; j < d.ratios.size(); ++j) {
      finite = finite && std::isfinite(d.ratios[j]);
      const double cap = std::pow(q, double(j + 2));
      worst = std::max(worst, d.ratios[j] - cap * (1 + 1e-12));
    }
  }
  report(9, "Top-eigenvalue ratio decay up to p = 1e4", finite && worst <= 0.0,
         std::to_string(spectra) + " spectra, finite " + (finite ? "yes" : "no") + ", max excess " + fmt(worst));
}

bool run_cli(const std::string& cmd, std::string& out, int& status) {
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return false;
  std::array<char, 4096> buf;
  out.clear();
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int raw = ::pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return true;
}

void criterion10() {
  const std::string cmd = std::string("\"") + LUPINCH_CLI + "\" report --seed 42 --threads 1 --format json";
  std::string a, b;
  int sa = -1, sb = -1;
  const bool ran = run_cli(cmd, a, sa) && run_cli(cmd, b, sb);
  const bool pass = ran && sa == 0 && sb == 0 && !a.empty() && a == b;
  report(10, "Report is byte-identical across runs", pass,
         std::to_string(a.size()) + " bytes, exit codes " + std::to_string(sa) + "/" + std::to_string(sb));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
