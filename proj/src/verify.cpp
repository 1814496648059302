#include "lupinch/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "lupinch/random.hpp"

namespace lupinch {

using nlohmann::json;

namespace {

// Checks that compare against an exact closed form use the pinned value or
// the configured tolerance, whichever is tighter.
double exact_threshold(double pinned, const RunConfig& cfg) { return std::min(pinned, cfg.tol); }

bool slack_fails(const TrialRecord& t, double tol) {
  return !std::isfinite(t.slack) || t.slack < -tol * std::max(1.0, t.bound);
}

// Stream offsets so the sweeps of one run draw independent trial seeds.
constexpr std::uint64_t kDominanceStream = 0x6a09e667f3bcc908ULL;
constexpr std::uint64_t kDecayStream = 0xbb67ae8584caa73bULL;

struct SweepOutcome {
  std::size_t failures = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  std::uint64_t min_seed = 0;
  std::size_t min_index = 0;
  std::vector<TrialRecord> records;
};

// Runs trial(token) for token = mix_seed(seed, i), i < trials, over a worker
// pool. Only order-independent reductions are used; ties on min_slack go to
// the lowest index, so any thread count yields the same outcome.
template <class Trial>
SweepOutcome run_sweep(std::size_t trials, std::uint64_t seed, unsigned threads, double tol, bool keep,
                       Trial trial) {
  threads = std::max(1u, threads);
  std::vector<SweepOutcome> partial(threads);
  std::vector<TrialRecord> records(keep ? trials : 0);
  auto worker = [&](unsigned w) {
    SweepOutcome& out = partial[w];
    for (std::size_t i = w; i < trials; i += threads) {
      const TrialRecord rec = trial(mix_seed(seed, i));
      if (slack_fails(rec, tol)) ++out.failures;
      if (rec.slack < out.min_slack || (rec.slack == out.min_slack && i < out.min_index)) {
        out.min_slack = rec.slack;
        out.min_seed = rec.seed;
        out.min_index = i;
      }
      if (keep) records[i] = rec;
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  SweepOutcome total;
  for (const auto& p : partial) {
    total.failures += p.failures;
    if (p.min_slack < total.min_slack || (p.min_slack == total.min_slack && p.min_index < total.min_index)) {
      total.min_slack = p.min_slack;
      total.min_seed = p.min_seed;
      total.min_index = p.min_index;
    }
  }
  total.records = std::move(records);
  return total;
}

CheckResult sweep_check(std::string name, const SweepOutcome& s, std::size_t trials, double tol) {
  CheckResult c{std::move(name), s.failures == 0, json::object()};
  c.details["trials"] = trials;
  c.details["failures"] = s.failures;
  c.details["min_slack"] = s.min_slack;
  c.details["min_slack_seed"] = s.min_seed;
  c.details["tolerance"] = tol;
  return c;
}

void absorb(VerificationSummary& sum, const SweepOutcome& s, std::size_t trials) {
  sum.trials_run += trials;
  sum.failures += s.failures;
  if (sum.trials_run == trials || s.min_slack < sum.min_slack) {
    sum.min_slack = s.min_slack;
    sum.min_slack_seed = s.min_seed;
  }
}

void add_check(VerificationSummary& sum, CheckResult c) {
  if (!c.pass) ++sum.failures;
  sum.checks.push_back(std::move(c));
}

std::vector<std::size_t> k_values(const RunConfig& cfg, std::size_t k_max) {
  std::vector<std::size_t> ks;
  for (std::size_t k = 1; k <= k_max; ++k)
    if (!cfg.k || *cfg.k == k) ks.push_back(k);
  return ks;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void RunConfig::validate() const {
  if (trials == 0) throw InputError("trials must be >= 1");
  if (!(tol > 0.0)) throw InputError("tol must be > 0");
  if (n_range.lo < 2 || n_range.lo > n_range.hi) throw InputError("n range must be nonempty with n >= 2");
  if (m_range.lo < 1 || m_range.lo > m_range.hi) throw InputError("m range must be nonempty with m >= 1");
  if (threads == 0) throw InputError("threads must be >= 1");
}

double default_tolerance() {
  if (const char* env = std::getenv("LUPINCH_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) throw InputError("LUPINCH_TOL must be a positive number");
    return v;
  }
  return kDefaultTol;
}

// Lemma 1 --------------------------------------------------------------------

TrialRecord replay_lemma1_trial(const RunConfig& cfg, std::uint64_t token) {
  Rng rng(token);
  const std::size_t n = uniform_index(rng, cfg.n_range.lo, cfg.n_range.hi);
  const EtaWeights x = random_eta_weights(rng, n);
  const InequalityReport rep = lemma1_check(x);
  return {n, 1, token, rep.lhs, rep.bound, rep.slack, rep.is_equality};
}

VerificationSummary verify_lemma1(const RunConfig& cfg, const TrialSink& sink) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  VerificationSummary sum;
  sum.command = "verify lemma1";

  if (!cfg.equality_only) {
    const SweepOutcome s = run_sweep(cfg.trials, cfg.seed, cfg.threads, cfg.tol, bool(sink),
                                     [&](std::uint64_t token) { return replay_lemma1_trial(cfg, token); });
    absorb(sum, s, cfg.trials);
    sum.checks.push_back(sweep_check("lemma1_random_sweep", s, cfg.trials, cfg.tol));
    for (const auto& rec : s.records) sink(rec);
  }

  {
    const double thr = exact_threshold(1e-12, cfg);
    CheckResult c{"lemma1_equality_families", true, json::object()};
    std::size_t families = 0;
    double worst = 0.0;
    json failed = json::array();
    for (std::size_t n = cfg.n_range.lo; n <= cfg.n_range.hi; ++n)
      for (std::size_t k : k_values(cfg, n - 1))
        for (Orientation o : {Orientation::case1, Orientation::case2})
          for (double w : {1.0, 7.5}) {
            const EtaWeights x = construct_equality_eta({n, k, w, o});
            const InequalityReport rep = lemma1_check(x);
            const Classification cls = classify_equality(x);
            const EqualityMatch want{o, k};
            ++families;
            worst = std::max(worst, std::abs(rep.slack));
            if (std::abs(rep.slack) > thr || !rep.is_equality || !cls.contains(want)) {
              c.pass = false;
              if (failed.size() < 20)
                failed.push_back({{"n", n}, {"k", k}, {"case", o == Orientation::case1 ? 1 : 2},
                                  {"weight", w}, {"slack", rep.slack}, {"classified", cls.contains(want)}});
            }
          }
    c.details = {{"families", families}, {"max_abs_slack", worst}, {"threshold", thr}, {"failed", failed}};
    add_check(sum, std::move(c));
  }

  if (!cfg.equality_only) {
    const std::size_t trials = std::max<std::size_t>(1, cfg.trials / 10);
    CheckResult c{"lemma1_maximizer_dominance", true, json::object()};
    double worst_excess = -std::numeric_limits<double>::infinity();
    double worst_stationarity = 0.0;
    double worst_lambda = 0.0;
    std::uint64_t worst_seed = 0;
    std::size_t failures = 0;
    for (std::size_t i = 0; i < trials; ++i) {
      const std::uint64_t token = mix_seed(cfg.seed ^ kDominanceStream, i);
      Rng rng(token);
      const std::size_t n = uniform_index(rng, cfg.n_range.lo, cfg.n_range.hi);
      const EdgeWeights r = random_weights(rng, n);
      if (r.all_zero()) continue;
      const StationaryPoint sp = lemma1_maximize(r);
      const double excess = sp.critical_value - lemma1_bound(r);
      const SymMatrix lap = weighted_laplacian(r);
      double res = 0.0;
      for (std::size_t a = 0; a < n; ++a) {
        double la = 0.0;
        for (std::size_t b = 0; b < n; ++b) la += lap(a, b) * sp.eta[b];
        res += (la - sp.critical_value * sp.eta[a]) * (la - sp.critical_value * sp.eta[a]);
      }
      res = std::sqrt(res);
      const bool ok = excess <= 1e-8 && res <= 1e-10 * std::max(1.0, sp.critical_value) &&
                      std::abs(sp.lagrange_lambda) <= 1e-12 * std::max(1.0, sp.critical_value);
      if (!ok) ++failures;
      if (excess > worst_excess) {
        worst_excess = excess;
        worst_seed = token;
      }
      worst_stationarity = std::max(worst_stationarity, res);
      worst_lambda = std::max(worst_lambda, std::abs(sp.lagrange_lambda));
    }
    c.pass = failures == 0;
    c.details = {{"trials", trials},
                 {"failures", failures},
                 {"max_excess_over_bound", worst_excess},
                 {"max_excess_seed", worst_seed},
                 {"max_stationarity_residual", worst_stationarity},
                 {"max_abs_lagrange_lambda", worst_lambda},
                 {"margin", 1e-8}};
    add_check(sum, std::move(c));
  }

  sum.elapsed = seconds_since(t0);
  return sum;
}

// Lemma 2 --------------------------------------------------------------------

TrialRecord replay_lemma2_trial(const RunConfig& cfg, std::uint64_t token) {
  Rng rng(token);
  const std::size_t n = uniform_index(rng, cfg.n_range.lo, cfg.n_range.hi);
  const std::size_t m = uniform_index(rng, std::max<std::size_t>(2, cfg.m_range.lo), cfg.m_range.hi);
  const MatrixFamily f = random_orthogonal_family(rng, n, m);
  const InequalityReport rep = lemma2_check(f);
  return {n, m, token, rep.lhs, rep.bound, rep.slack, rep.is_equality};
}

VerificationSummary verify_lemma2(const RunConfig& cfg, const TrialSink& sink) {
  cfg.validate();
  if (cfg.m_range.hi < 2) throw InputError("the commutator inequality needs m >= 2");
  const auto t0 = std::chrono::steady_clock::now();
  VerificationSummary sum;
  sum.command = "verify lemma2";

  if (!cfg.equality_only) {
    const SweepOutcome s = run_sweep(cfg.trials, cfg.seed, cfg.threads, cfg.tol, bool(sink),
                                     [&](std::uint64_t token) { return replay_lemma2_trial(cfg, token); });
    absorb(sum, s, cfg.trials);
    sum.checks.push_back(sweep_check("lemma2_random_sweep", s, cfg.trials, cfg.tol));
    for (const auto& rec : s.records) sink(rec);

    // Reduction identity on the first (up to) 1000 families of the sweep.
    const std::size_t count = std::min<std::size_t>(cfg.trials, 1000);
    double worst = 0.0;
    std::uint64_t worst_seed = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t token = mix_seed(cfg.seed, i);
      Rng rng(token);
      const std::size_t n = uniform_index(rng, cfg.n_range.lo, cfg.n_range.hi);
      const std::size_t m = uniform_index(rng, std::max<std::size_t>(2, cfg.m_range.lo), cfg.m_range.hi);
      const MatrixFamily f = random_orthogonal_family(rng, n, m).with_diagonal_first();
      const double direct = lemma2_lhs(f);
      const double reduced = lemma1_lhs(lemma2_to_lemma1(f));
      const double scale = std::max(std::abs(direct), std::numeric_limits<double>::min());
      const double rel = std::abs(direct - reduced) / scale;
      if (rel > worst) {
        worst = rel;
        worst_seed = token;
      }
    }
    const double thr = exact_threshold(1e-12, cfg);
    add_check(sum, {"lemma2_reduction_identity", worst <= thr,
                    {{"families", count}, {"max_relative_error", worst}, {"worst_seed", worst_seed},
                     {"threshold", thr}}});
  }

  {
    const double thr = exact_threshold(1e-12, cfg);
    CheckResult c{"lemma2_equality_families", true, json::object()};
    std::size_t families = 0;
    double worst = 0.0;
    json failed = json::array();
    for (std::size_t n = cfg.n_range.lo; n <= cfg.n_range.hi; ++n)
      for (std::size_t m = std::max<std::size_t>(2, cfg.m_range.lo); m <= cfg.m_range.hi; ++m)
        for (std::size_t k : k_values(cfg, std::min(n - 1, m - 1)))
          for (double mu : {1.0, 0.37}) {
            const MatrixFamily f = construct_lemma2_equality({n, m, k, 1.0, mu});
            const InequalityReport rep = lemma2_check(f);
            const Classification cls = classify_equality(lemma2_to_lemma1(f));
            const bool round_trip = cls.contains({Orientation::case1, n - k});
            ++families;
            const double rel = std::abs(rep.slack) / std::max(1.0, rep.bound);
            worst = std::max(worst, rel);
            if (rel > thr || !rep.is_equality || !round_trip) {
              c.pass = false;
              if (failed.size() < 20)
                failed.push_back({{"n", n}, {"m", m}, {"k", k}, {"mu", mu}, {"slack", rep.slack},
                                  {"round_trip", round_trip}});
            }
          }
    c.details = {{"families", families}, {"max_relative_slack", worst}, {"threshold", thr}, {"failed", failed}};
    add_check(sum, std::move(c));
  }

  if (cfg.include_models) {
    const double thr = exact_threshold(1e-12, cfg);
    const InequalityReport ver = lemma2_saturation(veronese_family(2));
    add_check(sum, {"lemma2_veronese_saturation", std::abs(ver.slack) <= thr && ver.is_equality,
                    {{"lhs", ver.lhs}, {"bound", ver.bound}, {"slack", ver.slack}, {"threshold", thr}}});
    const InequalityReport cl = lemma2_saturation(clifford_family(1, 2, 2));
    add_check(sum, {"lemma2_clifford_degenerate", cl.lhs == 0.0 && cl.bound == 0.0,
                    {{"lhs", cl.lhs}, {"bound", cl.bound}, {"slack", cl.slack}}});
  }

  sum.elapsed = seconds_since(t0);
  return sum;
}

// Documents ------------------------------------------------------------------

json to_json(const TrialRecord& t) {
  return {{"n", t.n},         {"m", t.m},         {"seed", t.seed},
          {"lhs", t.lhs},     {"bound", t.bound}, {"slack", t.slack},
          {"is_equality", t.is_equality}};
}

namespace {

json checks_json(const std::vector<CheckResult>& checks) {
  json arr = json::array();
  for (const auto& c : checks) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
  return arr;
}

}  // namespace

json to_json(const VerificationSummary& s) {
  return {{"schema", kSchemaVersion},  {"command", s.command},
          {"trials_run", s.trials_run}, {"failures", s.failures},
          {"min_slack", s.min_slack},   {"min_slack_seed", s.min_slack_seed},
          {"pass", s.passed()},         {"checks", checks_json(s.checks)}};
}

json to_json(const PinchingReport& p) {
  return {{"sigma", p.sigma}, {"lambda1", p.lambda1},     {"lambda2", p.lambda2},
          {"pinching", p.pinching}, {"n", p.n}, {"saturates", p.saturates}};
}

json to_json(const AnalyticSpectrum& s) {
  json ev = json::array(), mult = json::array();
  for (const auto& lv : s) {
    ev.push_back(lv.eigenvalue);
    mult.push_back(lv.multiplicity);
  }
  return {{"eigenvalues", ev}, {"multiplicities", mult}};
}

json to_json(const MainTheoremReport& r) {
  return {{"mu1", r.mu1},   {"lambda2", r.lambda2}, {"bound", r.bound},          {"gap", r.gap},
          {"holds", r.holds}, {"totally_geodesic", r.totally_geodesic}, {"note", r.note}};
}

json to_json(const ConvergenceRow& r) {
  return {{"N", r.n_points}, {"h", r.h},         {"smallest", r.smallest},
          {"second", r.second}, {"error", r.error}, {"observed_order", r.observed_order}};
}

json catalog_document(const ModelSubmanifold& model, double tol) {
  const PinchingReport pin = pinching_report(model, tol);
  const std::vector<double> simons = simons_residual(model.family, model.n);
  double max_simons = 0.0;
  for (double v : simons) max_simons = std::max(max_simons, std::abs(v));
  json doc = {{"schema", kSchemaVersion},
              {"model", model.name()},
              {"family", to_json(model.family)},
              {"closed_form_sigma", model.sigma},
              {"pinching", to_json(pin)},
              {"simons_residuals", simons},
              {"max_abs_simons_residual", max_simons}};
  if (model.kind != ModelKind::totally_geodesic) {
    const InequalityReport sat = lemma2_saturation(model, tol);
    doc["lemma2_saturation"] = {{"lhs", sat.lhs}, {"bound", sat.bound}, {"slack", sat.slack},
                                {"is_equality", sat.is_equality}};
  }
  return doc;
}

json spectrum_document(const ModelSubmanifold& model, double threshold, double tol) {
  const MainTheoremReport thm = main_theorem_check(model, tol);
  json doc = {{"schema", kSchemaVersion}, {"model", model.name()}};
  doc.update(to_json(model_spectrum(model, threshold)));
  doc.update(to_json(thm));
  return doc;
}

json torus_document(int n_points, int count, std::span<const int> study_sizes) {
  const TorusGridOperator op = torus_grid_operator(n_points, 2.0);
  const EigenpairResult eig = smallest_eigenvalues(op, count);
  json doc = {{"schema", kSchemaVersion},
              {"model", "clifford(r=1,n=2) flat torus grid"},
              {"N", n_points},
              {"h", op.h()},
              {"sigma", op.sigma()},
              {"eigenvalues", eig.values},
              {"residuals", eig.residuals},
              {"iterations", eig.iterations},
              {"mu1", eig.values.front()},
              {"bound", -2.0},
              {"gap", -2.0 - eig.values.front()},
              {"continuum_mu1", -op.sigma()},
              {"continuum_second", 1.0 / (op.rho() * op.rho()) - op.sigma()}};
  if (!study_sizes.empty()) {
    json rows = json::array();
    for (const auto& row : torus_convergence_study(study_sizes, op.sigma())) rows.push_back(to_json(row));
    doc["convergence"] = rows;
  }
  return doc;
}

// Report ---------------------------------------------------------------------

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

CheckResult catalog_check(const RunConfig& cfg) {
  const double thr = exact_threshold(1e-12, cfg);
  CheckResult c{"catalog_exactness", true, json::object()};
  json models = json::array();
  auto record = [&](const ModelSubmanifold& model, double want_sigma, double want_lambda2, double want_pinching) {
    const PinchingReport p = pinching_report(model);
    double simons = 0.0;
    for (double v : simons_residual(model.family, model.n)) simons = std::max(simons, std::abs(v));
    const bool ok = std::abs(p.sigma - want_sigma) <= thr && std::abs(p.lambda2 - want_lambda2) <= thr &&
                    std::abs(p.pinching - want_pinching) <= thr && simons <= thr &&
                    model.family.is_trace_free(thr);
    if (!ok) c.pass = false;
    models.push_back({{"model", model.name()}, {"sigma", p.sigma}, {"lambda2", p.lambda2},
                      {"pinching", p.pinching}, {"max_abs_simons", simons}, {"pass", ok}});
  };
  for (int n = 2; n <= 10; ++n)
    for (int r = 1; r < n; ++r)
      for (int m : {1, 3}) record(clifford_family(r, n, m), n, 0.0, n);
  for (int m = 2; m <= 5; ++m) record(veronese_family(m), 4.0 / 3.0, 2.0 / 3.0, 2.0);
  record(geodesic_family(3, 2), 0.0, 0.0, 0.0);
  c.details = {{"threshold", thr}, {"models", models}};
  return c;
}

CheckResult main_theorem_check_all(const RunConfig& cfg) {
  const double thr = exact_threshold(1e-12, cfg);
  CheckResult c{"main_theorem_saturation", true, json::object()};
  json models = json::array();
  auto record = [&](const ModelSubmanifold& model, double want_mu1) {
    const MainTheoremReport rep = main_theorem_check(model);
    const bool ok = std::abs(rep.gap) <= thr && std::abs(rep.mu1 - want_mu1) <= thr;
    if (!ok) c.pass = false;
    models.push_back({{"model", model.name()}, {"mu1", rep.mu1}, {"bound", rep.bound}, {"gap", rep.gap},
                      {"pass", ok}});
  };
  for (int n = 2; n <= 10; ++n)
    for (int r = 1; r < n; ++r) record(clifford_family(r, n, 1), -double(n));
  record(veronese_family(2), -4.0 / 3.0);
  const MainTheoremReport geo = main_theorem_check(geodesic_family(3, 1));
  const bool geo_ok = geo.totally_geodesic && geo.mu1 == 0.0;
  if (!geo_ok) c.pass = false;
  models.push_back({{"model", "geodesic(n=3,m=1)"}, {"mu1", geo.mu1}, {"note", geo.note}, {"pass", geo_ok}});
  c.details = {{"threshold", thr}, {"models", models}};
  return c;
}

CheckResult torus_check(const RunConfig& cfg) {
  const double thr = exact_threshold(1e-12, cfg);
  const int sizes[] = {16, 32, 64, 128};
  const auto rows = torus_convergence_study(sizes, 2.0, {cfg.seed, 1e-12, 2000});
  CheckResult c{"torus_grid_cross_check", true, json::object()};
  json arr = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (std::abs(row.smallest + 2.0) > thr) c.pass = false;
    if (i > 0 && row.observed_order < 1.9) c.pass = false;
    arr.push_back(to_json(row));
  }
  c.details = {{"threshold", thr}, {"min_order", 1.9}, {"rows", arr}};
  return c;
}

CheckResult decay_check(const RunConfig& cfg) {
  constexpr int kPMax = 10000;
  constexpr std::size_t kSpectra = 100;
  CheckResult c{"ratio_decay", true, json::object()};
  double worst_excess = -std::numeric_limits<double>::infinity();
  std::size_t failures = 0;
  for (std::size_t i = 0; i < kSpectra; ++i) {
    Rng rng(mix_seed(cfg.seed ^ kDecayStream, i));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t m = uniform_index(rng, 2, 8);
    const std::size_t r = uniform_index(rng, 1, m - 1);
    const double top = 0.1 + 10.0 * unif(rng);
    std::vector<double> lam(m, top);
    for (std::size_t a = r; a < m; ++a) lam[a] = top * 0.999 * unif(rng);
    const RatioDecay d = top_eigenvalue_ratio_decay(lam, kPMax);
    bool ok = d.multiplicity == r && d.ratios.size() == std::size_t(kPMax - 1);
    double q = 0.0;
    for (std::size_t a = r; a < m; ++a) q = std::max(q, lam[a] / top);
    for (std::size_t t = 0; ok && t < d.ratios.size(); ++t) {
      const double bound = std::pow(q, double(t + 2));
      ok = std::isfinite(d.ratios[t]) && d.ratios[t] <= bound * (1.0 + 1e-12);
      worst_excess = std::max(worst_excess, d.ratios[t] - bound);
    }
    ok = ok && d.ratios.back() < d.ratios.front();
    if (!ok) ++failures;
  }
  c.pass = failures == 0;
  c.details = {{"spectra", kSpectra}, {"p_max", kPMax}, {"failures", failures}, {"max_excess", worst_excess}};
  return c;
}

}  // namespace

Report run_report(const RunConfig& cfg) {
  Report rep;

  RunConfig l1 = cfg;
  l1.trials = 100000;
  l1.n_range = {2, 12};
  l1.equality_only = false;
  l1.k.reset();
  const VerificationSummary s1 = verify_lemma1(l1);
  for (const auto& c : s1.checks) rep.checks.push_back(c);

  RunConfig l2 = cfg;
  l2.trials = 10000;
  l2.n_range = {2, 8};
  l2.m_range = {2, 6};
  l2.equality_only = false;
  l2.include_models = true;
  l2.k.reset();
  const VerificationSummary s2 = verify_lemma2(l2);
  for (const auto& c : s2.checks) rep.checks.push_back(c);

  rep.checks.push_back(catalog_check(cfg));
  rep.checks.push_back(main_theorem_check_all(cfg));
  rep.checks.push_back(torus_check(cfg));
  rep.checks.push_back(decay_check(cfg));
  return rep;
}

json to_json(const Report& r, const RunConfig& cfg) {
  return {{"schema", kSchemaVersion}, {"command", "report"},         {"seed", cfg.seed},
          {"tol", cfg.tol},           {"pass", r.all_pass()},        {"checks", checks_json(r.checks)}};
}

// Rendering ------------------------------------------------------------------

namespace {

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (v.is_array() && std::any_of(v.begin(), v.end(), [](const json& e) { return e.is_structured(); })) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(prefix, scalar_text(v));
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

}  // namespace

std::string render(const json& doc, OutputFormat format) {
  std::ostringstream os;
  if (format == OutputFormat::json) {
    os << doc.dump(2) << '\n';
    return os.str();
  }
  const bool has_checks = doc.contains("checks") && doc["checks"].is_array();
  if (format == OutputFormat::csv) {
    if (has_checks) {
      os << "name,pass,details\n";
      for (const auto& c : doc["checks"]) {
        std::vector<std::pair<std::string, std::string>> kv;
        flatten(c["details"], "", kv);
        std::string joined;
        for (const auto& [k, v] : kv) joined += (joined.empty() ? "" : ";") + k + "=" + v;
        os << csv_field(c["name"].get<std::string>()) << ',' << (c["pass"].get<bool>() ? "true" : "false") << ','
           << csv_field(joined) << '\n';
      }
    } else {
      std::vector<std::pair<std::string, std::string>> kv;
      flatten(doc, "", kv);
      os << "key,value\n";
      for (const auto& [k, v] : kv) os << csv_field(k) << ',' << csv_field(v) << '\n';
    }
    return os.str();
  }
  if (has_checks) {
    for (auto it = doc.begin(); it != doc.end(); ++it)
      if (it.key() != "checks") os << it.key() << ": " << scalar_text(it.value()) << '\n';
    for (const auto& c : doc["checks"]) {
      os << (c["pass"].get<bool>() ? "[PASS] " : "[FAIL] ") << c["name"].get<std::string>() << '\n';
      std::vector<std::pair<std::string, std::string>> kv;
      flatten(c["details"], "", kv);
      for (const auto& [k, v] : kv) os << "    " << k << " = " << v << '\n';
    }
  } else {
    std::vector<std::pair<std::string, std::string>> kv;
    flatten(doc, "", kv);
    for (const auto& [k, v] : kv) os << k << " = " << v << '\n';
  }
  return os.str();
}

}  // namespace lupinch
