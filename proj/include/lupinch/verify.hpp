#pragma once

// Verification sweeps and the machine-readable reports behind the CLI.
// Every randomized trial is seeded by mix_seed(run seed, trial index); the
// trial seed doubles as a replay token for failure reproduction.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lupinch/model_catalog.hpp"
#include "lupinch/spectral.hpp"

namespace lupinch {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kExitPass = 0,
  kExitVerificationFailure = 1,
  kExitUsage = 2,
  kExitNonConvergence = 3,
};

enum class OutputFormat { json, csv, pretty };

struct IntRange {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

struct RunConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 100000;
  double tol = kDefaultTol;
  IntRange n_range{2, 12};
  IntRange m_range{2, 6};
  unsigned threads = 1;
  bool equality_only = false;
  bool include_models = false;
  std::optional<std::size_t> k;  // restricts equality constructions

  /// Throws InputError when trials == 0, tol <= 0, or a range is empty.
  void validate() const;
};

/// Reads LUPINCH_TOL if set; otherwise kDefaultTol.
double default_tolerance();

struct TrialRecord {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;  // replay token
  double lhs = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  bool is_equality = false;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  nlohmann::json details = nlohmann::json::object();
};

struct VerificationSummary {
  std::string command;
  std::size_t trials_run = 0;
  std::size_t failures = 0;  // sweep trials with slack < -tol, plus failed checks
  double min_slack = 0.0;
  std::uint64_t min_slack_seed = 0;
  double elapsed = 0.0;  // seconds; not part of the JSON document
  std::vector<CheckResult> checks;

  bool passed() const noexcept { return failures == 0; }
};

using TrialSink = std::function<void(const TrialRecord&)>;

/// Random sweep over EtaWeights, every equality family, and the exact
/// maximizer dominance check. `sink` receives sweep trials in index order.
VerificationSummary verify_lemma1(const RunConfig& cfg, const TrialSink& sink = {});
TrialRecord replay_lemma1_trial(const RunConfig& cfg, std::uint64_t token);

/// Random orthogonal families, every admissible equality construction, the
/// reduction identity and, optionally, the catalog models.
VerificationSummary verify_lemma2(const RunConfig& cfg, const TrialSink& sink = {});
TrialRecord replay_lemma2_trial(const RunConfig& cfg, std::uint64_t token);

// Documents -----------------------------------------------------------------

nlohmann::json to_json(const TrialRecord& t);
nlohmann::json to_json(const VerificationSummary& s);
nlohmann::json to_json(const PinchingReport& p);
nlohmann::json to_json(const AnalyticSpectrum& s);
nlohmann::json to_json(const MainTheoremReport& r);
nlohmann::json to_json(const ConvergenceRow& r);

/// Family JSON, pinching report, Simons residuals and Lemma 2 saturation.
nlohmann::json catalog_document(const ModelSubmanifold& model, double tol);

/// Analytic spectrum head, mu1, bound and gap.
nlohmann::json spectrum_document(const ModelSubmanifold& model, double threshold, double tol);

/// Smallest grid eigenvalues plus the convergence study over `study_sizes`.
nlohmann::json torus_document(int n_points, int count, std::span<const int> study_sizes);

struct Report {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

/// Runs every acceptance check at full size. Deterministic for a given seed.
Report run_report(const RunConfig& cfg);
nlohmann::json to_json(const Report& r, const RunConfig& cfg);

/// Renders a document that carries a "checks" array: JSON is normative, CSV
/// and pretty output are projections of it.
std::string render(const nlohmann::json& doc, OutputFormat format);

}  // namespace lupinch
