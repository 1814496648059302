// lupinch: verification sweeps, model catalog and spectral reports.
//
//   lupinch verify lemma1 [--trials N] [--seed S] [--n N | --n-min A --n-max B]
//   lupinch verify lemma2 [--include-models] [--k K --n N --m M]
//   lupinch catalog clifford --r R --n N [--m M] | veronese [--m M] | geodesic --n N --m M
//   lupinch spectrum clifford --r R --n N [--cutoff T] | veronese [--cutoff L] | torus-grid --N N --count C
//   lupinch report [--seed S] [--tol T] [--format json|csv|pretty]
//
// Exit codes: 0 all pass, 1 verification failure, 2 usage error,
// 3 numeric non-convergence.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "lupinch/verify.hpp"

namespace {

using namespace lupinch;

struct CommonOptions {
  std::uint64_t seed = 42;
  double tol = kDefaultTol;
  OutputFormat format = OutputFormat::json;
  std::string output;
  unsigned threads = 1;
  bool timing = false;
};

struct SweepOptions {
  std::size_t trials = 0;
  std::optional<std::size_t> n, n_min, n_max, m, m_min, m_max, k;
  bool equality_only = false;
  bool include_models = false;
  std::string jsonl;
  std::optional<std::uint64_t> replay;
};

void add_common(CLI::App* app, CommonOptions& c) {
  static const std::map<std::string, OutputFormat> formats{
      {"json", OutputFormat::json}, {"csv", OutputFormat::csv}, {"pretty", OutputFormat::pretty}};
  app->add_option("--seed", c.seed, "Run seed");
  app->add_option("--tol", c.tol, "Tolerance (default 1e-10, or LUPINCH_TOL)")->check(CLI::PositiveNumber);
  app->add_option("--format", c.format, "Output format: json|csv|pretty")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app->add_option("-o,--output", c.output, "Write the document to this path instead of stdout");
  app->add_option("--threads", c.threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app->add_flag("--timing", c.timing, "Print elapsed time to stderr");
}

void add_sweep(CLI::App* app, SweepOptions& s, std::size_t default_trials) {
  s.trials = default_trials;
  app->add_option("--trials", s.trials, "Random trials")->check(CLI::PositiveNumber);
  app->add_option("--n", s.n, "Fix the matrix dimension n");
  app->add_option("--n-min", s.n_min, "Smallest n");
  app->add_option("--n-max", s.n_max, "Largest n");
  app->add_option("--k", s.k, "Restrict equality constructions to this k");
  app->add_flag("--equality-only", s.equality_only, "Only run the equality-family checks");
  app->add_option("--jsonl", s.jsonl, "Write one JSON record per trial plus a summary record");
  app->add_option("--replay", s.replay, "Re-run the single trial with this seed token");
}

void emit(const std::string& text, const CommonOptions& c) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw InputError("cannot open output file " + c.output);
  out << text;
}

RunConfig make_config(const CommonOptions& c, const SweepOptions& s, IntRange n_default, IntRange m_default) {
  RunConfig cfg;
  cfg.seed = c.seed;
  cfg.tol = c.tol;
  cfg.threads = c.threads;
  cfg.trials = s.trials;
  cfg.n_range = n_default;
  cfg.m_range = m_default;
  if (s.n) cfg.n_range = {*s.n, *s.n};
  if (s.n_min) cfg.n_range.lo = *s.n_min;
  if (s.n_max) cfg.n_range.hi = *s.n_max;
  if (s.m) cfg.m_range = {*s.m, *s.m};
  if (s.m_min) cfg.m_range.lo = *s.m_min;
  if (s.m_max) cfg.m_range.hi = *s.m_max;
  cfg.k = s.k;
  cfg.equality_only = s.equality_only;
  cfg.include_models = s.include_models;
  cfg.validate();
  return cfg;
}

int run_verify(const std::string& which, const CommonOptions& c, const SweepOptions& s) {
  const bool lemma1 = which == "lemma1";
  const RunConfig cfg = lemma1 ? make_config(c, s, {2, 12}, {1, 1}) : make_config(c, s, {2, 8}, {2, 6});

  if (s.replay) {
    const TrialRecord rec = lemma1 ? replay_lemma1_trial(cfg, *s.replay) : replay_lemma2_trial(cfg, *s.replay);
    emit(to_json(rec).dump() + "\n", c);
    return rec.slack < -cfg.tol * std::max(1.0, rec.bound) ? kExitVerificationFailure : kExitPass;
  }

  std::ofstream jsonl;
  TrialSink sink;
  if (!s.jsonl.empty()) {
    jsonl.open(s.jsonl);
    if (!jsonl) throw InputError("cannot open " + s.jsonl);
    sink = [&jsonl](const TrialRecord& t) { jsonl << to_json(t).dump() << '\n'; };
  }
  const VerificationSummary sum = lemma1 ? verify_lemma1(cfg, sink) : verify_lemma2(cfg, sink);
  if (jsonl.is_open()) {
    nlohmann::json rec = {{"schema", kSchemaVersion},
                          {"summary", true},
                          {"command", sum.command},
                          {"trials_run", sum.trials_run},
                          {"failures", sum.failures},
                          {"min_slack", sum.min_slack},
                          {"min_slack_seed", sum.min_slack_seed}};
    jsonl << rec.dump() << '\n';
  }
  emit(render(to_json(sum), c.format), c);
  if (c.timing) std::cerr << "elapsed: " << sum.elapsed << " s\n";
  return sum.passed() ? kExitPass : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for Lu's commutator inequality and the first eigenvalue of -Laplacian - sigma"};
  app.require_subcommand(1);

  CommonOptions common;
  try {
    common.tol = default_tolerance();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  // verify
  auto* verify = app.add_subcommand("verify", "Randomized and exact verification sweeps");
  verify->require_subcommand(1);
  SweepOptions l1_opts, l2_opts;
  auto* v1 = verify->add_subcommand("lemma1", "Weighted quadratic inequality over the zero-sum unit sphere");
  add_common(v1, common);
  add_sweep(v1, l1_opts, 100000);
  auto* v2 = verify->add_subcommand("lemma2", "Commutator inequality for orthogonal symmetric families");
  add_common(v2, common);
  add_sweep(v2, l2_opts, 10000);
  v2->add_option("--m", l2_opts.m, "Fix the family size m");
  v2->add_option("--m-min", l2_opts.m_min, "Smallest m");
  v2->add_option("--m-max", l2_opts.m_max, "Largest m");
  v2->add_flag("--include-models", l2_opts.include_models, "Also check the Veronese and Clifford families");

  // catalog
  auto* catalog = app.add_subcommand("catalog", "Second fundamental form, pinching and Simons residuals of a model");
  catalog->require_subcommand(1);
  int cat_r = 0, cat_n = 0, cat_m = 1, ver_m = 2, geo_n = 0, geo_m = 1;
  auto* cat_cl = catalog->add_subcommand("clifford", "Clifford hypersurface M_{r,n-r}");
  cat_cl->add_option("--r", cat_r)->required();
  cat_cl->add_option("--n", cat_n)->required();
  cat_cl->add_option("--m", cat_m, "Codimension (zero-padded)");
  add_common(cat_cl, common);
  auto* cat_ver = catalog->add_subcommand("veronese", "Veronese surface");
  cat_ver->add_option("--m", ver_m, "Codimension (>= 2)");
  add_common(cat_ver, common);
  auto* cat_geo = catalog->add_subcommand("geodesic", "Totally geodesic sphere");
  cat_geo->add_option("--n", geo_n)->required();
  cat_geo->add_option("--m", geo_m)->required();
  add_common(cat_geo, common);

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Spectrum of -Laplacian - sigma on a model");
  spectrum->require_subcommand(1);
  int sp_r = 0, sp_n = 0, ver_cutoff = 4, grid_n = 64, grid_count = 2;
  double cl_cutoff = 10.0;
  std::vector<int> study{16, 32, 64, 128};
  bool no_study = false;
  std::string study_csv;
  auto* sp_cl = spectrum->add_subcommand("clifford", "Product of two round spheres");
  sp_cl->add_option("--r", sp_r)->required();
  sp_cl->add_option("--n", sp_n)->required();
  sp_cl->add_option("--cutoff", cl_cutoff, "Eigenvalue threshold of -Laplacian (complete below it)");
  add_common(sp_cl, common);
  auto* sp_ver = spectrum->add_subcommand("veronese", "Real projective plane of curvature 1/3");
  sp_ver->add_option("--cutoff", ver_cutoff, "Highest harmonic degree l");
  add_common(sp_ver, common);
  auto* sp_grid = spectrum->add_subcommand("torus-grid", "Finite differences on the flat Clifford torus M_{1,1}");
  sp_grid->add_option("--N", grid_n, "Grid points per direction")->check(CLI::Range(4, 4096));
  sp_grid->add_option("--count", grid_count, "Number of smallest eigenvalues")->check(CLI::PositiveNumber);
  sp_grid->add_option("--study", study, "Grid sizes of the convergence study")->delimiter(',');
  sp_grid->add_flag("--no-study", no_study, "Skip the convergence study");
  sp_grid->add_option("--csv", study_csv, "Also write the convergence study as CSV");
  add_common(sp_grid, common);

  // report
  auto* report = app.add_subcommand("report", "Run every acceptance check and emit one document");
  add_common(report, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (v1->parsed()) return run_verify("lemma1", common, l1_opts);
    if (v2->parsed()) return run_verify("lemma2", common, l2_opts);

    if (catalog->parsed()) {
      const ModelSubmanifold model = cat_cl->parsed()    ? clifford_family(cat_r, cat_n, cat_m)
                                     : cat_ver->parsed() ? veronese_family(ver_m)
                                                         : geodesic_family(geo_n, geo_m);
      emit(render(catalog_document(model, common.tol), common.format), common);
      return kExitPass;
    }

    if (spectrum->parsed()) {
      if (sp_grid->parsed()) {
        const std::vector<int> sizes = no_study ? std::vector<int>{} : study;
        const nlohmann::json doc = torus_document(grid_n, grid_count, sizes);
        if (!study_csv.empty() && doc.contains("convergence")) {
          std::ofstream csv(study_csv);
          if (!csv) throw InputError("cannot open " + study_csv);
          csv << "N,h,second,error,observed_order\n";
          csv.precision(17);
          for (const auto& row : doc["convergence"])
            csv << row["N"] << ',' << row["h"].get<double>() << ',' << row["second"].get<double>() << ','
                << row["error"].get<double>() << ',' << row["observed_order"].get<double>() << '\n';
        }
        emit(render(doc, common.format), common);
        const bool exact = std::abs(doc["mu1"].get<double>() + 2.0) <= 1e-12;
        return exact ? kExitPass : kExitVerificationFailure;
      }
      const ModelSubmanifold model = sp_cl->parsed() ? clifford_family(sp_r, sp_n, 1) : veronese_family(2);
      const double threshold = sp_cl->parsed() ? cl_cutoff : double(ver_cutoff) * double(ver_cutoff + 1) / 3.0;
      const nlohmann::json doc = spectrum_document(model, threshold, common.tol);
      emit(render(doc, common.format), common);
      return doc["holds"].get<bool>() ? kExitPass : kExitVerificationFailure;
    }

    if (report->parsed()) {
      RunConfig cfg;
      cfg.seed = common.seed;
      cfg.tol = common.tol;
      cfg.threads = common.threads;
      cfg.validate();
      const Report rep = run_report(cfg);
      emit(render(to_json(rep, cfg), common.format), common);
      return rep.all_pass() ? kExitPass : kExitVerificationFailure;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kExitNonConvergence;
  }
  return kExitUsage;
}
