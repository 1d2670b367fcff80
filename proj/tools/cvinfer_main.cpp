// cvinfer: post-selection significance testing for linear models whose
// sparsity was chosen by K-fold cross-validation.
//
// Subcommands:
//   fit       run the CV-selection + selective-test pipeline on a CSV file
//   simulate  Monte-Carlo experiments with known ground truth
//   check     oracle self-check suites (brute-force reference checks)

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cvinfer/analyze.hpp"
#include "cvinfer/errors.hpp"
#include "cvinfer/report.hpp"
#include "cvinfer/self_check.hpp"
#include "cvinfer/simulate.hpp"

namespace {

using namespace cvinfer;

// --sigma takes either a positive number or the word "plugin".
std::optional<double> parse_sigma(const std::string& s) {
  if (s == "plugin") return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !(v > 0.0)) {
    throw CLI::ValidationError(
        "--sigma", "expected a positive number or 'plugin', got '" + s + "'");
  }
  return v;
}

PenaltyKind parse_penalty(const std::string& s) {
  return s == "bic" ? PenaltyKind::kBic : PenaltyKind::kNone;
}

int run_fit(const std::string& data_path, AnalysisOptions opt,
            const std::string& sigma_str, int requested_steps,
            const std::string& out_dir, const std::string& format) {
  opt.sigma = parse_sigma(sigma_str);
  const Dataset ds = load_csv(data_path);

  // Cap the path length at what the data can support so the default works
  // on small files.
  const int n = ds.n_rows();
  const int p = ds.n_cols() - 1;
  const int max_fold = (n + opt.folds - 1) / opt.folds;
  const int feasible = std::min(n - max_fold, p);
  opt.steps = requested_steps;
  if (feasible >= 1 && opt.steps > feasible) {
    std::cerr << "note: --steps reduced from " << opt.steps << " to "
              << feasible << " (data size limit)\n";
    opt.steps = feasible;
  }

  const AnalysisReport rep = run_analysis(ds, opt);
  print_analysis(std::cout, rep);
  if (!out_dir.empty()) {
    write_analysis_outputs(out_dir, format, rep);
    std::cout << "wrote " << out_dir << "/results." << format << " and "
              << out_dir << "/meta.json\n";
  }
  return 0;
}

int run_simulate(SimConfig cfg, const std::string& sigma_str,
                 const std::string& penalty_str, const std::string& scaling,
                 bool no_refit, const std::string& out_dir,
                 const std::string& format, bool dump) {
  const auto sigma = parse_sigma(sigma_str);
  if (sigma.has_value()) {
    cfg.sigma = *sigma;
    cfg.sigma_mode = SigmaSource::kKnown;
  } else {
    cfg.sigma_mode = SigmaSource::kPlugin;  // noise scale stays cfg.sigma
  }
  cfg.penalty = parse_penalty(penalty_str);
  cfg.refit_event = !no_refit;
  cfg.scaling =
      scaling == "raw" ? ColumnScaling::kRaw : ColumnScaling::kUnitNorm;

  const SimulationResult result = simulate(cfg);
  write_simulation_outputs(out_dir, format, cfg, result, dump);

  std::cout << "replications: " << cfg.replications
            << "  completed: " << (cfg.replications - result.n_skipped)
            << "  skipped: " << result.n_skipped << '\n'
            << "rows (variable tests): " << result.rows.size() << '\n';
  int small = 0;
  for (const ResultRow& r : result.rows) {
    if (r.p_value < 0.05) ++small;
  }
  if (!result.rows.empty()) {
    std::cout << "fraction of p-values < 0.05: "
              << static_cast<double>(small) / result.rows.size() << '\n';
  }
  std::cout << "wrote " << out_dir << "/results." << format
            << ", meta.json, ecdf.csv, ecdf.svg\n";
  return 0;
}

int run_check(const std::string& level, const std::string& out_dir,
              bool full_scale, int threads) {
  const CheckReport report =
      self_check(level == "full" ? CheckLevel::kFull : CheckLevel::kFast,
                 out_dir, full_scale, threads);
  print_report(std::cout, report);
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Selective inference after cross-validation: forward stepwise + "
      "K-fold CV model selection with valid post-selection p-values"};
  app.require_subcommand(1);
  // Config support lives on the top-level app (subcommand-level config
  // files are not processed by the parser); subcommand keys go under a
  // section header such as [simulate]. fallthrough() lets --config appear
  // after the subcommand name, where users naturally type it.
  app.fallthrough();
  app.set_config("--config", "",
                 "plain-text 'key = value' file; keys for a subcommand go "
                 "under its section, e.g. [simulate]. Explicit flags win");
  app.allow_config_extras(CLI::config_extras_mode::error);  // typos fail loud

  // ------------------------------------------------------------- fit --
  auto* fit = app.add_subcommand(
      "fit", "CV-selected model and selective p-values for a CSV dataset");
  std::string data_path, response;
  std::string fit_sigma = "plugin", fit_penalty = "none";
  std::string fit_out, fit_format = "csv";
  int fit_folds = 5, fit_steps = 8;
  std::optional<std::uint64_t> fit_fold_seed;
  bool standardize = false, fit_null = false, fit_no_refit = false;
  fit->add_option("data", data_path, "CSV file with a header row")
      ->required()
      ->check(CLI::ExistingFile);
  fit->add_option("--response", response, "response column name")->required();
  fit->add_option("--folds", fit_folds, "number of CV folds K")
      ->capture_default_str();
  fit->add_option("--steps", fit_steps, "stepwise path length S")
      ->capture_default_str();
  fit->add_option("--penalty", fit_penalty, "CV objective penalty")
      ->check(CLI::IsMember({"none", "bic"}))
      ->capture_default_str();
  fit->add_option("--sigma", fit_sigma,
                  "noise scale: a positive number, or 'plugin' to estimate "
                  "from full-model residuals")
      ->capture_default_str();
  fit->add_option("--fold-seed", fit_fold_seed,
                  "seeded random fold shuffle (default: deterministic "
                  "round-robin folds)");
  fit->add_flag("--standardize", standardize,
                "center predictor columns and scale them to unit norm");
  fit->add_flag("--include-null-model", fit_null,
                "add the size-0 model to the candidate grid");
  fit->add_flag("--no-refit-event", fit_no_refit,
                "do not condition on the full-data refit's own constraints");
  fit->add_option("--out", fit_out,
                  "directory for results." + std::string("{csv,json}") +
                      " and meta.json (default: print only)");
  fit->add_option("--format", fit_format, "results file format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // -------------------------------------------------------- simulate --
  auto* sim = app.add_subcommand(
      "simulate", "seeded Monte-Carlo experiments with known ground truth");
  SimConfig cfg;
  std::string sim_sigma = "1.0", sim_penalty = "none",
              sim_scaling = "unit_norm";
  std::string sim_out = "cvinfer_out", sim_format = "csv";
  bool sim_no_refit = false, dump = false;
  sim->add_option("--n", cfg.n, "observations per replication")
      ->capture_default_str();
  sim->add_option("--p", cfg.p, "predictors")->capture_default_str();
  sim->add_option("--folds", cfg.k, "number of CV folds K")
      ->capture_default_str();
  sim->add_option("--steps", cfg.steps, "stepwise path length S")
      ->capture_default_str();
  sim->add_option("--sparsity", cfg.sparsity, "number of truly nonzero "
                  "coefficients")
      ->capture_default_str();
  sim->add_option("--coef-magnitude", cfg.coef_magnitude,
                  "absolute value of each nonzero coefficient")
      ->capture_default_str();
  sim->add_option("--replications", cfg.replications, "replication count")
      ->capture_default_str();
  sim->add_option("--sigma", sim_sigma,
                  "noise sd; 'plugin' makes the tests estimate it "
                  "(generation then uses sd 1)")
      ->capture_default_str();
  sim->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  sim->add_option("--fold-seed", cfg.fold_seed,
                  "master seed for per-replication fold shuffles")
      ->capture_default_str();
  sim->add_option("--penalty", sim_penalty, "CV objective penalty")
      ->check(CLI::IsMember({"none", "bic"}))
      ->capture_default_str();
  sim->add_flag("--include-null-model", cfg.include_null_model,
                "add the size-0 model to the candidate grid");
  sim->add_flag("--no-refit-event", sim_no_refit,
                "do not condition on the full-data refit's own constraints");
  sim->add_option("--scaling", sim_scaling,
                  "predictor column scaling after the Gaussian draw")
      ->check(CLI::IsMember({"unit_norm", "raw"}))
      ->capture_default_str();
  sim->add_option("--threads", cfg.threads, "worker threads (0 = all)")
      ->capture_default_str();
  sim->add_option("--out", sim_out, "output directory")
      ->capture_default_str();
  sim->add_option("--format", sim_format, "results file format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sim->add_flag("--dump", dump,
                "also write each replication's dataset as dataset_rep<k>.csv");

  // ----------------------------------------------------------- check --
  auto* chk = app.add_subcommand(
      "check", "run the brute-force oracle self-check suites");
  std::string level = "fast", chk_out;
  bool full_scale = false;
  int chk_threads = 0;
  chk->add_option("--level", level, "fast: algebraic suites; full: adds the "
                  "Monte-Carlo calibration and power criteria")
      ->check(CLI::IsMember({"fast", "full"}))
      ->capture_default_str();
  chk->add_option("--out", chk_out,
                  "directory for calibration artifacts (ECDF files)");
  chk->add_flag("--full-scale", full_scale,
                "also rerun calibration at the large-p reference scale p=100 "
                "(full level only)");
  chk->add_option("--threads", chk_threads, "worker threads (0 = all)")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit->parsed()) {
      AnalysisOptions opt;
      opt.response = response;
      opt.folds = fit_folds;
      opt.penalty = parse_penalty(fit_penalty);
      opt.fold_seed = fit_fold_seed;
      opt.standardize = standardize;
      opt.include_null_model = fit_null;
      opt.refit_event = !fit_no_refit;
      return run_fit(data_path, opt, fit_sigma, fit_steps, fit_out,
                     fit_format);
    }
    if (sim->parsed()) {
      return run_simulate(cfg, sim_sigma, sim_penalty, sim_scaling,
                          sim_no_refit, sim_out, sim_format, dump);
    }
    return run_check(level, chk_out, full_scale, chk_threads);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
