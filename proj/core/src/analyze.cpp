#include "cvinfer/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "json.hpp"

#include "cvinfer/errors.hpp"
#include "cvinfer/report.hpp"

namespace cvinfer {

namespace {

using nlohmann::json;

json endpoint_json(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

}  // namespace

AnalysisReport run_analysis(const Dataset& data, const AnalysisOptions& opt) {
  if (opt.folds < 1 || opt.steps < 1) {
    throw ContractViolation("run_analysis: folds and steps must be positive");
  }
  DesignSplit split = split_response(data, opt.response);
  const int n = static_cast<int>(split.x.rows());
  const int p = static_cast<int>(split.x.cols());
  if (split.y.maxCoeff() == split.y.minCoeff()) {
    throw ContractViolation("run_analysis: response column '" + opt.response +
                            "' is constant");
  }
  if (opt.standardize) standardize_columns(split.x);

  AnalysisReport rep;
  rep.n = n;
  rep.p = p;
  rep.predictor_names = split.predictor_names;
  rep.options = opt;
  rep.steps_requested = opt.steps;

  rep.folds = opt.fold_seed.has_value()
                  ? FoldAssignment::shuffled(n, opt.folds, *opt.fold_seed)
                  : FoldAssignment::round_robin(n, opt.folds);

  CvOptions cv_opt;
  cv_opt.penalty = opt.penalty;
  cv_opt.include_null_model = opt.include_null_model;
  cv_opt.refit_event = opt.refit_event;

  const CvQuadratic cvq =
      assemble_cv(split.x, split.y, rep.folds, opt.steps, cv_opt);
  rep.steps_effective = cvq.steps_effective;
  rep.steps_truncated = cvq.steps_truncated;
  const CvSelection sel = select_sparsity(cvq, split.y, cv_opt);
  rep.selected_size = sel.selected_size;
  rep.tie = sel.tie;
  rep.active_set = sel.active_set;

  std::vector<int> final_active;
  Vector final_coef;
  if (sel.full_path.steps() > 0) {
    final_active = sel.full_path.active_sets.back();
    final_coef = sel.full_path.coefficients.back();
  }

  for (int j : sel.active_set) {
    const SelectiveTestResult t =
        selective_test(split.x, split.y, sel, j, opt.sigma);
    rep.sigma_used = t.sigma;
    rep.sigma_source = t.sigma_source;
    VariableReport vr;
    vr.variable = j;
    vr.name = split.predictor_names[j];
    const auto pos =
        std::find(final_active.begin(), final_active.end(), j);
    vr.coefficient = final_coef(pos - final_active.begin());
    vr.statistic = t.statistic;
    vr.p_value = t.p_value;
    vr.truncation = t.truncation;
    rep.tests.push_back(std::move(vr));
  }
  if (rep.tests.empty()) {
    // Size-0 selection (possible with --include-null-model): still report
    // which sigma the tests would have used.
    rep.sigma_used = opt.sigma ? *opt.sigma
                               : estimate_sigma(split.x, split.y);
    rep.sigma_source =
        opt.sigma ? SigmaSource::kKnown : SigmaSource::kPlugin;
  }
  return rep;
}

AnalysisReport run_analysis_file(const std::string& csv_path,
                                 const AnalysisOptions& opt) {
  return run_analysis(load_csv(csv_path), opt);
}

void print_analysis(std::ostream& out, const AnalysisReport& rep) {
  out << "observations: " << rep.n << "   predictors: " << rep.p
      << "   folds: " << rep.folds.k << '\n';
  out << "steps: requested " << rep.steps_requested << ", used "
      << rep.steps_effective
      << (rep.steps_truncated ? " (truncated by rank exhaustion)" : "")
      << '\n';
  out << "selected model size: " << rep.selected_size
      << (rep.tie ? "  [tie in CV objective]" : "") << '\n';
  out << "sigma: " << format_double(rep.sigma_used)
      << (rep.sigma_source == SigmaSource::kPlugin ? " (plug-in estimate)"
                                                   : " (known)")
      << '\n';
  out << "fold assignment:";
  for (int f : rep.folds.fold_of) out << ' ' << f;
  out << '\n';
  if (rep.tests.empty()) {
    out << "no variables selected; nothing to test\n";
    return;
  }
  out << "variable      coefficient      statistic        p-value\n";
  for (const VariableReport& t : rep.tests) {
    out << t.name << " (col " << t.variable << ")  "
        << format_double(t.coefficient) << "  " << format_double(t.statistic)
        << "  " << format_double(t.p_value) << '\n';
  }
}

void write_analysis_outputs(const std::string& dir, const std::string& format,
                            const AnalysisReport& rep) {
  if (format != "csv" && format != "json") {
    throw ContractViolation(
        "write_analysis_outputs: format must be csv or json");
  }
  ensure_directory(dir);
  const std::filesystem::path base(dir.empty() ? "." : dir);

  if (format == "csv") {
    std::ofstream out((base / "results.csv").string());
    out << "replication,step_chosen,variable,is_true_nonnull,p_value,"
           "sigma_used,tie_flag\n";
    for (const VariableReport& t : rep.tests) {
      out << 0 << ',' << rep.selected_size << ',' << t.variable << ",NA,"
          << format_double(t.p_value) << ',' << format_double(rep.sigma_used)
          << ',' << (rep.tie ? "true" : "false") << '\n';
    }
  } else {
    json arr = json::array();
    for (const VariableReport& t : rep.tests) {
      arr.push_back({{"replication", 0},
                     {"step_chosen", rep.selected_size},
                     {"variable", t.variable},
                     {"is_true_nonnull", nullptr},
                     {"p_value", t.p_value},
                     {"sigma_used", rep.sigma_used},
                     {"tie_flag", rep.tie}});
    }
    std::ofstream((base / "results.json").string()) << arr.dump(2) << '\n';
  }

  json meta;
  meta["kind"] = "fit";
  meta["options"] = {
      {"response", rep.options.response},
      {"folds", rep.options.folds},
      {"steps", rep.options.steps},
      {"penalty", rep.options.penalty == PenaltyKind::kBic ? "bic" : "none"},
      {"sigma", rep.options.sigma ? json(*rep.options.sigma) : json("plugin")},
      {"fold_seed", rep.options.fold_seed ? json(*rep.options.fold_seed)
                                          : json("round_robin")},
      {"standardize", rep.options.standardize},
      {"include_null_model", rep.options.include_null_model},
      {"refit_event", rep.options.refit_event}};
  meta["n"] = rep.n;
  meta["p"] = rep.p;
  meta["predictor_names"] = rep.predictor_names;
  meta["fold_of"] = rep.folds.fold_of;
  meta["selected_size"] = rep.selected_size;
  meta["tie"] = rep.tie;
  meta["steps_effective"] = rep.steps_effective;
  meta["steps_truncated"] = rep.steps_truncated;
  meta["active_set"] = rep.active_set;
  meta["sigma_used"] = rep.sigma_used;
  meta["sigma_source"] =
      rep.sigma_source == SigmaSource::kPlugin ? "plugin" : "known";
  json tests = json::array();
  for (const VariableReport& t : rep.tests) {
    json tr = json::array();
    for (const Interval& iv : t.truncation.intervals()) {
      tr.push_back({endpoint_json(iv.lo), endpoint_json(iv.hi)});
    }
    tests.push_back({{"variable", t.variable},
                     {"name", t.name},
                     {"coefficient", t.coefficient},
                     {"statistic", t.statistic},
                     {"p_value", t.p_value},
                     {"truncation", std::move(tr)}});
  }
  meta["tests"] = std::move(tests);
  std::ofstream((base / "meta.json").string()) << meta.dump(2) << '\n';
}

}  // namespace cvinfer
