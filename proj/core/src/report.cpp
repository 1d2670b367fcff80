#include "cvinfer/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "cvinfer/errors.hpp"

namespace cvinfer {

namespace {

using nlohmann::json;

const char* penalty_name(PenaltyKind p) {
  return p == PenaltyKind::kBic ? "bic" : "none";
}
const char* sigma_mode_name(SigmaSource s) {
  return s == SigmaSource::kPlugin ? "plugin" : "known";
}
const char* scaling_name(ColumnScaling s) {
  return s == ColumnScaling::kRaw ? "raw" : "unit_norm";
}

json endpoint_json(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

json truncation_json(const IntervalUnion& m) {
  json out = json::array();
  for (const Interval& iv : m.intervals()) {
    out.push_back({endpoint_json(iv.lo), endpoint_json(iv.hi)});
  }
  return out;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw NumericalFailure("cannot write '" + path + "'");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

void ensure_directory(const std::string& dir) {
  if (!dir.empty()) std::filesystem::create_directories(dir);
}

void write_rows_csv(const std::string& path,
                    const std::vector<ResultRow>& rows) {
  auto out = open_for_write(path);
  out << "replication,step_chosen,variable,is_true_nonnull,p_value,"
         "sigma_used,tie_flag\n";
  for (const ResultRow& r : rows) {
    out << r.replication << ',' << r.step_chosen << ',' << r.variable << ','
        << (r.is_true_nonnull ? "true" : "false") << ','
        << format_double(r.p_value) << ',' << format_double(r.sigma_used)
        << ',' << (r.tie_flag ? "true" : "false") << '\n';
  }
}

void write_rows_json(const std::string& path,
                     const std::vector<ResultRow>& rows) {
  json arr = json::array();
  for (const ResultRow& r : rows) {
    arr.push_back({{"replication", r.replication},
                   {"step_chosen", r.step_chosen},
                   {"variable", r.variable},
                   {"is_true_nonnull", r.is_true_nonnull},
                   {"p_value", r.p_value},
                   {"sigma_used", r.sigma_used},
                   {"tie_flag", r.tie_flag}});
  }
  open_for_write(path) << arr.dump(2) << '\n';
}

void write_dataset_csv(const std::string& path, const Matrix& x,
                       const Vector& y) {
  auto out = open_for_write(path);
  out << "y";
  for (int j = 0; j < x.cols(); ++j) out << ",x" << (j + 1);
  out << '\n';
  for (int i = 0; i < x.rows(); ++i) {
    out << format_double(y(i));
    for (int j = 0; j < x.cols(); ++j) out << ',' << format_double(x(i, j));
    out << '\n';
  }
}

std::vector<EcdfPoint> ecdf_points(const std::vector<ResultRow>& rows) {
  std::map<int, std::vector<double>> by_step;
  for (const ResultRow& r : rows) by_step[r.step_chosen].push_back(r.p_value);
  std::vector<EcdfPoint> out;
  for (auto& [step, ps] : by_step) {
    std::sort(ps.begin(), ps.end());
    for (std::size_t i = 0; i < ps.size(); ++i) {
      out.push_back({step, ps[i],
                     static_cast<double>(i + 1) / static_cast<double>(ps.size())});
    }
  }
  return out;
}

void write_ecdf_csv(const std::string& path,
                    const std::vector<EcdfPoint>& points) {
  auto out = open_for_write(path);
  out << "step,p_value,ecdf\n";
  for (const EcdfPoint& pt : points) {
    out << pt.step << ',' << format_double(pt.p_value) << ','
        << format_double(pt.ecdf) << '\n';
  }
}

namespace {

constexpr double kSvgW = 720.0, kSvgH = 520.0;
constexpr double kMl = 64.0, kMr = 170.0, kMt = 24.0, kMb = 56.0;

double px(double x) { return kMl + x * (kSvgW - kMl - kMr); }
double py(double y) { return kSvgH - kMb - y * (kSvgH - kMt - kMb); }

std::string staircase_path(const std::vector<std::pair<double, double>>& pts) {
  std::ostringstream ss;
  double prev_y = 0.0;
  ss << "M " << px(0) << ' ' << py(0);
  for (const auto& [p, e] : pts) {
    ss << " L " << px(p) << ' ' << py(prev_y) << " L " << px(p) << ' '
       << py(e);
    prev_y = e;
  }
  ss << " L " << px(1) << ' ' << py(prev_y);
  return ss.str();
}

}  // namespace

void write_ecdf_svg(const std::string& path,
                    const std::vector<EcdfPoint>& points) {
  static const char* kPalette[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44",
                                   "#66ccee", "#aa3377", "#cc6644", "#222255"};
  std::map<int, std::vector<std::pair<double, double>>> by_step;
  std::vector<double> pooled;
  for (const EcdfPoint& pt : points) {
    by_step[pt.step].push_back({pt.p_value, pt.ecdf});
    pooled.push_back(pt.p_value);
  }
  std::sort(pooled.begin(), pooled.end());
  std::vector<std::pair<double, double>> pooled_pts;
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    pooled_pts.push_back(
        {pooled[i], static_cast<double>(i + 1) / pooled.size()});
  }

  auto out = open_for_write(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSvgW
      << "\" height=\"" << kSvgH << "\" viewBox=\"0 0 " << kSvgW << ' '
      << kSvgH << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // frame and ticks
  out << "<rect x=\"" << px(0) << "\" y=\"" << py(1) << "\" width=\""
      << px(1) - px(0) << "\" height=\"" << py(0) - py(1)
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = t / 4.0;
    out << "<text x=\"" << px(v) << "\" y=\"" << py(0) + 20
        << "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#333\">" << v
        << "</text>\n";
    out << "<text x=\"" << px(0) - 8 << "\" y=\"" << py(v) + 4
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"#333\">" << v
        << "</text>\n";
  }
  out << "<text x=\"" << (px(0) + px(1)) / 2 << "\" y=\"" << kSvgH - 14
      << "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#333\">p-value"
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << (py(0) + py(1)) / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#333\" "
         "transform=\"rotate(-90 16 "
      << (py(0) + py(1)) / 2 << ")\">empirical CDF</text>\n";
  // uniform reference
  out << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1)
      << "\" y2=\"" << py(1)
      << "\" stroke=\"#888\" stroke-dasharray=\"5,4\"/>\n";

  double legend_y = kMt + 12;
  const double legend_x = kSvgW - kMr + 14;
  if (!pooled_pts.empty()) {
    out << "<path d=\"" << staircase_path(pooled_pts)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    out << "<line x1=\"" << legend_x << "\" y1=\"" << legend_y << "\" x2=\""
        << legend_x + 24 << "\" y2=\"" << legend_y
        << "\" stroke=\"black\" stroke-width=\"2\"/>"
        << "<text x=\"" << legend_x + 30 << "\" y=\"" << legend_y + 4
        << "\" font-size=\"12\" fill=\"#333\">pooled (" << pooled.size()
        << ")</text>\n";
    legend_y += 18;
  }
  int color = 0;
  for (const auto& [step, pts] : by_step) {
    const char* c = kPalette[color++ % 8];
    out << "<path d=\"" << staircase_path(pts) << "\" fill=\"none\" stroke=\""
        << c << "\" stroke-width=\"1.3\"/>\n";
    out << "<line x1=\"" << legend_x << "\" y1=\"" << legend_y << "\" x2=\""
        << legend_x + 24 << "\" y2=\"" << legend_y << "\" stroke=\"" << c
        << "\" stroke-width=\"1.3\"/>"
        << "<text x=\"" << legend_x + 30 << "\" y=\"" << legend_y + 4
        << "\" font-size=\"12\" fill=\"#333\">size " << step << " ("
        << pts.size() << ")</text>\n";
    legend_y += 18;
  }
  out << "</svg>\n";
}

void write_simulation_meta(const std::string& path, const SimConfig& cfg,
                           const SimulationResult& result) {
  json meta;
  meta["kind"] = "simulate";
  meta["config"] = {{"n", cfg.n},
                    {"p", cfg.p},
                    {"folds", cfg.k},
                    {"steps", cfg.steps},
                    {"sparsity", cfg.sparsity},
                    {"coef_magnitude", cfg.coef_magnitude},
                    {"sigma", cfg.sigma},
                    {"replications", cfg.replications},
                    {"seed", cfg.seed},
                    {"fold_seed", cfg.fold_seed},
                    {"penalty", penalty_name(cfg.penalty)},
                    {"sigma_mode", sigma_mode_name(cfg.sigma_mode)},
                    {"include_null_model", cfg.include_null_model},
                    {"refit_event", cfg.refit_event},
                    {"scaling", scaling_name(cfg.scaling)}};
  meta["n_rows"] = result.rows.size();
  meta["n_skipped"] = result.n_skipped;
  json reps = json::array();
  for (const ReplicationRecord& rec : result.records) {
    json r = {{"replication", rec.replication},
              {"sub_seed", rec.sub_seed},
              {"fold_sub_seed", rec.fold_sub_seed},
              {"skipped", rec.skipped},
              {"selected_size", rec.selected_size},
              {"tie", rec.tie},
              {"active_set", rec.active_set},
              {"fold_of", rec.fold_of}};
    if (rec.skipped) r["skip_reason"] = rec.skip_reason;
    json tests = json::array();
    for (std::size_t i = 0; i < rec.rows.size(); ++i) {
      tests.push_back({{"variable", rec.rows[i].variable},
                       {"p_value", rec.rows[i].p_value},
                       {"sigma_used", rec.rows[i].sigma_used},
                       {"truncation", truncation_json(rec.truncations[i])}});
    }
    r["tests"] = std::move(tests);
    reps.push_back(std::move(r));
  }
  meta["replications"] = std::move(reps);
  open_for_write(path) << meta.dump(2) << '\n';
}

void write_simulation_outputs(const std::string& dir,
                              const std::string& format, const SimConfig& cfg,
                              const SimulationResult& result,
                              bool dump_datasets) {
  if (format != "csv" && format != "json") {
    throw ContractViolation("write_simulation_outputs: format must be csv or "
                            "json");
  }
  ensure_directory(dir);
  const std::filesystem::path base(dir.empty() ? "." : dir);
  if (format == "csv") {
    write_rows_csv((base / "results.csv").string(), result.rows);
  } else {
    write_rows_json((base / "results.json").string(), result.rows);
  }
  write_simulation_meta((base / "meta.json").string(), cfg, result);
  const auto points = ecdf_points(result.rows);
  write_ecdf_csv((base / "ecdf.csv").string(), points);
  write_ecdf_svg((base / "ecdf.svg").string(), points);
  if (dump_datasets) {
    for (const ReplicationRecord& rec : result.records) {
      const ReplicationData data = generate_replication(cfg, rec.replication);
      write_dataset_csv(
          (base / ("dataset_rep" + std::to_string(rec.replication) + ".csv"))
              .string(),
          data.x, data.y);
    }
  }
}

}  // namespace cvinfer
