#include "cvinfer/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "cvinfer/errors.hpp"
#include "cvinfer/rng.hpp"

namespace cvinfer {

void SimConfig::validate() const {
  if (n < 1 || p < 1 || k < 1 || steps < 1) {
    throw ContractViolation("SimConfig: n, p, K, S must be positive");
  }
  if (replications < 0) {
    throw ContractViolation("SimConfig: replications must be >= 0");
  }
  if (sparsity < 0 || sparsity > p) {
    throw ContractViolation("SimConfig: sparsity must lie in [0, p]");
  }
  if (!(coef_magnitude >= 0.0)) {
    throw ContractViolation("SimConfig: coef_magnitude must be >= 0");
  }
  if (!(sigma > 0.0)) throw ContractViolation("SimConfig: sigma must be > 0");
  if (k > n) throw ContractViolation("SimConfig: K must be <= n");
  const int max_fold = (n + k - 1) / k;
  const int min_train = n - max_fold;
  if (steps > std::min(min_train, p)) {
    throw ContractViolation(
        "SimConfig: S exceeds min(smallest training-set size, p)");
  }
  if (sigma_mode == SigmaSource::kPlugin && n <= p) {
    throw ContractViolation(
        "SimConfig: plug-in sigma needs n > p; pass sigma explicitly");
  }
  if (threads < 0) throw ContractViolation("SimConfig: threads must be >= 0");
}

ReplicationData generate_replication(const SimConfig& cfg, int rep) {
  ReplicationData data;
  data.sub_seed = CounterRng::substream_seed(cfg.seed, rep);
  data.fold_sub_seed = CounterRng::substream_seed(cfg.fold_seed, rep);
  CounterRng rng(data.sub_seed);

  // Draw order is fixed: design row by row, then the support shuffle, then
  // one sign per nonzero coefficient, then the noise vector.
  data.x.resize(cfg.n, cfg.p);
  for (int i = 0; i < cfg.n; ++i) {
    for (int j = 0; j < cfg.p; ++j) data.x(i, j) = rng.standard_normal();
  }
  if (cfg.scaling == ColumnScaling::kUnitNorm) {
    for (int j = 0; j < cfg.p; ++j) data.x.col(j) /= data.x.col(j).norm();
  }

  data.beta = Vector::Zero(cfg.p);
  if (cfg.sparsity > 0) {
    std::vector<int> order(cfg.p);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    data.true_support.assign(order.begin(), order.begin() + cfg.sparsity);
    std::sort(data.true_support.begin(), data.true_support.end());
    for (int j : data.true_support) {
      const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
      data.beta(j) = sign * cfg.coef_magnitude;
    }
  }

  data.y = data.x * data.beta;
  for (int i = 0; i < cfg.n; ++i) {
    data.y(i) += cfg.sigma * rng.standard_normal();
  }

  data.folds = FoldAssignment::shuffled(cfg.n, cfg.k, data.fold_sub_seed);
  return data;
}

ReplicationRecord run_replication(const SimConfig& cfg,
                                  const ReplicationData& data, int rep) {
  ReplicationRecord rec;
  rec.replication = rep;
  rec.sub_seed = data.sub_seed;
  rec.fold_sub_seed = data.fold_sub_seed;
  rec.fold_of = data.folds.fold_of;
  try {
    CvOptions options;
    options.penalty = cfg.penalty;
    options.include_null_model = cfg.include_null_model;
    options.refit_event = cfg.refit_event;

    const CvQuadratic cvq =
        assemble_cv(data.x, data.y, data.folds, cfg.steps, options);
    const CvSelection sel = select_sparsity(cvq, data.y, options);
    rec.selected_size = sel.selected_size;
    rec.tie = sel.tie;
    rec.active_set = sel.active_set;

    for (int j : sel.active_set) {
      const SelectiveTestResult t = selective_test(
          data.x, data.y, sel, j,
          cfg.sigma_mode == SigmaSource::kKnown
              ? std::optional<double>(cfg.sigma)
              : std::nullopt);
      ResultRow row;
      row.replication = rep;
      row.step_chosen = sel.selected_size;
      row.variable = j;
      row.is_true_nonnull = data.beta(j) != 0.0;
      row.p_value = t.p_value;
      row.sigma_used = t.sigma;
      row.tie_flag = sel.tie;
      rec.rows.push_back(row);
      rec.truncations.push_back(t.truncation);
    }
  } catch (const std::runtime_error& e) {
    // Numerical or event-consistency trouble on this draw only; the caller
    // enforces the overall skip budget.
    rec.skipped = true;
    rec.skip_reason = e.what();
    rec.rows.clear();
    rec.truncations.clear();
  }
  return rec;
}

SimulationResult simulate(const SimConfig& cfg) {
  cfg.validate();
  SimulationResult out;
  out.records.resize(cfg.replications);
  if (cfg.replications == 0) return out;

  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  const int n_threads = std::max(
      1, std::min(cfg.threads > 0 ? cfg.threads : std::max(hw, 1),
                  cfg.replications));

  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const int rep = next.fetch_add(1);
      if (rep >= cfg.replications) return;
      try {
        const ReplicationData data = generate_replication(cfg, rep);
        out.records[rep] = run_replication(cfg, data, rep);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  for (const auto& rec : out.records) {
    if (rec.skipped) {
      ++out.n_skipped;
      continue;
    }
    out.rows.insert(out.rows.end(), rec.rows.begin(), rec.rows.end());
  }
  if (out.n_skipped * 100 > cfg.replications) {
    throw NumericalFailure(
        "simulate: more than 1% of replications failed (" +
        std::to_string(out.n_skipped) + " of " +
        std::to_string(cfg.replications) + ")");
  }
  return out;
}

}  // namespace cvinfer
