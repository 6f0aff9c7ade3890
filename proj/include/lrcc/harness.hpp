#pragma once
//
// Monte Carlo experiment harness: deterministic trial driving, the standard
// experiment definitions, and CSV/plot-data emission.
//
// Determinism contract: a given (config, seed) produces byte-identical CSV
// output, independent of how trials are scheduled across threads. Each trial
// owns an RNG stream derived from (seed, sweep index, trial index) and
// results are reduced in trial order.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lrcc/analysis.hpp"
#include "lrcc/estimator.hpp"
#include "lrcc/scenario.hpp"

namespace lrcc::harness {

struct ResultRow {
  std::string sweep_name;
  double sweep_value = 0.0;
  std::string method;
  double mean_sinr_db = 0.0;
  double stderr_db = 0.0;
  double mean_sinr_max_db = 0.0;
  int trials = 0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
};

namespace detail {

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double stderr_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1)) /
         std::sqrt(static_cast<double>(v.size()));
}

inline double clamped_db(double linear) {
  return linear_to_db(std::max(linear, 1e-300));
}

}  // namespace detail

// Runs fn(0..count-1), strided across threads. Results must be written to
// per-index slots; reduction order is the caller's responsibility.
inline void parallel_for_trials(int count, int threads,
                                const std::function<void(int)>& fn) {
  if (threads <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    threads = static_cast<int>(hw == 0 ? 1 : std::min(hw, 8u));
  }
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int t = 0; t < count; ++t) fn(t);
    return;
  }
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int worker = 0; worker < threads; ++worker) {
    pool.emplace_back([&, worker] {
      try {
        for (int t = worker; t < count; t += threads) fn(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct PointSetting {
  double eps_max = 0.2;
  double p_t_dbw = 1.0;
  double snr_db = 10.0;
};

struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

inline SweepAxis sweep_axis(const ScenarioConfig& c) {
  if (c.eps_max.size() > 1) return {"eps_max", c.eps_max};
  if (c.P_T_dbw.size() > 1) return {"P_T_dbw", c.P_T_dbw};
  return {"snr_db", c.snr_db};
}

inline PointSetting point_at(const ScenarioConfig& c, const SweepAxis& axis,
                             std::size_t index) {
  PointSetting p{c.eps_max[0], c.P_T_dbw[0], c.snr_db[0]};
  if (axis.name == "eps_max") p.eps_max = axis.values[index];
  else if (axis.name == "P_T_dbw") p.p_t_dbw = axis.values[index];
  else p.snr_db = axis.values[index];
  return p;
}

struct MethodOutcome {
  double realized_sinr = 0.0;  // true-moment SINR, power-normalized
  double sinr_max = 0.0;       // solver's own achievable-SINR value
};

struct TrialOutput {
  std::vector<MethodOutcome> methods;  // aligned with config.methods
  std::vector<double> trace_realized;  // per-snapshot, when requested
  std::vector<double> trace_sinr_max;
};

// One Monte Carlo trial: draw the network, run every enabled method, score
// each weight vector on the trial's exact moments at the common power
// budget. Only lrcc consumes RNG draws after the setup block, so the stream
// layout does not depend on which methods are enabled. All sweep points
// share per-trial streams (common random numbers), which pairs the sweep
// comparison trial by trial.
inline TrialOutput run_trial(const ScenarioConfig& config,
                             const PointSetting& point, int trial_index,
                             int forced_principal_count = 0,
                             bool want_trace = false) {
  Rng rng(derive_trial_seed(config.seed, 0,
                            static_cast<std::uint64_t>(trial_index)));
  channel::NetworkGeometry geometry = channel::sample_geometry(rng, config.M);
  channel::LargeScaleGains gains = channel::sample_large_scale_gains(
      rng, geometry, db_to_linear(config.L_db), config.rho, config.sigma_s_db);
  channel::TrueChannels truth =
      channel::sample_true_channels(rng, geometry, gains, config.K);
  signals::LinkBudget budget = signals::noise_power_for_snr(
      point.snr_db, config.inr_db, 1.0, config.K - 1,
      config.interferer_power_ratio);
  signals::SourceConfig sources;
  sources.powers.resize(config.K);
  sources.powers(0) = 1.0;
  for (int k = 1; k < config.K; ++k)
    sources.powers(k) = budget.interferer_powers(k - 1);
  channel::MismatchedChannels observed =
      channel::apply_mismatch(rng, truth, point.eps_max);
  signals::MomentSet exact =
      signals::exact_moments(truth.F, truth.g, sources, budget.noise_power);
  const double total_power = db_to_linear(point.p_t_dbw);

  TrialOutput out;
  out.methods.resize(config.methods.size());
  for (std::size_t i = 0; i < config.methods.size(); ++i) {
    const std::string& method = config.methods[i];
    if (method == "lrcc") {
      estimator::TrialInputs inputs{truth,        observed,
                                    sources,      budget.noise_power,
                                    total_power,  point.eps_max};
      estimator::LrccOptions options;
      options.forced_principal_count = forced_principal_count;
      std::vector<estimator::IterationRecord> trace =
          estimator::run_lrcc(inputs, config.mode, config.snapshots, rng,
                              options);
      if (want_trace) {
        out.trace_realized.reserve(trace.size());
        out.trace_sinr_max.reserve(trace.size());
        for (const estimator::IterationRecord& r : trace) {
          out.trace_realized.push_back(r.realized_sinr);
          out.trace_sinr_max.push_back(r.solution.sinr_max);
        }
      }
      out.methods[i] = {trace.back().realized_sinr,
                        trace.back().solution.sinr_max};
    } else if (method == "perfect_csi") {
      estimator::BeamformerSolution sol =
          estimator::baseline_perfect_csi(exact, total_power);
      out.methods[i] = {
          signals::power_normalized_sinr(sol.w, exact, total_power),
          sol.sinr_max};
    } else {  // non_robust
      estimator::BeamformerSolution sol = estimator::baseline_non_robust(
          observed, sources, budget.noise_power, total_power);
      out.methods[i] = {
          signals::power_normalized_sinr(sol.w, exact, total_power),
          sol.sinr_max};
    }
  }
  return out;
}

inline ExperimentResult run_experiment(const ScenarioConfig& config,
                                       int threads = 0) {
  require_valid(config);
  SweepAxis axis = sweep_axis(config);
  ExperimentResult result;
  for (std::size_t s = 0; s < axis.values.size(); ++s) {
    PointSetting point = point_at(config, axis, s);
    std::vector<TrialOutput> outputs(config.trials);
    parallel_for_trials(config.trials, threads, [&](int t) {
      outputs[t] = run_trial(config, point, t);
    });
    for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
      std::vector<double> sinr_db(config.trials), max_db(config.trials);
      for (int t = 0; t < config.trials; ++t) {
        sinr_db[t] = detail::clamped_db(outputs[t].methods[mi].realized_sinr);
        max_db[t] = detail::clamped_db(outputs[t].methods[mi].sinr_max);
      }
      result.rows.push_back({axis.name, axis.values[s], config.methods[mi],
                             detail::mean(sinr_db), detail::stderr_of(sinr_db),
                             detail::mean(max_db), config.trials});
    }
  }
  return result;
}

// Per-snapshot trajectory at a single operating point. lrcc rows vary with
// the snapshot index; the closed-form baselines are flat reference lines.
inline ExperimentResult run_snapshot_trace(const ScenarioConfig& config,
                                           int threads = 0) {
  require_valid(config);
  if (sweep_axis(config).values.size() > 1)
    throw std::invalid_argument(
        "run_snapshot_trace: config must not carry a sweep");
  PointSetting point{config.eps_max[0], config.P_T_dbw[0], config.snr_db[0]};
  std::vector<TrialOutput> outputs(config.trials);
  parallel_for_trials(config.trials, threads, [&](int t) {
    outputs[t] = run_trial(config, point, t, 0, /*want_trace=*/true);
  });

  ExperimentResult result;
  for (int snap = 1; snap <= config.snapshots; ++snap) {
    for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
      std::vector<double> sinr_db(config.trials), max_db(config.trials);
      for (int t = 0; t < config.trials; ++t) {
        if (config.methods[mi] == "lrcc" &&
            !outputs[t].trace_realized.empty()) {
          sinr_db[t] = detail::clamped_db(outputs[t].trace_realized[snap - 1]);
          max_db[t] = detail::clamped_db(outputs[t].trace_sinr_max[snap - 1]);
        } else {
          sinr_db[t] = detail::clamped_db(outputs[t].methods[mi].realized_sinr);
          max_db[t] = detail::clamped_db(outputs[t].methods[mi].sinr_max);
        }
      }
      result.rows.push_back({"snapshot", static_cast<double>(snap),
                             config.methods[mi], detail::mean(sinr_db),
                             detail::stderr_of(sinr_db), detail::mean(max_db),
                             config.trials});
    }
  }
  return result;
}

// SINR vs forced principal-component count (1..M), plus the automatic
// selection as sweep value 0 under method name "lrcc_auto". All runs share
// per-trial streams so the comparison is paired across counts.
inline ExperimentResult run_pc_selection(const ScenarioConfig& config,
                                         int threads = 0) {
  require_valid(config);
  if (sweep_axis(config).values.size() > 1)
    throw std::invalid_argument(
        "run_pc_selection: config must not carry a sweep");
  ScenarioConfig lrcc_only = config;
  lrcc_only.methods = {"lrcc"};
  PointSetting point{config.eps_max[0], config.P_T_dbw[0], config.snr_db[0]};

  ExperimentResult result;
  auto run_forced = [&](int forced, const std::string& method_name) {
    std::vector<TrialOutput> outputs(lrcc_only.trials);
    parallel_for_trials(lrcc_only.trials, threads, [&](int t) {
      outputs[t] = run_trial(lrcc_only, point, t, forced);
    });
    std::vector<double> sinr_db(lrcc_only.trials), max_db(lrcc_only.trials);
    for (int t = 0; t < lrcc_only.trials; ++t) {
      sinr_db[t] = detail::clamped_db(outputs[t].methods[0].realized_sinr);
      max_db[t] = detail::clamped_db(outputs[t].methods[0].sinr_max);
    }
    result.rows.push_back({"forced_N", static_cast<double>(forced),
                           method_name, detail::mean(sinr_db),
                           detail::stderr_of(sinr_db), detail::mean(max_db),
                           lrcc_only.trials});
  };
  run_forced(0, "lrcc_auto");
  for (int n = 1; n <= config.M; ++n) run_forced(n, "lrcc");
  return result;
}

// ---------------------------------------------------------------------------
// MSE-bounds figure

struct MseBoundsRow {
  double lambda_max = 0.0;
  double sigma_ratio = 0.0;  // spread / lambda_max
  double lower = 0.0;
  double upper = 0.0;
  double empirical = 0.0;  // sampled additive-model MSE
};

namespace detail {

inline CMat random_unitary(Rng& rng, int m) {
  CMat gaussian(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) gaussian(i, j) = rng.complex_normal(1.0);
  Eigen::HouseholderQR<CMat> qr(gaussian);
  return qr.householderQ();
}

// Hermitian PSD matrix with the prescribed largest eigenvalue and spread;
// interior eigenvalues uniform in [lambda_min, lambda_max].
inline CMat random_spread_covariance(Rng& rng,
                                     const analysis::EigenSpreadSpec& spec) {
  RVec eigs(spec.dim);
  eigs(0) = spec.lambda_max;
  double lambda_min = spec.lambda_max - spec.spread;
  if (spec.dim > 1) eigs(spec.dim - 1) = lambda_min;
  for (int i = 1; i + 1 < spec.dim; ++i)
    eigs(i) = rng.uniform(lambda_min, spec.lambda_max);
  CMat q = random_unitary(rng, spec.dim);
  return q * eigs.asDiagonal() * q.adjoint();
}

}  // namespace detail

// Analytic bounds plus a sampled additive-model MSE for covariances drawn
// with prescribed (lambda_max, spread). Grid: lambda_max in 0.1..1.0, spread
// ratios {0.9, 0.5, 0} mirroring the standard two test cases plus the
// zero-spread control.
inline std::vector<MseBoundsRow> run_mse_bounds_figure(
    const ScenarioConfig& config) {
  require_valid(config);
  const double eps_max = config.eps_max[0];
  const std::vector<double> ratios = {0.9, 0.5, 0.0};
  std::vector<MseBoundsRow> rows;
  for (std::size_t ri = 0; ri < ratios.size(); ++ri) {
    for (int li = 0; li < 10; ++li) {
      double lambda_max = 0.1 * (li + 1);
      analysis::EigenSpreadSpec spec{lambda_max, ratios[ri] * lambda_max,
                                     config.M};
      analysis::MseBounds bounds = analysis::mse_bounds(spec, eps_max);
      double acc = 0.0;
      for (int trial = 0; trial < config.trials; ++trial) {
        Rng rng(derive_trial_seed(config.seed, ri * 100 + li, trial));
        CMat r = detail::random_spread_covariance(rng, spec);
        double frob = r.norm();
        // Sampled error energy: eps ~ U(0, eps_max], e ~ CN(0, eps*||R||_F I)
        double trial_mse = 0.0;
        const int draws = 32;
        for (int d = 0; d < draws; ++d) {
          double eps = rng.uniform_positive(eps_max);
          CVec e = rng.complex_normal_vector(config.M, eps * frob);
          trial_mse += e.squaredNorm();
        }
        acc += trial_mse / draws;
      }
      rows.push_back({lambda_max, ratios[ri], bounds.lower, bounds.upper,
                      acc / config.trials});
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Complexity probe

struct ComplexityRow {
  int dim = 0;
  double median_seconds = 0.0;
};

// Well-conditioned random instance for solver benchmarks and contract tests.
inline signals::MomentSet random_solver_instance(Rng& rng, int m, int k,
                                                 double noise_power = 0.1) {
  CMat F(m, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < m; ++i) F(i, j) = rng.complex_normal(1.0);
  CVec g = rng.complex_normal_vector(m, 1.0);
  signals::SourceConfig sources;
  sources.powers.resize(k);
  sources.powers(0) = 1.0;
  for (int j = 1; j < k; ++j) sources.powers(j) = 0.5;
  return signals::exact_moments(F, g, sources, noise_power);
}

// Times solve_weights on random instances; median over `repetitions` runs
// per size. Timings are physical measurements and are the one output exempt
// from the byte-identical determinism contract.
inline std::vector<ComplexityRow> run_complexity_probe(
    const std::vector<int>& m_list, int repetitions = 50,
    std::uint64_t seed = 1) {
  if (m_list.size() < 4)
    throw std::invalid_argument("run_complexity_probe: need >= 4 sizes");
  for (std::size_t i = 1; i < m_list.size(); ++i)
    if (m_list[i] <= m_list[i - 1])
      throw std::invalid_argument("run_complexity_probe: sizes must ascend");
  repetitions = std::max(repetitions, 20);

  std::vector<ComplexityRow> rows;
  for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
    const int m = m_list[mi];
    Rng rng(derive_trial_seed(seed, mi, 0));
    std::vector<signals::MomentSet> instances;
    const int pool = 8;
    instances.reserve(pool);
    for (int i = 0; i < pool; ++i)
      instances.push_back(random_solver_instance(rng, m, 3));
    double sink = estimator::solve_weights(instances[0], 1.26).sinr_max;
    std::vector<double> seconds(repetitions);
    for (int r = 0; r < repetitions; ++r) {
      const signals::MomentSet& inst = instances[r % pool];
      auto t0 = std::chrono::steady_clock::now();
      estimator::BeamformerSolution sol = estimator::solve_weights(inst, 1.26);
      auto t1 = std::chrono::steady_clock::now();
      sink += sol.sinr_max;
      seconds[r] = std::chrono::duration<double>(t1 - t0).count();
    }
    if (!std::isfinite(sink))
      throw std::runtime_error("run_complexity_probe: non-finite solve");
    std::nth_element(seconds.begin(), seconds.begin() + repetitions / 2,
                     seconds.end());
    rows.push_back({m, seconds[repetitions / 2]});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// CSV emission

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::ofstream open_output(const std::string& path, const char* who) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error(std::string(who) + ": cannot open '" + path +
                             "' for writing");
  return out;
}

}  // namespace detail

inline constexpr const char* kExperimentCsvHeader =
    "sweep_name,sweep_value,method,mean_sinr_db,stderr_db,mean_sinr_max_db,"
    "trials";

inline void emit_csv(const ExperimentResult& result, const std::string& path) {
  std::ofstream out = detail::open_output(path, "emit_csv");
  out << kExperimentCsvHeader << "\n";
  for (const ResultRow& r : result.rows) {
    out << r.sweep_name << ',' << detail::format_double(r.sweep_value) << ','
        << r.method << ',' << detail::format_double(r.mean_sinr_db) << ','
        << detail::format_double(r.stderr_db) << ','
        << detail::format_double(r.mean_sinr_max_db) << ',' << r.trials
        << "\n";
  }
  out.flush();
  if (!out)
    throw std::runtime_error("emit_csv: write failed for '" + path + "'");
}

inline ExperimentResult parse_experiment_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("parse_experiment_csv: cannot open '" + path +
                             "'");
  std::string line;
  if (!std::getline(in, line) || line != kExperimentCsvHeader)
    throw std::runtime_error("parse_experiment_csv: bad header in '" + path +
                             "'");
  ExperimentResult result;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) fields.push_back(item);
    if (fields.size() != 7)
      throw std::runtime_error("parse_experiment_csv: bad row in '" + path +
                               "'");
    ResultRow row;
    row.sweep_name = fields[0];
    row.sweep_value = std::stod(fields[1]);
    row.method = fields[2];
    row.mean_sinr_db = std::stod(fields[3]);
    row.stderr_db = std::stod(fields[4]);
    row.mean_sinr_max_db = std::stod(fields[5]);
    row.trials = std::stoi(fields[6]);
    result.rows.push_back(std::move(row));
  }
  return result;
}

inline constexpr const char* kSeedDerivationNote =
    "per-trial stream seed: seed XOR splitmix64(splitmix64(1) + trial_index); "
    "sweep points share trial streams (common random numbers)";

// CSV plus a sidecar (<path>.meta.txt) naming axes and series.
inline void emit_plot_data(const ExperimentResult& result,
                           const std::string& path,
                           const std::string& description) {
  emit_csv(result, path);
  std::ofstream meta = detail::open_output(path + ".meta.txt",
                                           "emit_plot_data");
  meta << description << "\n";
  meta << "columns: " << kExperimentCsvHeader << "\n";
  meta << "x-axis: sweep_value ("
       << (result.rows.empty() ? std::string("none")
                               : result.rows.front().sweep_name)
       << ")\n";
  meta << "y-axis: mean_sinr_db (mean over per-trial output SINR in dB; "
          "stderr_db is its standard error)\n";
  std::vector<std::string> series;
  for (const ResultRow& r : result.rows)
    if (std::find(series.begin(), series.end(), r.method) == series.end())
      series.push_back(r.method);
  meta << "series:";
  for (const std::string& s : series) meta << ' ' << s;
  meta << "\n" << kSeedDerivationNote << "\n";
  meta.flush();
  if (!meta)
    throw std::runtime_error("emit_plot_data: write failed for '" + path +
                             ".meta.txt'");
}

inline void emit_mse_bounds_csv(const std::vector<MseBoundsRow>& rows,
                                const std::string& path) {
  std::ofstream out = detail::open_output(path, "emit_mse_bounds_csv");
  out << "lambda_max,sigma_ratio,lower_bound,upper_bound,empirical_mse\n";
  for (const MseBoundsRow& r : rows) {
    out << detail::format_double(r.lambda_max) << ','
        << detail::format_double(r.sigma_ratio) << ','
        << detail::format_double(r.lower) << ','
        << detail::format_double(r.upper) << ','
        << detail::format_double(r.empirical) << "\n";
  }
  out.flush();
  if (!out)
    throw std::runtime_error("emit_mse_bounds_csv: write failed for '" + path +
                             "'");
}

inline void emit_complexity_csv(const std::vector<ComplexityRow>& rows,
                                const std::string& path) {
  std::ofstream out = detail::open_output(path, "emit_complexity_csv");
  out << "M,median_solve_seconds\n";
  for (const ComplexityRow& r : rows)
    out << r.dim << ',' << detail::format_double(r.median_seconds) << "\n";
  out.flush();
  if (!out)
    throw std::runtime_error("emit_complexity_csv: write failed for '" + path +
                             "'");
}

// ---------------------------------------------------------------------------
// Experiment catalog

struct ExperimentInfo {
  std::string name;
  std::string description;
};

inline const std::vector<ExperimentInfo>& experiment_catalog() {
  static const std::vector<ExperimentInfo> kCatalog = {
      {"eps-sweep",
       "mean output SINR vs mismatch level eps_max (0.1..1.0), SNR 10 dB, "
       "P_T 1 dBW, INR 10 dB"},
      {"pt-sweep",
       "mean output SINR vs total relay power budget P_T (1..5 dBW), "
       "eps_max 0.5"},
      {"incoherent",
       "mean output SINR vs input SNR with one dominant interferer "
       "(INR 20 dB, power ratio 10, eps_max 0.2)"},
      {"snapshot-trace",
       "per-snapshot output SINR trajectory at SNR 10 dB in the incoherent "
       "scenario"},
      {"pc-selection",
       "mean output SINR vs forced principal-component count 1..M, plus the "
       "automatic selection (sweep value 0)"},
      {"mse-bounds",
       "channel-estimation MSE bounds and sampled additive-model MSE vs the "
       "largest covariance eigenvalue, spread ratios 0.9/0.5/0"},
      {"complexity",
       "median weight-solve time vs relay count M in {8,16,32,64,128}"},
  };
  return kCatalog;
}

inline ScenarioConfig default_config_for(const std::string& experiment) {
  ScenarioConfig c;
  if (experiment == "eps-sweep") {
    c.eps_max = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  } else if (experiment == "pt-sweep") {
    c.eps_max = {0.5};
    c.P_T_dbw = {1.0, 2.0, 3.0, 4.0, 5.0};
  } else if (experiment == "incoherent") {
    c.snr_db = {0.0, 5.0, 10.0, 15.0, 20.0};
    c.inr_db = 20.0;
    c.interferer_power_ratio = 10.0;
  } else if (experiment == "snapshot-trace") {
    c.inr_db = 20.0;
    c.interferer_power_ratio = 10.0;
  } else if (experiment == "pc-selection" || experiment == "mse-bounds" ||
             experiment == "complexity") {
    // base defaults
  } else {
    throw std::invalid_argument("unknown experiment '" + experiment + "'");
  }
  return c;
}

}  // namespace lrcc::harness
