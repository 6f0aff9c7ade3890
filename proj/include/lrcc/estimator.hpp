#pragma once
//
// Low-rank / cross-correlation robust distributed beamforming (LRCC-RDB).
//
// The estimator tracks a sample cross-correlation vector (SCV) between the
// relay observations and the destination output, builds error spectrum
// matrices from time-averaged channel covariances, projects the SCV onto
// their principal subspaces to clean the channel estimates, and solves the
// SINR-maximizing weight problem in closed form through a whitened
// eigendecomposition. Two CSI regimes are supported: per-snapshot channel
// observations (covariances estimated recursively) or known second-order
// statistics (spectra built once).

#include <optional>
#include <stdexcept>
#include <vector>

#include "lrcc/channel.hpp"
#include "lrcc/rng.hpp"
#include "lrcc/signals.hpp"
#include "lrcc/spectral.hpp"
#include "lrcc/types.hpp"

namespace lrcc::estimator {

enum class CsiMode {
  kInstantaneous,           // per-snapshot observed channels available
  kSecondOrderStatistics,   // channel covariances known a priori
};

constexpr double kDefaultVarianceFraction = 0.95;
constexpr double kCovarianceInit = 0.01;

// Sentinel: derive the principal-count noise threshold from each spectrum
// (midpoint between its largest and median eigenvalue; the median tracks the
// flat error ridge). Any non-negative value is used as-is.
constexpr double kAutoNoiseThreshold = -1.0;

struct EstimatorState {
  CsiMode mode = CsiMode::kInstantaneous;
  int iteration = 0;
  CVec scv;                // q(i); starts as all-ones
  std::vector<CMat> R_f;   // per-source channel covariance estimates
  CMat R_g;

  static EstimatorState initial(int relay_count, int source_count,
                                CsiMode mode = CsiMode::kInstantaneous) {
    EstimatorState s;
    s.mode = mode;
    s.scv = CVec::Ones(relay_count);
    s.R_f.assign(source_count,
                 kCovarianceInit * CMat::Identity(relay_count, relay_count));
    s.R_g = kCovarianceInit * CMat::Identity(relay_count, relay_count);
    return s;
  }

  // Statistics mode: the generative covariances are supplied once and the
  // recursive updates are never applied.
  static EstimatorState with_statistics(int relay_count,
                                        std::vector<CMat> R_f_known,
                                        CMat R_g_known) {
    EstimatorState s;
    s.mode = CsiMode::kSecondOrderStatistics;
    s.scv = CVec::Ones(relay_count);
    s.R_f = std::move(R_f_known);
    s.R_g = std::move(R_g_known);
    return s;
  }
};

// q(i) = ((i-1) q(i-1) + x z*) / i. Equals the batch average over snapshots
// 1..i for every i >= 1; the all-ones initializer is annihilated at i = 1.
inline EstimatorState update_scv(EstimatorState state, const CVec& x,
                                 Complex z) {
  const int i = state.iteration + 1;
  state.scv = ((i - 1) * state.scv + x * std::conj(z)) / static_cast<double>(i);
  state.iteration = i;
  return state;
}

// R(i) = ((i-1) R(i-1) + v v^H) / i for each observed channel. Must follow
// update_scv within the same snapshot so both track the same index.
inline EstimatorState update_channel_covariances(EstimatorState state,
                                                 const CMat& F_hat_observed,
                                                 const CVec& g_hat_observed) {
  if (state.mode != CsiMode::kInstantaneous)
    throw std::logic_error(
        "update_channel_covariances: covariances are fixed in "
        "second-order-statistics mode");
  if (state.iteration < 1)
    throw std::logic_error(
        "update_channel_covariances: update_scv must run first");
  const double i = static_cast<double>(state.iteration);
  for (std::size_t k = 0; k < state.R_f.size(); ++k) {
    CVec f = F_hat_observed.col(static_cast<Eigen::Index>(k));
    state.R_f[k] = ((i - 1.0) * state.R_f[k] + f * f.adjoint()) / i;
  }
  state.R_g =
      ((i - 1.0) * state.R_g + g_hat_observed * g_hat_observed.adjoint()) / i;
  return state;
}

struct ErrorSpectra {
  std::vector<CMat> C_f;  // per-source error spectrum matrices
  CMat C_g;
  std::vector<spectral::EigenDecomposition> eig_f;
  spectral::EigenDecomposition eig_g;
  std::vector<int> count_f;  // selected principal counts
  int count_g = 0;
};

// Closed form of the uniform-mismatch integral:
//   C = eps_max * R + (eps_max^2 / 2) ||R||_F * I.
inline CMat error_spectrum(const CMat& R, double eps_max) {
  return eps_max * R +
         (eps_max * eps_max / 2.0) * R.norm() *
             CMat::Identity(R.rows(), R.cols());
}

namespace detail {
inline double resolve_noise_threshold(const RVec& descending_eigenvalues,
                                      double noise_threshold) {
  if (noise_threshold >= 0.0) return noise_threshold;
  const Eigen::Index m = descending_eigenvalues.size();
  double median = descending_eigenvalues(m / 2);
  return (descending_eigenvalues(0) + median) / 2.0;
}
}  // namespace detail

inline ErrorSpectra build_error_spectra(
    const std::vector<CMat>& R_f, const CMat& R_g, double eps_max,
    double noise_threshold = kAutoNoiseThreshold,
    double variance_fraction = kDefaultVarianceFraction) {
  ErrorSpectra spectra;
  spectra.C_f.reserve(R_f.size());
  spectra.eig_f.reserve(R_f.size());
  spectra.count_f.reserve(R_f.size());
  for (const CMat& r : R_f) {
    CMat c = error_spectrum(r, eps_max);
    spectral::EigenDecomposition d = spectral::eig_hermitian(c);
    spectra.count_f.push_back(spectral::select_principal_count(
        d.eigenvalues,
        detail::resolve_noise_threshold(d.eigenvalues, noise_threshold),
        variance_fraction));
    spectra.C_f.push_back(std::move(c));
    spectra.eig_f.push_back(std::move(d));
  }
  spectra.C_g = error_spectrum(R_g, eps_max);
  spectra.eig_g = spectral::eig_hermitian(spectra.C_g);
  spectra.count_g = spectral::select_principal_count(
      spectra.eig_g.eigenvalues,
      detail::resolve_noise_threshold(spectra.eig_g.eigenvalues,
                                      noise_threshold),
      variance_fraction);
  return spectra;
}

struct ChannelEstimates {
  std::vector<CVec> f;  // unit norm
  CVec g;               // unit norm
};

struct DegenerateProjectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
inline CVec project_and_normalize(const spectral::EigenDecomposition& d,
                                  int count, const CVec& q,
                                  const char* label) {
  CMat basis = d.eigenvectors.leftCols(count);
  CVec projected = basis * (basis.adjoint() * q);
  double norm = projected.norm();
  if (norm <= 1e-14 * q.norm())
    throw DegenerateProjectionError(
        std::string("estimate_channels: SCV is orthogonal to the ") + label +
        " subspace");
  return projected / norm;
}
}  // namespace detail

// f_hat_k = P_k q / ||P_k q||, g_hat = P q / ||P q||, with P_k spanned by the
// selected principal eigenvectors. forced_count overrides the automatic
// selection (used by the principal-component sweep); 0 keeps it.
inline ChannelEstimates estimate_channels(const ErrorSpectra& spectra,
                                          const CVec& q,
                                          int forced_count = 0) {
  if (q.size() == 0 || q.norm() == 0.0)
    throw std::invalid_argument("estimate_channels: SCV must be nonzero");
  ChannelEstimates est;
  est.f.reserve(spectra.C_f.size());
  for (std::size_t k = 0; k < spectra.C_f.size(); ++k) {
    int count = forced_count > 0 ? forced_count : spectra.count_f[k];
    est.f.push_back(detail::project_and_normalize(spectra.eig_f[k], count, q,
                                                  "source-channel"));
  }
  int count_g = forced_count > 0 ? forced_count : spectra.count_g;
  est.g = detail::project_and_normalize(spectra.eig_g, count_g, q,
                                        "relay-destination");
  return est;
}

struct ChannelEnergies {
  RVec f_squared;          // per-source ||f_k||^2 estimates
  double g_squared = 1.0;  // ||g||^2 estimate
};

// Channel energies recovered from the tracked covariances: the principal
// eigenvalue of each R, evaluated exactly as the Rayleigh quotient of the
// spectrum's top eigenvector (C = eps_max R + ridge*I shares eigenvectors
// with R). The projection estimates fix directions; these fix scales.
inline ChannelEnergies estimate_channel_energies(const ErrorSpectra& spectra,
                                                 const std::vector<CMat>& R_f,
                                                 const CMat& R_g) {
  ChannelEnergies energies;
  energies.f_squared.resize(static_cast<Eigen::Index>(R_f.size()));
  for (std::size_t k = 0; k < R_f.size(); ++k) {
    CVec c = spectra.eig_f[k].eigenvectors.col(0);
    energies.f_squared(static_cast<Eigen::Index>(k)) =
        std::max(0.0, std::real(Complex(c.adjoint() * R_f[k] * c)));
  }
  CVec c = spectra.eig_g.eigenvectors.col(0);
  energies.g_squared =
      std::max(0.0, std::real(Complex(c.adjoint() * R_g * c)));
  return energies;
}

// Moment estimates from the projected channel estimates with the channel
// energies restored; same algebra as signals::exact_moments.
inline signals::MomentSet assemble_moments(const ChannelEstimates& estimates,
                                           const ChannelEnergies& energies,
                                           const signals::SourceConfig& config,
                                           double noise_power) {
  const int k = config.source_count();
  CMat F(estimates.g.size(), k);
  for (int i = 0; i < k; ++i)
    F.col(i) = std::sqrt(energies.f_squared(i)) *
               estimates.f[static_cast<std::size_t>(i)];
  CVec g = std::sqrt(energies.g_squared) * estimates.g;
  return signals::exact_moments(F, g, config, noise_power);
}

// Unit-scale assembly, for callers that carry no energy information.
inline signals::MomentSet assemble_moments(const ChannelEstimates& estimates,
                                           const signals::SourceConfig& config,
                                           double noise_power) {
  ChannelEnergies unit;
  unit.f_squared = RVec::Ones(config.source_count());
  unit.g_squared = 1.0;
  return assemble_moments(estimates, unit, config, noise_power);
}

struct BeamformerSolution {
  CVec w;
  CVec w_tilde;    // unit-norm direction in the whitened domain
  double lambda = 0.0;    // largest eigenvalue of Theta
  double sinr_max = 0.0;  // P_T * lambda
  bool degenerate_top_eigenvalue = false;
  signals::MomentSet moments;  // the moments the solver was given
  CMat U;                      // interference-plus-noise matrix of `moments`
  double total_power = 0.0;
};

// Theta = (P_n I + P_T D^{-1/2} U D^{-1/2})^{-1} D^{-1/2} R_1 D^{-1/2}.
// Its principal eigenvector maximizes the whitened SINR objective on the
// unit sphere and P_T * lambda_max is the achieved model SINR.
inline CMat theta_matrix(const signals::MomentSet& moments,
                         double total_power) {
  const Eigen::Index m = moments.D.size();
  RVec dis = moments.D.cwiseSqrt().cwiseInverse();
  CMat r1t = dis.asDiagonal() * moments.R[0] * dis.asDiagonal();
  CMat ut =
      dis.asDiagonal() * signals::interference_matrix(moments) * dis.asDiagonal();
  CMat a = moments.noise_power * CMat::Identity(m, m) + total_power * ut;
  Eigen::LLT<CMat> llt(a);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("theta_matrix: loaded interference matrix is "
                             "not positive definite");
  return llt.solve(r1t);
}

inline BeamformerSolution solve_weights(const signals::MomentSet& moments,
                                        double total_power) {
  if (total_power <= 0.0)
    throw std::domain_error("solve_weights: total power must be > 0");
  if (moments.R.empty())
    throw std::invalid_argument("solve_weights: no source moments");
  if ((moments.D.array() <= 0.0).any())
    throw std::invalid_argument("solve_weights: D must be positive diagonal");

  const Eigen::Index m = moments.D.size();
  RVec dis = moments.D.cwiseSqrt().cwiseInverse();
  CMat r1t = dis.asDiagonal() * moments.R[0] * dis.asDiagonal();
  CMat ut =
      dis.asDiagonal() * signals::interference_matrix(moments) * dis.asDiagonal();
  CMat a = moments.noise_power * CMat::Identity(m, m) + total_power * ut;

  // Generalized problem R~1 v = lambda A v via the Cholesky split of A.
  Eigen::LLT<CMat> llt(a);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(
        "solve_weights: loaded interference matrix is not positive definite");
  CMat x = llt.matrixL().solve(r1t);
  CMat s = llt.matrixL().solve(x.adjoint()).adjoint();
  s = (s + CMat(s.adjoint())) / 2.0;  // clear roundoff skew before eig

  spectral::EigenDecomposition eig = spectral::eig_hermitian(s);
  BeamformerSolution sol;
  sol.degenerate_top_eigenvalue =
      eig.eigenvalues.size() > 1 &&
      eig.eigenvalues(0) - eig.eigenvalues(1) < spectral::kDegenerateGap;
  sol.lambda = eig.eigenvalues(0);
  CVec v = llt.matrixU().solve(eig.eigenvectors.col(0));
  v /= v.norm();
  spectral::fix_phase(v);
  sol.w_tilde = v;
  sol.w = std::sqrt(total_power) * dis.asDiagonal() * v;
  sol.sinr_max = total_power * sol.lambda;
  sol.moments = moments;
  sol.U = signals::interference_matrix(moments);
  sol.total_power = total_power;
  return sol;
}

inline BeamformerSolution baseline_perfect_csi(
    const signals::MomentSet& exact, double total_power) {
  return solve_weights(exact, total_power);
}

// Moments assembled straight from the observed mismatched channels, no
// projection and no perturbation correction.
inline BeamformerSolution baseline_non_robust(
    const channel::MismatchedChannels& observed,
    const signals::SourceConfig& config, double noise_power,
    double total_power) {
  signals::MomentSet moments = signals::exact_moments(
      observed.F_hat, observed.g_hat, config, noise_power);
  return solve_weights(moments, total_power);
}

struct TrialInputs {
  channel::TrueChannels truth;
  channel::MismatchedChannels observed;  // static draw; carries the trial eps
  signals::SourceConfig sources;
  double noise_power = 0.0;
  double total_power = 1.0;
  double eps_max = 0.0;
};

struct IterationRecord {
  int snapshot = 0;
  BeamformerSolution solution;
  ChannelEstimates estimates;
  ErrorSpectra spectra;
  CVec scv;                    // q(i) after this snapshot's update
  double realized_sinr = 0.0;  // true-moment SINR of w, power-normalized
};

struct LrccOptions {
  int forced_principal_count = 0;  // 0 = automatic selection
  double variance_fraction = kDefaultVarianceFraction;
  double noise_threshold = kAutoNoiseThreshold;
};

// Full iterative loop. Snapshot i is generated through the true channels
// with the previous weight vector (all-ones at start), the SCV and (in
// instantaneous mode) the covariance recursions advance, spectra and
// projections are rebuilt, and the weight problem is re-solved. In
// instantaneous mode each snapshot carries a fresh channel observation at
// the trial's fixed mismatch level, which is what makes the time averages
// converge to channel-plus-error covariances. A degenerate projection falls
// back to the previous snapshot's estimates.
inline std::vector<IterationRecord> run_lrcc(const TrialInputs& trial,
                                             CsiMode mode, int snapshots,
                                             Rng& rng,
                                             const LrccOptions& options = {}) {
  const int m = trial.truth.relay_count();
  const int k = trial.truth.source_count();

  EstimatorState state;
  ErrorSpectra spectra;
  if (mode == CsiMode::kSecondOrderStatistics) {
    std::vector<CMat> r_f;
    r_f.reserve(k);
    for (int i = 0; i < k; ++i) {
      CVec f = trial.truth.F.col(i);
      r_f.push_back(f * f.adjoint());
    }
    CMat r_g = trial.truth.g * trial.truth.g.adjoint();
    state = EstimatorState::with_statistics(m, std::move(r_f), std::move(r_g));
    spectra = build_error_spectra(state.R_f, state.R_g, trial.eps_max,
                                  options.noise_threshold,
                                  options.variance_fraction);
  } else {
    state = EstimatorState::initial(m, k, CsiMode::kInstantaneous);
  }

  signals::MomentSet exact = signals::exact_moments(
      trial.truth.F, trial.truth.g, trial.sources, trial.noise_power);

  CVec w = CVec::Ones(m);
  std::optional<ChannelEstimates> previous;
  std::vector<IterationRecord> trace;
  trace.reserve(snapshots);

  for (int i = 1; i <= snapshots; ++i) {
    signals::Snapshot snap =
        signals::make_snapshot(trial.truth.F, trial.truth.g, w, trial.sources,
                               trial.noise_power, rng);
    state = update_scv(std::move(state), snap.x, snap.z);

    if (mode == CsiMode::kInstantaneous) {
      channel::MismatchedChannels obs =
          channel::sample_observation(rng, trial.truth, trial.observed.epsilon);
      state = update_channel_covariances(std::move(state), obs.F_hat, obs.g_hat);
      spectra = build_error_spectra(state.R_f, state.R_g, trial.eps_max,
                                    options.noise_threshold,
                                    options.variance_fraction);
    }

    ChannelEstimates estimates;
    try {
      estimates =
          estimate_channels(spectra, state.scv, options.forced_principal_count);
    } catch (const DegenerateProjectionError&) {
      if (!previous) throw;
      estimates = *previous;
    }
    previous = estimates;

    ChannelEnergies energies =
        estimate_channel_energies(spectra, state.R_f, state.R_g);
    signals::MomentSet moments = assemble_moments(estimates, energies,
                                                  trial.sources,
                                                  trial.noise_power);
    BeamformerSolution sol = solve_weights(moments, trial.total_power);

    IterationRecord record;
    record.snapshot = i;
    record.realized_sinr =
        signals::power_normalized_sinr(sol.w, exact, trial.total_power);
    record.estimates = std::move(estimates);
    record.spectra = spectra;
    record.scv = state.scv;
    w = sol.w;
    record.solution = std::move(sol);
    trace.push_back(std::move(record));
  }
  return trace;
}

}  // namespace lrcc::estimator
