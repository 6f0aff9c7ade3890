// Estimator tests: recursion-vs-batch oracles, error-spectrum quadrature,
// projection estimates, the closed-form weight solver, the full iterative
// loop in both CSI modes, and the baselines.

#include "lrcc/estimator.hpp"

#include <gtest/gtest.h>

#include "lrcc/channel.hpp"

using namespace lrcc;
using namespace lrcc::estimator;

namespace {

signals::SourceConfig make_sources(std::initializer_list<double> powers) {
  signals::SourceConfig c;
  c.powers.resize(static_cast<Eigen::Index>(powers.size()));
  Eigen::Index i = 0;
  for (double p : powers) c.powers(i++) = p;
  return c;
}

struct TestTrial {
  channel::TrueChannels truth;
  channel::MismatchedChannels observed;
  signals::SourceConfig sources;
  signals::MomentSet exact;
  double noise_power;
  double total_power;
  double eps_max;

  TrialInputs inputs() const {
    return {truth, observed, sources, noise_power, total_power, eps_max};
  }
};

TestTrial make_trial(std::uint64_t seed, double eps_max, double snr_db = 10.0,
                     double inr_db = 10.0, double ratio = 1.0,
                     double p_t_dbw = 1.0, int m = 8, int k = 3) {
  Rng rng(seed);
  TestTrial t;
  channel::NetworkGeometry geo = channel::sample_geometry(rng, m);
  channel::LargeScaleGains gains =
      channel::sample_large_scale_gains(rng, geo, 10.0, 2.0, 3.0);
  t.truth = channel::sample_true_channels(rng, geo, gains, k);
  signals::LinkBudget budget =
      signals::noise_power_for_snr(snr_db, inr_db, 1.0, k - 1, ratio);
  t.sources.powers.resize(k);
  t.sources.powers(0) = 1.0;
  for (int i = 1; i < k; ++i)
    t.sources.powers(i) = budget.interferer_powers(i - 1);
  t.noise_power = budget.noise_power;
  t.observed = channel::apply_mismatch(rng, t.truth, eps_max);
  t.exact = signals::exact_moments(t.truth.F, t.truth.g, t.sources,
                                   t.noise_power);
  t.total_power = db_to_linear(p_t_dbw);
  t.eps_max = eps_max;
  return t;
}

CMat random_psd(Rng& rng, int m, int rank) {
  CMat b(m, rank);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < rank; ++j) b(i, j) = rng.complex_normal(1.0);
  return b * b.adjoint();
}

}  // namespace

TEST(EstimatorState, InitializationMatchesConvention) {
  EstimatorState s = EstimatorState::initial(8, 3);
  EXPECT_EQ(s.iteration, 0);
  EXPECT_EQ((s.scv - CVec::Ones(8)).norm(), 0.0);
  ASSERT_EQ(s.R_f.size(), 3u);
  for (const CMat& r : s.R_f)
    EXPECT_EQ((r - 0.01 * CMat::Identity(8, 8)).norm(), 0.0);
  EXPECT_EQ((s.R_g - 0.01 * CMat::Identity(8, 8)).norm(), 0.0);
}

TEST(UpdateScv, FirstIterationAnnihilatesInitializer) {
  Rng rng(1);
  EstimatorState s = EstimatorState::initial(4, 1);
  CVec x = rng.complex_normal_vector(4, 1.0);
  Complex z = rng.complex_normal(1.0);
  s = update_scv(std::move(s), x, z);
  EXPECT_EQ(s.iteration, 1);
  EXPECT_EQ((s.scv - x * std::conj(z)).norm(), 0.0);
}

TEST(UpdateScv, ConstantProductIsFixedPoint) {
  Rng rng(2);
  CVec x = rng.complex_normal_vector(4, 1.0);
  Complex z = rng.complex_normal(1.0);
  EstimatorState s = EstimatorState::initial(4, 1);
  for (int i = 0; i < 20; ++i) {
    s = update_scv(std::move(s), x, z);
    EXPECT_LT((s.scv - x * std::conj(z)).norm(), 1e-13);
  }
}

TEST(UpdateScv, RecursionEqualsBatchMean) {
  Rng rng(3);
  EstimatorState s = EstimatorState::initial(8, 1);
  CVec batch = CVec::Zero(8);
  for (int i = 1; i <= 100; ++i) {
    CVec x = rng.complex_normal_vector(8, 1.0);
    Complex z = rng.complex_normal(1.0);
    batch += x * std::conj(z);
    s = update_scv(std::move(s), x, z);
    CVec expected = batch / static_cast<double>(i);
    EXPECT_LT((s.scv - expected).norm(), 1e-12 * (1.0 + expected.norm()));
  }
}

TEST(UpdateCovariances, FirstIterationIsRankOneOuterProduct) {
  Rng rng(4);
  EstimatorState s = EstimatorState::initial(4, 2);
  s = update_scv(std::move(s), rng.complex_normal_vector(4, 1.0),
                 rng.complex_normal(1.0));
  CMat f(4, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) f(i, j) = rng.complex_normal(1.0);
  CVec g = rng.complex_normal_vector(4, 1.0);
  s = update_channel_covariances(std::move(s), f, g);
  for (int k = 0; k < 2; ++k) {
    CMat expected = f.col(k) * f.col(k).adjoint();
    EXPECT_LT((s.R_f[k] - expected).norm(), 1e-14);
  }
  EXPECT_LT((s.R_g - g * g.adjoint()).norm(), 1e-14);
}

TEST(UpdateCovariances, RecursionEqualsBatchMean) {
  Rng rng(5);
  EstimatorState s = EstimatorState::initial(6, 2);
  CMat batch0 = CMat::Zero(6, 6), batch1 = CMat::Zero(6, 6),
       batch_g = CMat::Zero(6, 6);
  for (int i = 1; i <= 100; ++i) {
    s = update_scv(std::move(s), rng.complex_normal_vector(6, 1.0),
                   rng.complex_normal(1.0));
    CMat f(6, 2);
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 2; ++c) f(r, c) = rng.complex_normal(1.0);
    CVec g = rng.complex_normal_vector(6, 1.0);
    batch0 += f.col(0) * f.col(0).adjoint();
    batch1 += f.col(1) * f.col(1).adjoint();
    batch_g += g * g.adjoint();
    s = update_channel_covariances(std::move(s), f, g);
    EXPECT_LT((s.R_f[0] - batch0 / i).norm(), 1e-12 * (1.0 + batch0.norm()));
    EXPECT_LT((s.R_f[1] - batch1 / i).norm(), 1e-12 * (1.0 + batch1.norm()));
    EXPECT_LT((s.R_g - batch_g / i).norm(), 1e-12 * (1.0 + batch_g.norm()));
    EXPECT_TRUE(spectral::is_hermitian(s.R_f[0], 1e-12));
    EXPECT_TRUE(spectral::is_hermitian(s.R_g, 1e-12));
  }
}

TEST(UpdateCovariances, StatisticsModeRejectsUpdates) {
  std::vector<CMat> r_f = {CMat::Identity(4, 4)};
  EstimatorState s =
      EstimatorState::with_statistics(4, r_f, CMat::Identity(4, 4));
  s = update_scv(std::move(s), CVec::Ones(4), Complex(1.0, 0.0));
  EXPECT_THROW(
      update_channel_covariances(std::move(s), CMat::Ones(4, 1), CVec::Ones(4)),
      std::logic_error);
}

TEST(ErrorSpectra, IdentityInputClosedForm) {
  std::vector<CMat> r_f = {CMat::Identity(8, 8)};
  ErrorSpectra spectra =
      build_error_spectra(r_f, CMat::Identity(8, 8), 0.2, 0.0);
  double expected = 0.2 + 0.02 * std::sqrt(8.0);
  EXPECT_LT((spectra.C_f[0] - expected * CMat::Identity(8, 8)).norm(), 1e-12);
  EXPECT_LT((spectra.C_g - expected * CMat::Identity(8, 8)).norm(), 1e-12);
}

TEST(ErrorSpectra, VanishingMismatchGivesVanishingSpectrum) {
  Rng rng(6);
  std::vector<CMat> r_f = {random_psd(rng, 6, 2)};
  CMat r_g = random_psd(rng, 6, 2);
  for (double eps : {1e-3, 1e-6, 1e-9}) {
    ErrorSpectra spectra = build_error_spectra(r_f, r_g, eps, 0.0);
    EXPECT_LT(spectra.C_f[0].norm(), 2.0 * eps * (r_f[0].norm() + 1.0));
  }
}

TEST(ErrorSpectra, QuadratureOracle) {
  // Composite Simpson over eps of (R + eps ||R||_F I) vs the closed form.
  Rng rng(7);
  for (int t = 0; t < 5; ++t) {
    CMat r = random_psd(rng, 8, 3);
    double eps_max = rng.uniform(0.05, 1.0);
    const int n = 100;  // even
    double h = eps_max / n;
    CMat acc = CMat::Zero(8, 8);
    for (int i = 0; i <= n; ++i) {
      double eps = h * i;
      double weight = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      acc += weight * (r + eps * r.norm() * CMat::Identity(8, 8));
    }
    CMat quadrature = acc * (h / 3.0);
    CMat closed = error_spectrum(r, eps_max);
    EXPECT_LT((quadrature - closed).norm(), 1e-9 * (1.0 + closed.norm()));
  }
}

TEST(EstimateChannels, AxisSubspace) {
  // Dominant first diagonal entry selects N=1 and the e1 subspace; the
  // estimate is e1 rotated to the phase of q(0).
  std::vector<CMat> r_f = {CMat::Zero(4, 4)};
  r_f[0](0, 0) = 10.0;
  CMat r_g = r_f[0];
  ErrorSpectra spectra = build_error_spectra(r_f, r_g, 0.2, 0.0);
  ASSERT_EQ(spectra.count_f[0], 1);
  CVec q(4);
  q << Complex(0.3, 0.4), Complex(1, 1), Complex(0, -2), Complex(5, 5);
  ChannelEstimates est = estimate_channels(spectra, q);
  Complex phase = q(0) / std::abs(q(0));
  EXPECT_LT((est.f[0] - phase * CVec::Unit(4, 0)).norm(), 1e-10);
}

TEST(EstimateChannels, InSubspaceInputIsNormalizedIdentity) {
  Rng rng(8);
  std::vector<CMat> r_f = {random_psd(rng, 6, 3)};
  CMat r_g = random_psd(rng, 6, 3);
  ErrorSpectra spectra = build_error_spectra(r_f, r_g, 0.2, 0.0);
  CVec q = rng.complex_normal_vector(6, 1.0);
  // Force the full subspace: estimate must be q / ||q||.
  ChannelEstimates est = estimate_channels(spectra, q, 6);
  EXPECT_LT((est.f[0] - q / q.norm()).norm(), 1e-10);
  EXPECT_LT((est.g - q / q.norm()).norm(), 1e-10);
}

TEST(EstimateChannels, UnitNormAndRangeMembership) {
  Rng rng(9);
  std::vector<CMat> r_f = {random_psd(rng, 8, 2), random_psd(rng, 8, 2)};
  CMat r_g = random_psd(rng, 8, 2);
  ErrorSpectra spectra = build_error_spectra(r_f, r_g, 0.2, 0.1);
  CVec q = rng.complex_normal_vector(8, 1.0);
  ChannelEstimates est = estimate_channels(spectra, q);
  for (std::size_t k = 0; k < est.f.size(); ++k) {
    EXPECT_NEAR(est.f[k].norm(), 1.0, 1e-12);
    spectral::SubspaceProjector p = spectral::projector_from_principal(
        spectra.eig_f[k], spectra.count_f[k]);
    EXPECT_LE((est.f[k] - p.matrix * est.f[k]).norm(), 1e-10);
  }
  EXPECT_NEAR(est.g.norm(), 1.0, 1e-12);
}

TEST(EstimateChannels, OrthogonalScvIsDegenerate) {
  std::vector<CMat> r_f = {CMat::Zero(4, 4)};
  r_f[0](0, 0) = 10.0;
  ErrorSpectra spectra = build_error_spectra(r_f, r_f[0], 0.2, 0.0);
  ASSERT_EQ(spectra.count_f[0], 1);
  CVec q = CVec::Unit(4, 1);  // orthogonal to the e1 subspace
  EXPECT_THROW(estimate_channels(spectra, q), DegenerateProjectionError);
}

TEST(AssembleMoments, AxisChannels) {
  ChannelEstimates est;
  est.f = {CVec::Unit(4, 0)};
  est.g = CVec::Unit(4, 0);
  signals::MomentSet mom = assemble_moments(est, make_sources({2.0}), 0.1);
  CMat expected = CMat::Zero(4, 4);
  expected(0, 0) = 2.0;
  EXPECT_LT((mom.R[0] - expected).norm(), 1e-14);
  // K = 1: the interference matrix reduces to Q
  EXPECT_EQ((signals::interference_matrix(mom) - mom.Q).norm(), 0.0);
}

TEST(AssembleMoments, DiagonalLoopForm) {
  Rng rng(10);
  ChannelEstimates est;
  est.f.clear();
  for (int k = 0; k < 3; ++k) {
    CVec f = rng.complex_normal_vector(5, 1.0);
    est.f.push_back(f / f.norm());
  }
  CVec g = rng.complex_normal_vector(5, 1.0);
  est.g = g / g.norm();
  signals::SourceConfig sources = make_sources({1.0, 0.5, 0.25});
  signals::MomentSet mom = assemble_moments(est, sources, 0.1);
  for (int m = 0; m < 5; ++m) {
    double expected = 0.1;
    for (int k = 0; k < 3; ++k)
      expected += sources.powers(k) * std::norm(est.f[k](m));
    EXPECT_NEAR(mom.D(m), expected, 1e-12);
  }
}

TEST(SolveWeights, DiagonalInstance) {
  signals::MomentSet mom;
  CVec a(2);
  a << Complex(std::sqrt(2.0), 0), Complex(0, 0);
  mom.R.push_back(a * a.adjoint());  // diag(2, 0)
  mom.R[0](1, 1) = 1.0;              // diag(2, 1)
  mom.Q = CMat::Zero(2, 2);
  mom.D = RVec::Ones(2);
  mom.noise_power = 1.0;
  BeamformerSolution sol = solve_weights(mom, 1.0);
  EXPECT_NEAR(sol.lambda, 2.0, 1e-12);
  EXPECT_NEAR(sol.sinr_max, 2.0, 1e-12);
  EXPECT_LT((sol.w - CVec::Unit(2, 0)).norm(), 1e-10);
  EXPECT_LT((sol.w_tilde - CVec::Unit(2, 0)).norm(), 1e-10);
}

TEST(SolveWeights, ScalingDesiredMomentScalesSinrOnly) {
  Rng rng(11);
  TestTrial t = make_trial(100, 0.2);
  BeamformerSolution base = solve_weights(t.exact, t.total_power);
  signals::MomentSet scaled = t.exact;
  scaled.R[0] *= 3.0;
  BeamformerSolution sol = solve_weights(scaled, t.total_power);
  EXPECT_NEAR(sol.sinr_max, 3.0 * base.sinr_max, 1e-9 * sol.sinr_max);
  EXPECT_LT((sol.w - base.w).norm(), 1e-9 * base.w.norm());
}

TEST(SolveWeights, RandomSearchOracle) {
  // The returned direction maximizes the whitened objective
  //   P_T w~^H R~1 w~ / w~^H (P_n I + P_T U~) w~
  // over the unit sphere, up to solver tolerance.
  Rng rng(12);
  TestTrial t = make_trial(200, 0.2, 10.0, 10.0, 1.0, /*p_t_dbw=*/3.0);
  BeamformerSolution sol = solve_weights(t.exact, t.total_power);

  RVec dis = t.exact.D.cwiseSqrt().cwiseInverse();
  CMat r1t = dis.asDiagonal() * t.exact.R[0] * dis.asDiagonal();
  CMat ut = dis.asDiagonal() * signals::interference_matrix(t.exact) *
            dis.asDiagonal();
  CMat denom_mat = t.exact.noise_power * CMat::Identity(8, 8) +
                   t.total_power * ut;
  auto objective = [&](const CVec& wt) {
    double num = t.total_power * std::real(Complex(wt.adjoint() * r1t * wt));
    double den = std::real(Complex(wt.adjoint() * denom_mat * wt));
    return num / den;
  };
  double best = objective(sol.w_tilde);
  EXPECT_NEAR(best, sol.sinr_max, 1e-8 * best);
  for (int i = 0; i < 10000; ++i) {
    CVec probe = rng.complex_normal_vector(8, 1.0);
    probe /= probe.norm();
    EXPECT_GE(best, objective(probe) - 1e-9);
  }
}

TEST(SolveWeights, ContractInvariantsOnRandomInstances) {
  Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    TestTrial trial = make_trial(300 + t, 0.2 + 0.05 * (t % 10));
    double p_t = db_to_linear(rng.uniform(0.0, 6.0));
    BeamformerSolution sol = solve_weights(trial.exact, p_t);
    // power constraint
    double power = signals::relay_power(sol.w, trial.exact.D);
    EXPECT_LE(std::abs(power - p_t), 1e-9 * p_t);
    // generalized eigenpair residual
    CMat theta = theta_matrix(trial.exact, p_t);
    CVec dw = trial.exact.D.cwiseSqrt().asDiagonal() * sol.w;
    EXPECT_LE((theta * dw - sol.lambda * dw).norm(), 1e-8 * dw.norm());
    EXPECT_GE(sol.sinr_max, 0.0);
  }
}

TEST(RunLrcc, FirstSnapshotUsesAllOnesWeightsAndBatchScv) {
  TestTrial t = make_trial(400, 0.2);
  Rng rng_a(77);
  std::vector<IterationRecord> trace =
      run_lrcc(t.inputs(), CsiMode::kInstantaneous, 1, rng_a);
  ASSERT_EQ(trace.size(), 1u);

  Rng rng_b(77);
  signals::Snapshot snap = signals::make_snapshot(
      t.truth.F, t.truth.g, CVec::Ones(8), t.sources, t.noise_power, rng_b);
  CVec expected_scv = snap.x * std::conj(snap.z);
  EXPECT_EQ((trace[0].scv - expected_scv).norm(), 0.0);
}

TEST(RunLrcc, StatisticsModeSpectraConstantBitIdentical) {
  TestTrial t = make_trial(401, 0.3);
  Rng rng(5);
  std::vector<IterationRecord> trace =
      run_lrcc(t.inputs(), CsiMode::kSecondOrderStatistics, 20, rng);
  ASSERT_EQ(trace.size(), 20u);
  for (std::size_t i = 1; i < trace.size(); ++i) {
    for (std::size_t k = 0; k < trace[0].spectra.C_f.size(); ++k)
      EXPECT_EQ((trace[i].spectra.C_f[k] - trace[0].spectra.C_f[k]).norm(),
                0.0);
    EXPECT_EQ((trace[i].spectra.C_g - trace[0].spectra.C_g).norm(), 0.0);
  }
}

TEST(RunLrcc, VanishingMismatchConvergesToPerfectCsi) {
  TestTrial t = make_trial(402, 1e-6);
  Rng rng(6);
  std::vector<IterationRecord> trace =
      run_lrcc(t.inputs(), CsiMode::kInstantaneous, 100, rng);
  BeamformerSolution perfect = baseline_perfect_csi(t.exact, t.total_power);
  double perfect_db = linear_to_db(
      signals::power_normalized_sinr(perfect.w, t.exact, t.total_power));
  double lrcc_db = linear_to_db(trace.back().realized_sinr);
  EXPECT_NEAR(lrcc_db, perfect_db, 0.5);
}

TEST(RunLrcc, EstimateDirectionErrorShrinksWithAveraging) {
  // Mean direction error of the source-channel estimates at snapshot 100 is
  // no larger than at snapshot 5, averaged over 200 trials.
  const int trials = 200;
  double err_early = 0.0, err_late = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    TestTrial t = make_trial(1000 + trial, 0.2);
    Rng rng(2000 + trial);
    std::vector<IterationRecord> trace =
        run_lrcc(t.inputs(), CsiMode::kInstantaneous, 100, rng);
    for (int k = 0; k < 3; ++k) {
      CVec f = t.truth.F.col(k);
      auto angle = [&](const CVec& est) {
        double c = std::abs(Complex(est.adjoint() * f)) / f.norm();
        return std::acos(std::min(1.0, c));
      };
      err_early += angle(trace[4].estimates.f[k]);
      err_late += angle(trace[99].estimates.f[k]);
    }
  }
  EXPECT_LE(err_late, err_early);
}

TEST(Baselines, PerfectCsiEqualsSolveWeights) {
  TestTrial t = make_trial(500, 0.2);
  BeamformerSolution a = baseline_perfect_csi(t.exact, t.total_power);
  BeamformerSolution b = solve_weights(t.exact, t.total_power);
  EXPECT_EQ((a.w - b.w).norm(), 0.0);
  EXPECT_EQ(a.sinr_max, b.sinr_max);
}

TEST(Baselines, PerfectCsiDominatesPerTrial) {
  // The perfect-CSI weights maximize the scored objective on the common
  // power sphere, so dominance holds trial by trial.
  for (int trial = 0; trial < 200; ++trial) {
    TestTrial t = make_trial(3000 + trial, 0.5);
    BeamformerSolution perfect = baseline_perfect_csi(t.exact, t.total_power);
    BeamformerSolution robustless = baseline_non_robust(
        t.observed, t.sources, t.noise_power, t.total_power);
    double p = signals::power_normalized_sinr(perfect.w, t.exact,
                                              t.total_power);
    double n = signals::power_normalized_sinr(robustless.w, t.exact,
                                              t.total_power);
    EXPECT_GE(linear_to_db(p), linear_to_db(n) - 1e-6);

    Rng rng(4000 + trial);
    std::vector<IterationRecord> trace =
        run_lrcc(t.inputs(), CsiMode::kInstantaneous, 20, rng);
    EXPECT_GE(linear_to_db(p), linear_to_db(trace.back().realized_sinr) - 1e-6);
  }
}

TEST(Baselines, NonRobustCoincidesWithPerfectAtVanishingMismatch) {
  TestTrial t = make_trial(501, 1e-9);
  BeamformerSolution perfect = baseline_perfect_csi(t.exact, t.total_power);
  BeamformerSolution robustless =
      baseline_non_robust(t.observed, t.sources, t.noise_power, t.total_power);
  double p = signals::power_normalized_sinr(perfect.w, t.exact, t.total_power);
  double n =
      signals::power_normalized_sinr(robustless.w, t.exact, t.total_power);
  EXPECT_NEAR(linear_to_db(p), linear_to_db(n), 1e-3);
}

TEST(Baselines, NonRobustMeetsItsOwnPowerConstraint) {
  TestTrial t = make_trial(502, 0.7);
  BeamformerSolution sol =
      baseline_non_robust(t.observed, t.sources, t.noise_power, t.total_power);
  double power = signals::relay_power(sol.w, sol.moments.D);
  EXPECT_LE(std::abs(power - t.total_power), 1e-9 * t.total_power);
}

TEST(Baselines, LrccBeatsNonRobustAtFullMismatch) {
  const int trials = 200;
  double lrcc_db = 0.0, non_robust_db = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    TestTrial t = make_trial(5000 + trial, 1.0);
    Rng rng(6000 + trial);
    std::vector<IterationRecord> trace =
        run_lrcc(t.inputs(), CsiMode::kInstantaneous, 100, rng);
    lrcc_db += linear_to_db(trace.back().realized_sinr);
    BeamformerSolution robustless = baseline_non_robust(
        t.observed, t.sources, t.noise_power, t.total_power);
    non_robust_db += linear_to_db(
        signals::power_normalized_sinr(robustless.w, t.exact, t.total_power));
  }
  EXPECT_GT(lrcc_db / trials, non_robust_db / trials);
}
