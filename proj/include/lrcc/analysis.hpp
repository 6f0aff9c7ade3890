#pragma once
//
// Channel-estimation MSE bounds and the cross-correlation / subspace MSE
// model, plus the MMSE-SINR relation of the solved beamformer.
//
// The additive model prices a mismatch by the Frobenius norm of the channel
// covariance; its MSE is bracketed by eigenvalue-spread bounds. The subspace
// model prices the same mismatch after projection onto the error-spectrum
// subspace; below a tau threshold it beats the additive model over the whole
// admissible range of covariance norms.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lrcc/spectral.hpp"
#include "lrcc/types.hpp"

namespace lrcc::analysis {

// Additive-model channel MSE: (eps_max * M / 2) * ||R||_F, the trace of the
// mean error covariance under eps ~ U(0, eps_max].
inline double mse_additive(const CMat& R, double eps_max) {
  return eps_max * static_cast<double>(R.rows()) / 2.0 * R.norm();
}

inline double frobenius_from_eigenvalues(const RVec& eigenvalues) {
  return std::sqrt(eigenvalues.array().square().sum());
}

struct EigenSpreadSpec {
  double lambda_max = 0.0;  // largest eigenvalue
  double spread = 0.0;      // lambda_max - lambda_min, in [0, lambda_max]
  int dim = 0;

  void validate() const {
    if (dim < 1) throw std::invalid_argument("EigenSpreadSpec: dim must be >= 1");
    if (lambda_max <= 0.0)
      throw std::invalid_argument("EigenSpreadSpec: lambda_max must be > 0");
    if (spread < 0.0 || spread > lambda_max)
      throw std::invalid_argument(
          "EigenSpreadSpec: spread must lie in [0, lambda_max]");
  }
};

struct MseBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Bounds on the additive-model MSE over all spectra with the given largest
// eigenvalue and spread. Lower radicand: every free eigenvalue at
// lambda_min; upper: every free eigenvalue at lambda_max.
inline MseBounds mse_bounds(const EigenSpreadSpec& spec, double eps_max) {
  spec.validate();
  const double m = static_cast<double>(spec.dim);
  const double lam = spec.lambda_max;
  const double sig = spec.spread;
  double lower_rad =
      m * lam * lam - 2.0 * (m - 1.0) * sig * lam + (m - 1.0) * sig * sig;
  double upper_rad = m * lam * lam - 2.0 * sig * lam + sig * sig;
  if (lower_rad < 0.0 || upper_rad < 0.0)
    throw std::logic_error("mse_bounds: negative radicand");
  const double scale = eps_max * m / 2.0;
  return {scale * std::sqrt(lower_rad), scale * std::sqrt(upper_rad)};
}

// Minimum MSEs: the sum of per-source lower bounds, and the lower bound of
// the second-hop channel.
inline std::pair<double, double> mmse_channels(
    const std::vector<EigenSpreadSpec>& source_specs,
    const EigenSpreadSpec& g_spec, double eps_max) {
  double mmse_f = 0.0;
  for (const EigenSpreadSpec& s : source_specs)
    mmse_f += mse_bounds(s, eps_max).lower;
  return {mmse_f, mse_bounds(g_spec, eps_max).lower};
}

// Subspace-model MSE as a function of the expected covariance norm r:
//   ((1/3) P_s^2 eps^2 r^2 + (1/2) P_n P_s eps r + P_n^2) tau + 1.
inline double mse_subspace(double covariance_norm, double source_power,
                           double noise_power, double eps_max, double tau) {
  if (covariance_norm < 0.0 || source_power < 0.0 || noise_power < 0.0 ||
      eps_max < 0.0 || tau < 0.0)
    throw std::domain_error("mse_subspace: all inputs must be >= 0");
  double r = covariance_norm;
  double quad = source_power * source_power * eps_max * eps_max * r * r / 3.0 +
                noise_power * source_power * eps_max * r / 2.0 +
                noise_power * noise_power;
  return quad * tau + 1.0;
}

// Tau threshold below which the subspace model undercuts the additive model
// at the admissible-norm upper end sqrt(M)*lambda_max. A non-positive value
// means the gap condition is unsatisfiable there.
inline double tau_threshold(double lambda_max, int dim, double source_power,
                            double noise_power, double eps_max) {
  const double m = static_cast<double>(dim);
  const double top = std::sqrt(m) * lambda_max;
  double numerator = m / 2.0 * eps_max * top - 1.0;
  double denominator =
      source_power * source_power * eps_max * eps_max * m * lambda_max *
          lambda_max / 3.0 +
      noise_power * source_power * eps_max * top / 2.0 +
      noise_power * noise_power;
  if (denominator <= 0.0)
    throw std::domain_error("tau_threshold: denominator must be positive");
  return numerator / denominator;
}

// Destination MMSE from the achieved SINR.
inline double mmse_of_output(double sinr_max) {
  if (sinr_max < 0.0)
    throw std::domain_error("mmse_of_output: SINR must be >= 0");
  return 1.0 / (1.0 + sinr_max);
}

// Evaluates w^H D^{-1/2} Theta D^{1/2} w with w rescaled to unit norm; for
// the solver's weight vector this recovers lambda_max{Theta} exactly,
// independent of which power normalization w carries.
inline double rayleigh_quotient_lambda(const CVec& w, const RVec& d_diag,
                                       const CMat& theta) {
  double norm = w.norm();
  if (norm == 0.0)
    throw std::domain_error("rayleigh_quotient_lambda: zero weight vector");
  CVec u = w / norm;
  RVec d_sqrt = d_diag.cwiseSqrt();
  CVec right = theta * (d_sqrt.asDiagonal() * u);
  CVec left = d_sqrt.cwiseInverse().asDiagonal() * u;
  return std::real(Complex(left.adjoint() * right));
}

struct CrossCorrSample {
  CVec weighted_g;  // W g_hat for one trial
  CMat projector;   // P_k for the same trial
};

struct CrossCorrAnalysis {
  CVec xi;                        // E[W g_hat]
  std::vector<CVec> q_components; // q_k = P_s,k (R_f_k + mean R_e_k) xi
  double tau = 0.0;               // xi^H E[P_k] xi
  double mse_additive_model = 0.0;
  double mse_subspace_model = 0.0;
};

// Empirical tau measurement and the two MSE models evaluated at the desired
// source's covariance statistics.
inline CrossCorrAnalysis analyze_cross_correlation(
    const std::vector<CrossCorrSample>& samples, const std::vector<CMat>& R_f,
    const RVec& source_powers, double noise_power, double eps_max) {
  if (samples.empty())
    throw std::invalid_argument("analyze_cross_correlation: no samples");
  const Eigen::Index m = samples.front().weighted_g.size();
  CrossCorrAnalysis out;
  out.xi = CVec::Zero(m);
  CMat mean_projector = CMat::Zero(m, m);
  for (const CrossCorrSample& s : samples) {
    out.xi += s.weighted_g;
    mean_projector += s.projector;
  }
  out.xi /= static_cast<double>(samples.size());
  mean_projector /= static_cast<double>(samples.size());
  out.tau = std::real(Complex(out.xi.adjoint() * mean_projector * out.xi));

  out.q_components.reserve(R_f.size());
  for (std::size_t k = 0; k < R_f.size(); ++k) {
    CMat mean_error_cov =
        (eps_max / 2.0) * R_f[k].norm() * CMat::Identity(m, m);
    out.q_components.push_back(source_powers(static_cast<Eigen::Index>(k)) *
                               ((R_f[k] + mean_error_cov) * out.xi));
  }

  out.mse_additive_model = mse_additive(R_f[0], eps_max);
  out.mse_subspace_model = mse_subspace(R_f[0].norm(), source_powers(0),
                                        noise_power, eps_max, out.tau);
  return out;
}

}  // namespace lrcc::analysis
