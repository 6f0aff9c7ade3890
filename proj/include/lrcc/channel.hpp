#pragma once
//
// Relay-network channel generation: geometry, large-scale gains (path loss
// and log-normal shadowing), Rayleigh small-scale channels, and the
// error-perturbed channel observations with their covariance perturbation
// model.
//
// Distances are relative to a unit source-destination distance. Channels are
// block-static: one draw serves every snapshot of a trial.

#include <cmath>
#include <stdexcept>

#include "lrcc/rng.hpp"
#include "lrcc/types.hpp"

namespace lrcc::channel {

struct NetworkGeometry {
  RVec source_relay_distances;       // d_{s,r_m} in [0.5, 0.9]
  RVec angles;                       // relay-source-destination, [-pi/2, pi/2]
  RVec relay_destination_distances;  // d_{r_m,d}

  int relay_count() const {
    return static_cast<int>(source_relay_distances.size());
  }
};

// Law of cosines against the unit source-destination baseline.
inline double relay_destination_distance(double source_relay_distance,
                                         double angle) {
  double d = source_relay_distance;
  return std::sqrt(d * d + 1.0 - 2.0 * d * std::cos(angle));
}

inline NetworkGeometry sample_geometry(Rng& rng, int relay_count) {
  if (relay_count < 1)
    throw std::invalid_argument("sample_geometry: relay count must be >= 1");
  NetworkGeometry g;
  g.source_relay_distances.resize(relay_count);
  g.angles.resize(relay_count);
  g.relay_destination_distances.resize(relay_count);
  for (int m = 0; m < relay_count; ++m) {
    g.source_relay_distances(m) = rng.uniform(0.5, 0.9);
    g.angles(m) = rng.uniform(-kPi / 2.0, kPi / 2.0);
    g.relay_destination_distances(m) =
        relay_destination_distance(g.source_relay_distances(m), g.angles(m));
  }
  return g;
}

// sqrt(L) / sqrt(d^rho); L is the linear reference gain at the destination.
inline double path_loss_gain(double reference_gain, double distance,
                             double exponent) {
  if (reference_gain <= 0.0)
    throw std::domain_error("path_loss_gain: reference gain must be > 0");
  if (distance <= 0.0)
    throw std::domain_error("path_loss_gain: distance must be > 0");
  return std::sqrt(reference_gain) / std::sqrt(std::pow(distance, exponent));
}

// beta = 10^(sigma_s * eta / 10) for a given standard-normal draw eta.
inline double shadowing_gain_from_eta(double shadowing_spread_db, double eta) {
  return std::pow(10.0, shadowing_spread_db * eta / 10.0);
}

inline double shadowing_gain(Rng& rng, double shadowing_spread_db) {
  if (shadowing_spread_db < 0.0)
    throw std::domain_error("shadowing_gain: spread must be >= 0 dB");
  return shadowing_gain_from_eta(shadowing_spread_db, rng.normal());
}

struct LargeScaleGains {
  RVec gamma;  // per-relay path-loss gains
  RVec beta;   // per-relay shadowing gains
  double reference_gain = 1.0;
  double path_loss_exponent = 2.0;
  double shadowing_spread_db = 0.0;

  RVec combined() const { return gamma.cwiseProduct(beta); }
};

// One gamma_m * beta_m per relay, applied to both hops; the path-loss
// distance is the relay-to-destination distance.
inline LargeScaleGains sample_large_scale_gains(Rng& rng,
                                                const NetworkGeometry& geometry,
                                                double reference_gain,
                                                double path_loss_exponent,
                                                double shadowing_spread_db) {
  const int m = geometry.relay_count();
  LargeScaleGains gains;
  gains.reference_gain = reference_gain;
  gains.path_loss_exponent = path_loss_exponent;
  gains.shadowing_spread_db = shadowing_spread_db;
  gains.gamma.resize(m);
  gains.beta.resize(m);
  for (int i = 0; i < m; ++i) {
    gains.gamma(i) =
        path_loss_gain(reference_gain, geometry.relay_destination_distances(i),
                       path_loss_exponent);
    gains.beta(i) = shadowing_gain(rng, shadowing_spread_db);
  }
  return gains;
}

struct TrueChannels {
  CMat F;  // M x K, source-to-relay
  CVec g;  // M, relay-to-destination

  int relay_count() const { return static_cast<int>(F.rows()); }
  int source_count() const { return static_cast<int>(F.cols()); }
};

// Unit-variance circularly-symmetric entries, row m scaled by gamma_m*beta_m.
inline TrueChannels sample_true_channels(Rng& rng,
                                         const NetworkGeometry& geometry,
                                         const LargeScaleGains& gains,
                                         int source_count) {
  const int m = geometry.relay_count();
  TrueChannels ch;
  ch.F.resize(m, source_count);
  ch.g.resize(m);
  RVec scale = gains.combined();
  for (int k = 0; k < source_count; ++k)
    for (int i = 0; i < m; ++i)
      ch.F(i, k) = scale(i) * rng.complex_normal(1.0);
  for (int i = 0; i < m; ++i) ch.g(i) = scale(i) * rng.complex_normal(1.0);
  return ch;
}

struct MismatchedChannels {
  CMat F_hat;  // F + E
  CVec g_hat;  // g + e
  CMat E;
  CVec e;
  double epsilon = 0.0;  // mismatch level of this draw
};

// Error draw at a fixed mismatch level. Per-entry error variance is
// eps*||R||_F with R the rank-1 outer product of the current true channel,
// i.e. eps*||f_k||^2 per column and eps*||g||^2 for the second hop.
inline MismatchedChannels sample_observation(Rng& rng, const TrueChannels& ch,
                                             double epsilon) {
  if (epsilon <= 0.0)
    throw std::domain_error("sample_observation: epsilon must be > 0");
  const int m = ch.relay_count();
  const int k = ch.source_count();
  MismatchedChannels obs;
  obs.epsilon = epsilon;
  obs.E.resize(m, k);
  for (int col = 0; col < k; ++col) {
    double var = epsilon * ch.F.col(col).squaredNorm();
    for (int row = 0; row < m; ++row)
      obs.E(row, col) = rng.complex_normal(var);
  }
  obs.e = rng.complex_normal_vector(m, epsilon * ch.g.squaredNorm());
  obs.F_hat = ch.F + obs.E;
  obs.g_hat = ch.g + obs.e;
  return obs;
}

// Draws the trial's mismatch level eps ~ U(0, eps_max] and one observation.
inline MismatchedChannels apply_mismatch(Rng& rng, const TrueChannels& ch,
                                         double eps_max) {
  if (eps_max <= 0.0)
    throw std::domain_error("apply_mismatch: eps_max must be > 0");
  return sample_observation(rng, ch, rng.uniform_positive(eps_max));
}

struct PerturbedCovariance {
  CMat matrix;
  bool degenerate = false;  // zero input, perturbation vanishes
};

// R + eps*||R||_F*I; strictly positive definite for any nonzero PSD R.
inline PerturbedCovariance perturb_covariance(const CMat& R, double epsilon) {
  if (epsilon <= 0.0)
    throw std::domain_error("perturb_covariance: epsilon must be > 0");
  PerturbedCovariance out;
  double frob = R.norm();
  out.matrix = R + epsilon * frob * CMat::Identity(R.rows(), R.cols());
  out.degenerate = frob == 0.0;
  return out;
}

}  // namespace lrcc::channel
