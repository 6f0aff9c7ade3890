#pragma once
//
// Two-hop amplify-and-forward signal chain and its second-order moments.
//
// A snapshot runs x = F s + nu at the relays, y = w .* x (diagonal
// weighting), z = g' y + n at the destination. With block-static channels
// the ensemble moments collapse to deterministic quadratic forms, which is
// what output_sinr evaluates.

#include <stdexcept>
#include <vector>

#include "lrcc/rng.hpp"
#include "lrcc/types.hpp"

namespace lrcc::signals {

struct SourceConfig {
  RVec powers;  // size K; index 0 is the desired source

  int source_count() const { return static_cast<int>(powers.size()); }
  static constexpr double kSymbolVariance = 1.0;
};

// Unit-modulus quadrature symbols (+-1 +- j)/sqrt(2), scaled by sqrt(P_s,k).
inline CVec generate_symbols(Rng& rng, const SourceConfig& config) {
  const int k = config.source_count();
  CVec s(k);
  const double h = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < k; ++i) {
    std::uint64_t bits = rng.next_u64();
    double re = (bits & 1) ? h : -h;
    double im = (bits & 2) ? h : -h;
    s(i) = std::sqrt(config.powers(i)) * Complex(re, im);
  }
  return s;
}

struct RelayObservation {
  CVec x;      // F s + noise
  CVec noise;  // per-entry variance P_n
};

inline RelayObservation relay_receive(const CMat& F_used, const CVec& s,
                                      Rng& rng, double noise_power) {
  RelayObservation obs;
  obs.noise = rng.complex_normal_vector(static_cast<int>(F_used.rows()),
                                        noise_power);
  obs.x = F_used * s + obs.noise;
  return obs;
}

inline CVec relay_transmit(const CVec& w, const CVec& x) {
  if (w.size() != x.size())
    throw std::invalid_argument("relay_transmit: dimension mismatch");
  return w.cwiseProduct(x);
}

struct DestinationOutput {
  Complex z;
  Complex noise;
};

inline DestinationOutput destination_receive(const CVec& g_used, const CVec& y,
                                             Rng& rng, double noise_power) {
  DestinationOutput out;
  out.noise = rng.complex_normal(noise_power);
  out.z = g_used.cwiseProduct(y).sum() + out.noise;  // g' y + n
  return out;
}

struct Snapshot {
  CVec s;
  CVec relay_noise;
  CVec x;
  CVec y;
  Complex destination_noise;
  Complex z;
};

inline Snapshot make_snapshot(const CMat& F_used, const CVec& g_used,
                              const CVec& w, const SourceConfig& config,
                              double noise_power, Rng& rng) {
  Snapshot snap;
  snap.s = generate_symbols(rng, config);
  RelayObservation obs = relay_receive(F_used, snap.s, rng, noise_power);
  snap.relay_noise = obs.noise;
  snap.x = obs.x;
  snap.y = relay_transmit(w, snap.x);
  DestinationOutput out = destination_receive(g_used, snap.y, rng, noise_power);
  snap.destination_noise = out.noise;
  snap.z = out.z;
  return snap;
}

struct MomentSet {
  std::vector<CMat> R;  // K matrices, R_k = P_s,k (f_k o g)(f_k o g)^H
  CMat Q;               // P_n g g^H
  RVec D;               // diagonal entries, sum_k P_s,k |f_mk|^2 + P_n
  double noise_power = 0.0;

  int relay_count() const { return static_cast<int>(D.size()); }
  int source_count() const { return static_cast<int>(R.size()); }
};

inline MomentSet exact_moments(const CMat& F, const CVec& g,
                               const SourceConfig& config,
                               double noise_power) {
  const int m = static_cast<int>(F.rows());
  const int k = config.source_count();
  MomentSet mom;
  mom.noise_power = noise_power;
  mom.R.reserve(k);
  for (int i = 0; i < k; ++i) {
    CVec a = F.col(i).cwiseProduct(g);
    mom.R.push_back(config.powers(i) * (a * a.adjoint()));
  }
  mom.Q = noise_power * (g * g.adjoint());
  mom.D.resize(m);
  for (int row = 0; row < m; ++row) {
    double acc = noise_power;
    for (int i = 0; i < k; ++i)
      acc += config.powers(i) * std::norm(F(row, i));
    mom.D(row) = acc;
  }
  return mom;
}

// U = Q + sum_{k>=2} R_k (everything the desired signal competes against).
inline CMat interference_matrix(const MomentSet& mom) {
  CMat u = mom.Q;
  for (std::size_t k = 1; k < mom.R.size(); ++k) u += mom.R[k];
  return u;
}

// w^H R_1 w / (P_n + w^H (Q + sum_{k>=2} R_k) w)
inline double output_sinr(const CVec& w, const MomentSet& mom) {
  double num = std::real(Complex(w.adjoint() * mom.R[0] * w));
  double den =
      mom.noise_power + std::real(Complex(w.adjoint() * interference_matrix(mom) * w));
  if (num <= 0.0) return 0.0;
  if (den <= 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

inline double relay_power(const CVec& w, const RVec& d_diag) {
  double p = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    p += d_diag(i) * std::norm(w(i));
  return p;
}

// Rescales w onto the power sphere w^H D w = P_T of the supplied moments
// before evaluating the SINR; only the direction of w matters here. This is
// the scoring used to compare methods whose own power constraints live on
// different scales.
inline double power_normalized_sinr(const CVec& w, const MomentSet& mom,
                                    double total_power) {
  double p = relay_power(w, mom.D);
  if (p <= 0.0) return 0.0;
  CVec scaled = std::sqrt(total_power / p) * w;
  return output_sinr(scaled, mom);
}

struct LinkBudget {
  double noise_power = 0.0;
  RVec interferer_powers;  // size K-1, aligned with sources 2..K
};

// P_n from the input SNR with the desired power fixed; total interference
// power from the INR, split equally or with a stronger/weaker ratio (two
// interferers) per scenario.
inline LinkBudget noise_power_for_snr(double snr_db, double inr_db,
                                      double desired_power,
                                      int interferer_count,
                                      double stronger_to_weaker_ratio = 1.0) {
  if (desired_power <= 0.0)
    throw std::domain_error("noise_power_for_snr: desired power must be > 0");
  if (stronger_to_weaker_ratio <= 0.0)
    throw std::domain_error("noise_power_for_snr: ratio must be > 0");
  LinkBudget budget;
  budget.noise_power = desired_power / db_to_linear(snr_db);
  budget.interferer_powers.resize(interferer_count);
  if (interferer_count == 0) return budget;
  double total = budget.noise_power * db_to_linear(inr_db);
  if (stronger_to_weaker_ratio == 1.0) {
    budget.interferer_powers.setConstant(total / interferer_count);
  } else {
    if (interferer_count != 2)
      throw std::invalid_argument(
          "noise_power_for_snr: a power ratio != 1 requires exactly two "
          "interferers");
    double weaker = total / (1.0 + stronger_to_weaker_ratio);
    budget.interferer_powers(0) = stronger_to_weaker_ratio * weaker;
    budget.interferer_powers(1) = weaker;
  }
  return budget;
}

}  // namespace lrcc::signals
