#pragma once
//
// Dense complex Hermitian eigen-analysis kernels.
//
// Everything downstream (error spectra, subspace projections, the SINR
// solver) runs through these routines, so they pin the conventions once:
// eigenvalues sorted descending, eigenvectors orthonormal with the
// largest-magnitude component rotated to be real-positive, ties broken by
// stable index order.

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lrcc/types.hpp"

namespace lrcc::spectral {

constexpr double kHermitianTol = 1e-12;
constexpr double kOrthonormalTol = 1e-10;
constexpr double kDegenerateGap = 1e-12;

inline bool is_hermitian(const CMat& a, double tol = kHermitianTol) {
  if (a.rows() != a.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = i; j < a.cols(); ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
  return true;
}

// Contract check; the error names the first offending entry pair.
inline void require_hermitian(const CMat& a, const char* context,
                              double tol = kHermitianTol) {
  if (a.rows() != a.cols()) {
    std::ostringstream msg;
    msg << context << ": matrix is " << a.rows() << "x" << a.cols()
        << ", expected square";
    throw std::invalid_argument(msg.str());
  }
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i; j < a.cols(); ++j) {
      double dev = std::abs(a(i, j) - std::conj(a(j, i)));
      if (dev > tol) {
        std::ostringstream msg;
        msg << context << ": not Hermitian, entries (" << i << "," << j
            << ") and (" << j << "," << i << ") differ by " << dev;
        throw std::invalid_argument(msg.str());
      }
    }
  }
}

// Rotate v so its largest-magnitude component is real-positive. Among equal
// magnitudes the lowest index wins, which makes decompositions of degenerate
// spectra deterministic.
inline void fix_phase(CVec& v) {
  Eigen::Index pivot = 0;
  double best = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double mag = std::abs(v(i));
    if (mag > best + kHermitianTol) {
      best = mag;
      pivot = i;
    }
  }
  if (best > 0.0) v *= std::conj(v(pivot)) / best;
}

struct EigenDecomposition {
  RVec eigenvalues;   // descending
  CMat eigenvectors;  // columns, orthonormal, phase-fixed
};

inline EigenDecomposition eig_hermitian(const CMat& a) {
  require_hermitian(a, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> solver(a);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver did not converge");
  const Eigen::Index n = a.rows();
  EigenDecomposition d;
  d.eigenvalues = solver.eigenvalues().reverse();
  d.eigenvectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    CVec v = solver.eigenvectors().col(n - 1 - j);
    fix_phase(v);
    d.eigenvectors.col(j) = v;
  }
  return d;
}

struct PrincipalComponent {
  CVec vector;      // unit norm, phase-fixed
  double value = 0.0;
  bool degenerate = false;  // top eigenvalue gap below kDegenerateGap
};

inline PrincipalComponent principal_eigenvector(const CMat& a) {
  EigenDecomposition d = eig_hermitian(a);
  PrincipalComponent p;
  p.vector = d.eigenvectors.col(0);
  p.value = d.eigenvalues(0);
  p.degenerate = d.eigenvalues.size() > 1 &&
                 d.eigenvalues(0) - d.eigenvalues(1) < kDegenerateGap;
  return p;
}

// Principal-component count for a descending spectrum. Candidates must pass
// the noise threshold and exceed the mean of all eigenvalues; N is the
// smallest survivor count whose partial sum reaches variance_fraction of the
// total, capped at the survivor count when the fraction is out of reach. If
// nothing survives the filters, the variance rule alone decides.
inline int select_principal_count(const RVec& eigenvalues,
                                  double noise_threshold,
                                  double variance_fraction) {
  const int m = static_cast<int>(eigenvalues.size());
  if (m == 0 || eigenvalues.maxCoeff() <= 0.0)
    throw std::invalid_argument(
        "select_principal_count: invalid spectrum, no positive eigenvalue");
  const double total = eigenvalues.sum();
  const double mean = total / m;
  const double target = variance_fraction * total;

  int survivors = 0;
  for (int i = 0; i < m; ++i) {
    if (eigenvalues(i) > noise_threshold && eigenvalues(i) > mean)
      ++survivors;
    else
      break;  // descending, so the first failure ends the prefix
  }

  double prefix = 0.0;
  if (survivors > 0) {
    for (int n = 1; n <= survivors; ++n) {
      prefix += eigenvalues(n - 1);
      if (prefix >= target) return n;
    }
    return survivors;
  }
  prefix = 0.0;
  for (int n = 1; n <= m; ++n) {
    prefix += eigenvalues(n - 1);
    if (prefix >= target) return n;
  }
  return m;
}

struct SubspaceProjector {
  int dim = 0;
  int rank = 0;
  CMat matrix;
};

// P = B Bᴴ from orthonormal columns.
inline SubspaceProjector projector_from_basis(const CMat& basis) {
  const Eigen::Index n = basis.cols();
  CMat gram = basis.adjoint() * basis;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(gram(i, j) - expected) > kOrthonormalTol) {
        std::ostringstream msg;
        msg << "projector_from_basis: columns " << i << " and " << j
            << " are not orthonormal (gram entry " << gram(i, j) << ")";
        throw std::invalid_argument(msg.str());
      }
    }
  }
  SubspaceProjector p;
  p.dim = static_cast<int>(basis.rows());
  p.rank = static_cast<int>(n);
  p.matrix = basis * basis.adjoint();
  return p;
}

inline SubspaceProjector projector_from_principal(const EigenDecomposition& d,
                                                  int count) {
  if (count < 1 || count > d.eigenvectors.cols())
    throw std::invalid_argument("projector_from_principal: bad count");
  return projector_from_basis(d.eigenvectors.leftCols(count));
}

}  // namespace lrcc::spectral
