#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace riskmaps {

// Overlap density of two planar Gaussians: the integral of the product of
// their densities, which equals the density of N(0, S1 + S2) evaluated at the
// mean difference:
//
//   r = det(2*pi*(S1+S2))^(-1/2) * exp(-1/2 * d^T (S1+S2)^(-1) d)
//
// Templated on the Eigen expressions so it composes with maps and blocks.
template <typename DerivedD, typename DerivedS>
typename DerivedD::Scalar overlap_density(
    const Eigen::MatrixBase<DerivedD>& mean_diff,
    const Eigen::MatrixBase<DerivedS>& covariance_sum) {
  using Scalar = typename DerivedD::Scalar;
  const Eigen::Matrix<Scalar, 2, 2> S = covariance_sum;
  const Scalar det = S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0);
  if (!(det > Scalar(0)) || !(S.trace() > Scalar(0))) {
    throw std::domain_error("covariance sum must be positive definite");
  }
  const Eigen::Matrix<Scalar, 2, 1> d = mean_diff;
  // Quadratic form via the adjugate: d^T S^-1 d = d^T adj(S) d / det.
  const Scalar q =
      (d(0) * (S(1, 1) * d(0) - S(0, 1) * d(1)) +
       d(1) * (S(0, 0) * d(1) - S(1, 0) * d(0))) /
      det;
  if (!std::isfinite(q)) {
    throw std::domain_error("non-finite quadratic form in overlap density");
  }
  return std::exp(Scalar(-0.5) * q) /
         (Scalar(2) * std::numbers::pi_v<Scalar> * std::sqrt(det));
}

// A vehicle footprint as a planar Gaussian.
struct GaussianFootprint {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Identity();
};

// Instantaneous collision risk of two footprints.
inline double instantaneous_risk(const GaussianFootprint& a,
                                 const GaussianFootprint& b) {
  return overlap_density((b.mean - a.mean).eval(),
                         (a.covariance + b.covariance).eval());
}

}  // namespace riskmaps
