#include "riskmaps/gaussian.hpp"
#include "riskmaps/uncertainty.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace riskmaps;

namespace {

Mat2 rotation(double theta) {
  Mat2 r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

}  // namespace

TEST_CASE("coincident unit-covariance footprints overlap at 1/(4 pi)") {
  GaussianFootprint a;
  GaussianFootprint b;
  CHECK(instantaneous_risk(a, b) ==
        doctest::Approx(1.0 / (4.0 * std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("anisotropic closed form") {
  GaussianFootprint a;
  a.covariance << 4.0, 0.0, 0.0, 1.0;
  GaussianFootprint b = a;
  b.mean << 2.0, 0.0;
  // covariance sum diag(8, 2): det 16, q = 4/8
  const double expected = std::exp(-0.25) / (8.0 * std::numbers::pi);
  CHECK(instantaneous_risk(a, b) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("overlap is symmetric and translation invariant") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  std::uniform_real_distribution<double> eig(0.3, 4.0);
  std::uniform_real_distribution<double> ang(0.0, std::numbers::pi);
  for (int i = 0; i < 50; ++i) {
    const Mat2 r1 = rotation(ang(rng));
    const Mat2 r2 = rotation(ang(rng));
    Mat2 d1 = Mat2::Zero();
    d1.diagonal() << eig(rng), eig(rng);
    Mat2 d2 = Mat2::Zero();
    d2.diagonal() << eig(rng), eig(rng);
    GaussianFootprint a{Vec2(coord(rng), coord(rng)), r1 * d1 * r1.transpose()};
    GaussianFootprint b{Vec2(coord(rng), coord(rng)), r2 * d2 * r2.transpose()};
    const double ab = instantaneous_risk(a, b);
    const double ba = instantaneous_risk(b, a);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
    const Vec2 shift(coord(rng), coord(rng));
    GaussianFootprint a2{a.mean + shift, a.covariance};
    GaussianFootprint b2{b.mean + shift, b.covariance};
    CHECK(instantaneous_risk(a2, b2) == doctest::Approx(ab).epsilon(1e-12));
  }
}

TEST_CASE("overlap decays along a ray") {
  GaussianFootprint a;
  a.covariance << 2.0, 0.3, 0.3, 1.0;
  GaussianFootprint b;
  b.covariance << 1.5, -0.2, -0.2, 2.5;
  const Vec2 dir = Vec2(1.0, 0.4).normalized();
  double prev = std::numeric_limits<double>::infinity();
  for (double t = 0.0; t <= 10.0; t += 0.25) {
    b.mean = t * dir;
    const double r = instantaneous_risk(a, b);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("risk grows with uncertainty beyond the sqrt(2) Mahalanobis shell") {
  // For covariance sum 2 sigma^2 I the Mahalanobis distance is |d|/(sigma
  // sqrt(2)); inflating sigma raises the overlap iff that distance exceeds
  // sqrt(2), i.e. |d| > 2 sigma.
  const auto risk_at = [](double sigma, double dist) {
    GaussianFootprint a;
    a.covariance = sigma * sigma * Mat2::Identity();
    GaussianFootprint b = a;
    b.mean << dist, 0.0;
    return instantaneous_risk(a, b);
  };
  const double sigma = 1.3;
  const double far = 2.0 * sigma * 1.4;   // Mahalanobis 1.4 sqrt(2)
  const double near = 2.0 * sigma * 0.6;  // Mahalanobis 0.6 sqrt(2)
  CHECK(risk_at(sigma * 1.05, far) > risk_at(sigma, far));
  CHECK(risk_at(sigma * 1.05, near) < risk_at(sigma, near));
}

TEST_CASE("non-positive-definite covariance sums are rejected") {
  GaussianFootprint a;
  a.covariance << 1.0, 2.0, 2.0, 1.0;  // det < 0
  GaussianFootprint b;
  b.covariance << 0.5, 0.0, 0.0, 0.5;
  CHECK_THROWS_AS(instantaneous_risk(a, b), std::domain_error);
  GaussianFootprint c;
  c.covariance << -1.0, 0.0, 0.0, -1.0;
  GaussianFootprint d;
  d.covariance << 0.25, 0.0, 0.0, 0.25;
  CHECK_THROWS_AS(instantaneous_risk(c, d), std::domain_error);
}

TEST_CASE("longitudinal uncertainty grows with lookahead and caps at alpha") {
  const UncertaintyParams p;  // contract defaults
  CHECK(longitudinal_sigma(1.0, 10.0, 0.0, p) == doctest::Approx(0.5));
  // growth: 0.5 + 0.05 * 10 * 5 = 3.0, capped by alpha * 10
  CHECK(longitudinal_sigma(1.0, 10.0, 5.0, p) == doctest::Approx(3.0));
  CHECK(longitudinal_sigma(0.04, 10.0, 5.0, p) == doctest::Approx(0.4));
  // monotone non-decreasing in s and in alpha
  double prev = 0.0;
  for (double s = 0.0; s <= 10.0; s += 0.5) {
    const double sl = longitudinal_sigma(0.3, 8.0, s, p);
    CHECK(sl >= prev);
    prev = sl;
  }
}

TEST_CASE("uncertainty covariance aligns with the heading") {
  const UncertaintyParams p;
  const Mat2 along_x = uncertainty_at(1.0, 10.0, 5.0, p, Vec2(1.0, 0.0));
  CHECK(along_x(0, 0) == doctest::Approx(9.0));   // 3.0^2
  CHECK(along_x(1, 1) == doctest::Approx(0.25));  // 0.5^2
  CHECK(along_x(0, 1) == 0.0);
  const Mat2 along_y = uncertainty_at(1.0, 10.0, 5.0, p, Vec2(0.0, 1.0));
  CHECK(along_y(0, 0) == doctest::Approx(0.25));
  CHECK(along_y(1, 1) == doctest::Approx(9.0));
  CHECK(along_y(0, 1) == 0.0);
  // radians overload matches the direction form
  const Mat2 rotated = uncertainty_at(1.0, 10.0, 5.0, p, std::numbers::pi / 4.0);
  const Mat2 direct = uncertainty_at(
      1.0, 10.0, 5.0, p, Vec2(std::cos(std::numbers::pi / 4.0), std::sin(std::numbers::pi / 4.0)));
  CHECK((rotated - direct).norm() == doctest::Approx(0.0));
}

TEST_CASE("cap multipliers scale the ceiling only") {
  const UncertaintyParams p;
  // capped regime: multiplier raises the cap
  CHECK(longitudinal_sigma(0.04, 10.0, 5.0, p, 2.0) == doctest::Approx(0.8));
  // growth regime: multiplier has no effect
  CHECK(longitudinal_sigma(1.0, 10.0, 5.0, p, 2.0) == doctest::Approx(3.0));
}

TEST_CASE("negative lookahead is rejected") {
  const UncertaintyParams p;
  CHECK_THROWS_AS(uncertainty_at(0.5, 10.0, -0.1, p, Vec2(1.0, 0.0)),
                  std::out_of_range);
}
