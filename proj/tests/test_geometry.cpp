#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "forge/embedding.hpp"
#include "forge/geometry.hpp"
#include "forge/rng.hpp"

using namespace forge;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> on_sphere(const SphereConfig& config, int i, double z,
                              double phi) {
  auto pt = config.centers[std::size_t(i)];
  const double sl = std::sqrt(std::max(0.0, 1.0 - z * z));
  pt[0] += config.radius * sl * std::cos(phi);
  pt[1] += config.radius * sl * std::sin(phi);
  pt[2] += config.radius * z;
  return pt;
}

SphereConfig kp_config() { return build_config(dyadic_centers(0)); }
SphereConfig k4_config() { return build_config(dyadic_centers(1)); }

}  // namespace

TEST_CASE("build_config invariants on the dyadic family") {
  for (int n = 0; n <= 2; ++n) {
    const auto config = build_config(dyadic_centers(n));
    CHECK(config.dim == n + 4);
    CHECK(config.count() == (1 << (n + 1)));
    double min_gap = 1e30;
    for (int i = 0; i < config.count(); ++i)
      for (int j = i + 1; j < config.count(); ++j) {
        double s = 0.0;
        for (int k = 0; k < config.dim; ++k) {
          const double d = config.centers[std::size_t(i)][std::size_t(k)] -
                           config.centers[std::size_t(j)][std::size_t(k)];
          s += d * d;
        }
        min_gap = std::min(min_gap, std::sqrt(s));
      }
    CHECK(std::abs(min_gap - 2.0 * config.radius) < 1e-9);
  }
}

TEST_CASE("build_config rejects centers off the radius-t sphere") {
  auto centers = dyadic_centers(0);
  centers.points[0][0] *= 1.01;
  CHECK_THROWS_AS(build_config(centers), std::invalid_argument);
}

TEST_CASE("nearest and farthest points from a point on the sphere itself") {
  const auto config = kp_config();
  const auto z = on_sphere(config, 0, 0.3, 1.1);
  const auto q = nearest_farthest(config, 0, z);
  CHECK(q.dist_near < 1e-12);
  CHECK(std::abs(q.dist_far - 2.0 * config.radius) < 1e-12);
  for (int k = 0; k < config.dim; ++k)
    CHECK(std::abs(q.nearest[std::size_t(k)] - z[std::size_t(k)]) < 1e-12);
}

TEST_CASE("nearest/farthest bracket sampled distances") {
  const auto config = k4_config();
  const auto z = on_sphere(config, 0, -0.4, 2.5);
  RandomStream stream(7, 0);
  for (int i = 0; i < config.count(); ++i) {
    const auto q = nearest_farthest(config, i, z);
    // Returned points lie on the sphere.
    for (const auto* pt : {&q.nearest, &q.farthest}) {
      double pv2 = 0.0, off = 0.0;
      for (int k = 0; k < 3; ++k) pv2 += (*pt)[std::size_t(k)] * (*pt)[std::size_t(k)];
      for (int k = 3; k < config.dim; ++k) {
        const double w = (*pt)[std::size_t(k)] - config.centers[std::size_t(i)][std::size_t(k)];
        off += w * w;
      }
      CHECK(std::abs(std::sqrt(pv2) - config.radius) < 1e-12);
      CHECK(off < 1e-24);
    }
    for (int s = 0; s < 1000; ++s) {
      const auto u = stream.uniforms(std::uint64_t(i) * 1000 + std::uint64_t(s));
      const auto w = on_sphere(config, i, 2.0 * u[0] - 1.0, 2.0 * kPi * u[1]);
      double d2 = 0.0;
      for (int k = 0; k < config.dim; ++k) {
        const double d = z[std::size_t(k)] - w[std::size_t(k)];
        d2 += d * d;
      }
      const double d = std::sqrt(d2);
      CHECK(d >= q.dist_near - 1e-12);
      CHECK(d <= q.dist_far + 1e-12);
    }
  }
}

TEST_CASE("layered distances from a base point: D = 2 sqrt(i) r") {
  const auto l = dyadic_layering(1);
  const auto config = k4_config();
  const auto z = on_sphere(config, 0, 0.8, 0.2);
  for (int j = 1; j < 4; ++j) {
    const auto q = nearest_farthest(config, j, z);
    const double want = 2.0 * std::sqrt(double(l.at(0, j))) * config.radius;
    CHECK(std::abs(q.dist_near - want) < 1e-12);
    CHECK(std::abs(q.dist_far -
                   2.0 * std::sqrt(double(l.at(0, j)) + 1.0) * config.radius) < 1e-12);
    // Equal-radius configs: D^2 = delta^2 for on-support base points.
    CHECK(std::abs(q.dist_near * q.dist_near - q.plane_dist * q.plane_dist) < 1e-12);
  }
}

TEST_CASE("degenerate projection throws") {
  const auto config = kp_config();
  std::vector<double> z(std::size_t(config.dim), 0.0);
  z[3] = 1.0;
  CHECK_THROWS_AS(nearest_farthest(config, 0, z), DegenerateProjection);
}

TEST_CASE("cap radius formula special cases") {
  // D = delta (axis case): x^2 = R^2 - D^2.
  auto x = cap_radius(1.0, 0.5, 0.5, 0.9, false);
  REQUIRE(x.has_value());
  CHECK(std::abs(*x * *x - (0.81 - 0.25)) < 1e-12);
  // D = 0: x = R.
  x = cap_radius(1.0, 0.0, 0.0, 0.7, true);
  REQUIRE(x.has_value());
  CHECK(std::abs(*x - 0.7) < 1e-12);
  // Empty intersection.
  CHECK_FALSE(cap_radius(1.0, 1.2, 0.3, 1.1, false).has_value());
  // Monotone in R.
  double prev = 0.0;
  for (double R = 0.6; R < 2.0; R += 0.1) {
    const auto xr = cap_radius(1.0, 0.5, 0.2, R, false);
    REQUIRE(xr.has_value());
    CHECK(*xr >= prev);
    prev = *xr;
  }
}

TEST_CASE("cap area is pi x^2 clamped at the full sphere") {
  CHECK(cap_area(1.0, 0.0) == 0.0);
  CHECK(std::abs(cap_area(1.0, 1.0) - kPi) < 1e-15);
  CHECK(std::abs(cap_area(1.0, 2.0) - 4.0 * kPi) < 1e-15);
  CHECK(std::abs(cap_area(1.0, 3.0) - 4.0 * kPi) < 1e-15);
}

TEST_CASE("layer structure of the antipodal pair") {
  const auto config = kp_config();
  const auto z = on_sphere(config, 0, 0.1, 4.0);
  const auto ls = layer_structure(config, z);
  CHECK(ls.base_sphere == 0);
  REQUIRE(ls.layers.size() == 1);
  CHECK(ls.layers[0] == std::vector<int>{1});
  CHECK(std::abs(ls.radii[0] - std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(ls.coefficient[1] - 1.0) < 1e-12);
  CHECK(ls.sum_identity_error < 1e-9);
  CHECK(ls.balance_identity_error < 1e-9);
}

TEST_CASE("layer structure of the rectangle: three singleton layers") {
  const auto config = k4_config();
  const auto z = on_sphere(config, 0, -0.7, 0.9);
  const auto ls = layer_structure(config, z);
  CHECK(ls.base_sphere == 0);
  REQUIRE(ls.layers.size() == 3);
  const auto l = dyadic_layering(1);
  for (int i = 1; i <= 3; ++i) {
    REQUIRE(ls.layers[std::size_t(i - 1)].size() == 1);
    const int s = ls.layers[std::size_t(i - 1)][0];
    CHECK(l.at(0, s) == i);
    CHECK(std::abs(ls.radii[std::size_t(i - 1)] - std::sqrt(double(i))) < 1e-12);
    CHECK(std::abs(ls.coefficient[std::size_t(s)] - 1.0) < 1e-12);
  }
  CHECK(ls.depth == 4);
  CHECK(ls.sum_identity_error < 1e-9);
  CHECK(ls.balance_identity_error < 1e-9);
}

TEST_CASE("layer identities at random base points") {
  for (int n = 0; n <= 2; ++n) {
    const auto config = build_config(dyadic_centers(n));
    RandomStream stream(11, std::uint64_t(n));
    for (int trial = 0; trial < 20; ++trial) {
      const auto u = stream.uniforms(std::uint64_t(trial));
      const int sphere = std::min(config.count() - 1, int(u[0] * config.count()));
      const auto z = on_sphere(config, sphere, 2.0 * u[1] - 1.0, 2.0 * kPi * u[2]);
      const auto ls = layer_structure(config, z);
      CHECK(ls.sum_identity_error < 1e-9);
      CHECK(ls.balance_identity_error < 1e-9);
    }
  }
}

TEST_CASE("layer_structure rejects off-support points") {
  const auto config = kp_config();
  std::vector<double> z(std::size_t(config.dim), 0.0);
  z[0] = 1.0;
  CHECK_THROWS_AS(layer_structure(config, z), std::invalid_argument);
}

TEST_CASE("cone membership and dilation invariance") {
  ConeSupport cone{k4_config()};
  std::vector<double> origin(std::size_t(cone.config.dim), 0.0);
  CHECK(cone.contains(origin, 1e-7));

  RandomStream stream(13, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto u = stream.uniforms(std::uint64_t(trial));
    const int sphere = std::min(cone.config.count() - 1, int(u[0] * cone.config.count()));
    auto z = on_sphere(cone.config, sphere, 2.0 * u[1] - 1.0, 2.0 * kPi * u[2]);
    CHECK(cone.contains(z, 1e-7));
    for (double s : {0.5, 2.0, 10.0}) {
      auto sz = z;
      for (double& c : sz) c *= s;
      CHECK(cone.contains(sz, 1e-7));
    }
  }
  // A direction far from every sphere.
  std::vector<double> off(std::size_t(cone.config.dim), 0.0);
  off[0] = 1.0;
  CHECK_FALSE(cone.contains(off, 1e-7));
}

TEST_CASE("config JSON round-trip") {
  const auto config = k4_config();
  const nlohmann::json j = config;
  const auto back = j.get<SphereConfig>();
  CHECK(back.dim == config.dim);
  CHECK(back.radius == config.radius);
  CHECK(back.centers == config.centers);
}
