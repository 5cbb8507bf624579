#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "forge/embedding.hpp"
#include "forge/geometry.hpp"
#include "forge/kernels.hpp"
#include "forge/layering.hpp"
#include "forge/measure.hpp"
#include "forge/rng.hpp"
#include "forge/spectral.hpp"

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

SphereConfig unit_sphere() {
  SphereConfig config;
  config.dim = 3;
  config.radius = 1.0;
  config.centers = {{0.0, 0.0, 0.0}};
  return config;
}

}  // namespace

TEST_CASE("single unit sphere: ball area pi R^2 up to the full sphere") {
  const auto config = unit_sphere();
  const std::vector<double> x = {1.0, 0.0, 0.0};
  CHECK(sigma_ball_analytic(config, x, 0.0) == 0.0);
  CHECK(std::abs(sigma_ball_analytic(config, x, 1.0) - kPi) < 1e-12);
  CHECK(std::abs(sigma_ball_analytic(config, x, 1.3) - kPi * 1.69) < 1e-12);
  CHECK(std::abs(sigma_ball_analytic(config, x, 2.0) - 4.0 * kPi) < 1e-12);
  CHECK(std::abs(sigma_ball_analytic(config, x, 5.0) - 4.0 * kPi) < 1e-12);
}

TEST_CASE("antipodal pair: 2-uniform at the unit level") {
  const auto config = build_config(dyadic_centers(0));
  const auto x = on_sphere(config, 0, 0.4, 2.0);
  for (double R : {0.3, 1.0, 1.4, 1.999}) {
    CHECK(std::abs(sigma_ball_analytic(config, x, R) - kPi * R * R) < 1e-9);
  }
  CHECK(std::abs(sigma_ball_analytic(config, x, 2.0) - 4.0 * kPi) < 1e-9);
  CHECK(std::abs(sigma_ball_analytic(config, x, 3.0) - 4.0 * kPi) < 1e-9);
}

TEST_CASE("sigma is monotone in the ball radius") {
  const auto config = build_config(dyadic_centers(2));
  const auto x = on_sphere(config, 3, -0.2, 1.0);
  double prev = 0.0;
  for (double R = 0.05; R <= 2.5; R += 0.05) {
    const double v = sigma_ball_analytic(config, x, R);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("sigma analytic vs Monte Carlo on random queries") {
  const auto config = build_config(dyadic_centers(1));
  RandomStream stream(100, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = stream.uniforms(std::uint64_t(trial));
    const int sphere = std::min(3, int(u[0] * 4));
    const auto x = on_sphere(config, sphere, 2.0 * u[1] - 1.0, 2.0 * kPi * u[2]);
    const double R = 0.2 + 1.9 * u[3];
    const double analytic = sigma_ball_analytic(config, x, R);
    const auto [mc, se] = sigma_ball_mc(config, x, R, 100000, 1234 + trial);
    CHECK(std::abs(mc - analytic) <= 3.0 * se + 1e-12);
  }
}

TEST_CASE("sigma MC is deterministic and ISA-independent") {
  const auto config = build_config(dyadic_centers(1));
  const auto x = on_sphere(config, 0, 0.6, 0.3);
  const auto a = sigma_ball_mc(config, x, 1.1, 50000, 9);
  const auto b = sigma_ball_mc(config, x, 1.1, 50000, 9);
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
  kernels::force_isa(kernels::Isa::scalar);
  const auto c = sigma_ball_mc(config, x, 1.1, 50000, 9);
  kernels::reset_isa();
  CHECK(a.first == c.first);
}

TEST_CASE("degenerate direction: all-or-nothing spheres") {
  // x along the center axis projects to zero in the sphere's own 3-plane.
  const auto config = build_config(dyadic_centers(0));
  std::vector<double> x(std::size_t(config.dim), 0.0);
  x[3] = config.centers[0][3];
  const double dist0 = config.radius;  // every point of sphere 0 is this far
  CHECK(sigma_ball_analytic(config, x, 0.9 * dist0) == 0.0);
  CHECK(std::abs(sigma_ball_analytic(config, x, 1.01 * dist0) -
                 4.0 * kPi * config.radius * config.radius) < 1e-12);
}

TEST_CASE("cone ball at the apex integrates the polar formula") {
  ConeSupport cone{build_config(dyadic_centers(1))};
  std::vector<double> origin(std::size_t(cone.config.dim), 0.0);
  const double sigma_total = 4.0 * kPi;  // 4 spheres x 4 pi (1/2)^2
  for (double r : {0.3, 1.0, 2.5}) {
    CHECK(std::abs(cone_ball_analytic(cone, origin, r) -
                   r * r * r / 3.0 * sigma_total) < 1e-9);
    CHECK(std::abs(cone_ball_analytic(cone, origin, r) -
                   4.0 / 3.0 * kPi * r * r * r) < 1e-9);
  }
}

TEST_CASE("antipodal-pair cone: nu(B(x,1/2)) = pi/6 at a unit base point") {
  ConeSupport cone{build_config(dyadic_centers(0))};
  const auto x = on_sphere(cone.config, 0, 0.25, 5.0);
  const double analytic = cone_ball_analytic(cone, x, 0.5);
  CHECK(std::abs(analytic - kPi / 6.0) < 1e-8);
  const auto [mc, se] = cone_ball_mc(cone, x, 0.5, 200000, 77);
  CHECK(std::abs(mc - kPi / 6.0) <= 3.0 * se);
}

TEST_CASE("3-uniformity across scales on the 8-sphere cone") {
  ConeSupport cone{build_config(dyadic_centers(2))};
  const auto e = on_sphere(cone.config, 5, -0.6, 2.2);
  for (double lambda : {0.1, 1.0, 1.7, 10.0}) {
    std::vector<double> x(e);
    for (double& c : x) c *= lambda;
    const double r = 0.9 * lambda;
    const double analytic = cone_ball_analytic(cone, x, r);
    CHECK(std::abs(analytic - 4.0 / 3.0 * kPi * r * r * r) < 1e-6);
  }
}

TEST_CASE("cone ball rejects off-cone base points") {
  ConeSupport cone{build_config(dyadic_centers(0))};
  std::vector<double> x(std::size_t(cone.config.dim), 0.0);
  x[0] = 1.0;
  CHECK_THROWS_AS(cone_ball_analytic(cone, x, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(cone_ball_analytic(cone, x, -1.0), std::invalid_argument);
}

TEST_CASE("cone MC from the apex has zero variance") {
  ConeSupport cone{build_config(dyadic_centers(0))};
  std::vector<double> origin(std::size_t(cone.config.dim), 0.0);
  const auto [mc, se] = cone_ball_mc(cone, origin, 0.8, 10000, 3);
  CHECK(se == 0.0);
  CHECK(std::abs(mc - 4.0 / 3.0 * kPi * 0.8 * 0.8 * 0.8) < 1e-12);
}

TEST_CASE("verify_uniformity passes on the antipodal pair") {
  ConeSupport cone{build_config(dyadic_centers(0))};
  VerifyOptions options;
  options.trials = 5;
  options.samples = 100000;
  const auto reports = verify_uniformity(cone, options);
  CHECK(reports.size() == 10);
  CHECK(all_pass(reports));
  for (const auto& rep : reports) {
    CHECK((rep.kind == "sigma" || rep.kind == "nu"));
    CHECK(rep.query_radius > 0.0);
  }
}

TEST_CASE("verify_uniformity fails on a truncated non-embeddable layering") {
  const auto l = enumerate_layerings(6).front();
  EmbedOptions options;
  options.force_truncate = true;
  const auto centers = embed(l, spectral_report(l), options);
  // Assemble the configuration without the validity checks (the whole point
  // is that this one is geometrically wrong).
  SphereConfig config;
  config.dim = centers.q + 3;
  config.radius = centers.r;
  for (const auto& xi : centers.points) {
    std::vector<double> c(std::size_t(config.dim), 0.0);
    std::copy(xi.begin(), xi.end(), c.begin() + 3);
    config.centers.push_back(std::move(c));
  }
  bool sigma_fails = false;
  RandomStream stream(5, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = stream.uniforms(std::uint64_t(trial));
    const int sphere = std::min(5, int(u[0] * 6));
    const auto x = on_sphere(config, sphere, 2.0 * u[1] - 1.0, 2.0 * kPi * u[2]);
    const double R = 0.3 + 1.5 * u[3];
    if (std::abs(sigma_ball_analytic(config, x, R) - kPi * R * R) > 1e-9)
      sigma_fails = true;
  }
  CHECK(sigma_fails);
}

TEST_CASE("measure report JSON shape") {
  ConeSupport cone{build_config(dyadic_centers(0))};
  VerifyOptions options;
  options.trials = 1;
  options.samples = 1000;
  const auto reports = verify_uniformity(cone, options);
  const nlohmann::json j = reports;
  REQUIRE(j.is_array());
  for (const auto& rep : j) {
    CHECK(rep.contains("kind"));
    CHECK(rep.contains("analytic"));
    CHECK(rep.contains("mc_estimate"));
    CHECK(rep.contains("mc_stderr"));
    CHECK(rep.contains("target"));
    CHECK(rep.contains("pass"));
  }
}
