#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "json.hpp"

namespace forge {

struct MeasureReport {
  std::string kind;  // "sigma" or "nu"
  std::vector<double> query_point;
  double query_radius = 0.0;
  double analytic = 0.0;
  double mc_estimate = 0.0;
  double mc_stderr = 0.0;
  double target = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double abs_tol = 0.0;
  bool pass = false;
};

/// H^2(B(x,R) ∩ Omega) by per-sphere spherical caps; exact for any x, not
/// only on-support points. A sphere seen edge-on (vanishing V-projection)
/// is equidistant from x and contributes all or nothing.
double sigma_ball_analytic(const SphereConfig& config,
                           const std::vector<double>& x, double ball_radius);

/// Monte Carlo oracle for sigma_ball_analytic: area-weighted surface sampling
/// with the latitude stratified across sample indices (the reported binomial
/// standard error is therefore conservative). Deterministic for a given seed,
/// independent of chunking or thread count.
std::pair<double, double> sigma_ball_mc(const SphereConfig& config,
                                        const std::vector<double>& x,
                                        double ball_radius,
                                        std::uint64_t samples,
                                        std::uint64_t seed);

/// H^3(B(x,r) ∩ Sigma) through the co-area shell decomposition: a 1-D
/// quadrature over shell radii of per-shell cap areas, subdivided at the
/// radii where any sphere's slice switches empty/partial/full. No uniformity
/// assumption is used. x must lie on the cone (or be the origin).
double cone_ball_analytic(const ConeSupport& cone, const std::vector<double>& x,
                          double ball_radius, double quad_tol = 1e-10);

/// Monte Carlo oracle for cone_ball_analytic: shell radius sampled with
/// density proportional to rho^2 over the reachable annulus (stratified
/// across sample indices), surface point area-weighted.
std::pair<double, double> cone_ball_mc(const ConeSupport& cone,
                                       const std::vector<double>& x,
                                       double ball_radius,
                                       std::uint64_t samples,
                                       std::uint64_t seed);

struct VerifyOptions {
  int trials = 20;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  double sigma_abs_tol = 1e-9;
  double nu_abs_tol = 1e-6;
};

/// Draws random on-support base points and radii and certifies both the
/// spherical 2-uniformity (sigma(B) = pi R^2, = 4 pi at R = 2) and the
/// conical 3-uniformity (nu(B) = 4/3 pi r^3), analytically and by MC.
std::vector<MeasureReport> verify_uniformity(const ConeSupport& cone,
                                             const VerifyOptions& options);

bool all_pass(const std::vector<MeasureReport>& reports);

void to_json(nlohmann::json& j, const MeasureReport& report);

}  // namespace forge
