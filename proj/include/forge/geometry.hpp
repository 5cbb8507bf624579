#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "embedding.hpp"
#include "json.hpp"

namespace forge {

/// Union of equal-radius 2-spheres on the unit sphere of d-space. Every
/// sphere lives in an affine copy of the distinguished 3-plane V (the first
/// three coordinates); centers are (0,0,0,xi_i).
struct SphereConfig {
  int dim = 0;       // ambient dimension d = q + 3
  double radius = 0.0;
  std::vector<std::vector<double>> centers;  // m centers in d-space

  int count() const { return int(centers.size()); }
};

/// The cone over a SphereConfig: {x : x/|x| in Omega} plus the origin.
struct ConeSupport {
  SphereConfig config;
  bool contains(const std::vector<double>& x, double tol) const;
};

/// Thrown by nearest_farthest when the projection of z onto V vanishes and
/// nearest/farthest points are not unique.
struct DegenerateProjection : std::runtime_error {
  DegenerateProjection() : std::runtime_error("projection onto V is zero") {}
};

struct SphereQuery {
  std::vector<double> nearest;   // P_S(z)
  std::vector<double> farthest;  // Pbar_S(z)
  double dist_near = 0.0;        // D_S(z)
  double dist_far = 0.0;         // Dbar_S(z)
  double plane_dist = 0.0;       // delta_S(z), distance to the affine 3-plane
};

/// Layer decomposition of the configuration as seen from a base point z on
/// the support, with the per-sphere cap coefficients c_S(z) and the two
/// balance identities evaluated.
struct LayerStructure {
  int base_sphere = -1;
  int depth = 0;                       // m(z)
  std::vector<double> radii;           // R_1..R_depth
  std::vector<std::vector<int>> layers;  // C^1..C^depth (sphere indices)
  std::vector<double> dist_near;       // per sphere
  std::vector<double> dist_far;
  std::vector<double> plane_dist;
  std::vector<double> coefficient;     // c_S(z)
  double sum_identity_error = 0.0;     // max_i |sum_{S in C^i} c_S - 1|
  double balance_identity_error = 0.0; // max_i of the layer balance residual
};

/// Builds the sphere union over a center set and verifies its invariants
/// (unit-norm surface samples, pairwise center distance >= 2r).
SphereConfig build_config(const CenterSet& centers);

/// Nearest/farthest points of sphere `index` from z (Euclidean), plus the
/// distance to the sphere's affine 3-plane. Throws DegenerateProjection when
/// the V-projection of z vanishes.
SphereQuery nearest_farthest(const SphereConfig& config, int index,
                             const std::vector<double>& z);

/// Chord radius x of the cap B(e,R) cut on a sphere of radius rho with
/// d(e,S) = D and plane distance delta:
///   x^2 = rho / (rho + (-1)^sgn * sqrt(D^2 - delta^2)) * (R^2 - D^2).
/// `inside` is the sgn flag (true when the projection of e falls inside S).
/// Returns nullopt when R <= D (empty intersection).
std::optional<double> cap_radius(double rho, double dist, double plane_dist,
                                 double ball_radius, bool inside);

/// Spherical cap area pi*x^2, clamped at the full area 4*pi*rho^2.
double cap_area(double rho, double chord_radius);

LayerStructure layer_structure(const SphereConfig& config,
                               const std::vector<double>& z,
                               double on_support_tol = 1e-9);

bool cone_membership(const ConeSupport& cone, const std::vector<double>& x,
                     double tol);

/// Index of the sphere containing z within tol, or -1.
int sphere_of(const SphereConfig& config, const std::vector<double>& z,
              double tol);

/// Distance from x to the union of spheres.
double support_distance(const SphereConfig& config,
                        const std::vector<double>& x);

void to_json(nlohmann::json& j, const SphereConfig& config);
void from_json(const nlohmann::json& j, SphereConfig& config);

}  // namespace forge
