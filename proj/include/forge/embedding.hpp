#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "layering.hpp"
#include "spectral.hpp"

namespace forge {

/// Distance-symmetric centers xi_i on the sphere of radius t = sqrt((2p-1)/2p),
/// expressed in the minimal q = delta_rank dimensions. The induced spheres
/// have radius r = 1/sqrt(2p) and r^2 + t^2 = 1.
struct CenterSet {
  int m = 0;
  int q = 0;
  double r = 0.0;
  double t = 0.0;
  std::vector<std::vector<double>> points;  // m points in q-space
};

struct CenterSetReport {
  bool valid = false;
  std::vector<std::string> violations;
  double max_deviation = 0.0;
};

struct EmbedOptions {
  /// Clamp negative Delta eigenvalues to zero instead of failing. Used to
  /// build negative controls from non-embeddable layerings.
  bool force_truncate = false;
};

/// Factors ((2p-1)/2p)*Delta = A^T A through the eigendecomposition and
/// returns the columns of A. The Gram matrix of the result reproduces
/// ((2p-1)/2p)*Delta; eigenvector signs are fixed (first nonzero coordinate
/// positive) so output is deterministic.
CenterSet embed(const Layering& layering, const SpectralReport& report,
                const EmbedOptions& options = {});

/// Checks |xi_i| = t, |xi_i - xi_j|^2 = 4 d_ij r^2, antipodal pairing
/// xi_{l_{m-1}(i)} = -xi_i, and the geodesic distances t*arccos(Delta_ij).
CenterSetReport verify_center_set(const CenterSet& centers,
                                  const Layering& layering, double tol = 1e-8);

/// Direct coordinates of the dyadic rectangular parallelotope: 2^{n+1}
/// points in q = n+1 dimensions, coordinate l = +-sqrt(2^{l-1})*r, centered
/// so every point has norm t. Agrees with embed(dyadic_layering(n)) up to a
/// global orthogonal map.
CenterSet dyadic_centers(int n);

void to_json(nlohmann::json& j, const CenterSet& centers);
void from_json(const nlohmann::json& j, CenterSet& centers);

}  // namespace forge
