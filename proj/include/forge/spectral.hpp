#pragma once

#include <functional>
#include <vector>

#include "json.hpp"
#include "layering.hpp"

namespace forge {

/// Adjacency A_ij = d_ij, degree D_ii = sum_j d_ij = p(2p-1)*2 / ... = m(m-1)/2,
/// Laplacian L = D - A. Integer-valued; stored as doubles plus exact copies.
struct GraphMatrices {
  int m = 0;
  std::vector<double> adjacency;  // m*m
  std::vector<double> degree;     // m*m diagonal
  std::vector<double> laplacian;  // m*m
  std::vector<long long> laplacian_exact;
};

struct SpectralReport {
  std::vector<double> l_eigs;      // Laplacian spectrum, ascending
  std::vector<double> delta_eigs;  // Delta spectrum, ascending
  double gap = 0.0;                // second-smallest Laplacian eigenvalue
  double threshold = 0.0;          // p(2p-1)
  bool embeddable = false;
  int delta_rank = 0;
  double psd_tolerance = 0.0;
  double rank_tolerance = 0.0;
};

GraphMatrices graph_matrices(const Layering& layering);

/// Delta_ij = (2p-1-2*d_ij)/(2p-1); the prospective Gram matrix whose
/// positive semidefiniteness decides embeddability.
std::vector<double> delta_matrix(const Layering& layering);

/// Verifies Delta = J - 2p*I + 2/(2p-1)*L exactly, in integers scaled by 2p-1.
bool delta_identity_exact(const Layering& layering);

/// Defaults: psd_tolerance = 1e-9*m (the K_4 case sits exactly on the gap
/// threshold, so roundoff-scale negative eigenvalues must be accepted),
/// rank_tolerance = 1e-8 * max Delta eigenvalue.
SpectralReport spectral_report(const Layering& layering,
                               double psd_tolerance = -1.0);

/// Order-preserving filter keeping the embeddable layerings. Verifies the
/// parity consequence (p even for m >= 4) on every kept element.
std::vector<std::pair<Layering, SpectralReport>> screen(
    const std::vector<Layering>& layerings, double psd_tolerance = -1.0);

void to_json(nlohmann::json& j, const SpectralReport& report);

}  // namespace forge
