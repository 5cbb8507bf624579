#include "forge/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "forge/linalg.hpp"

namespace forge {

GraphMatrices graph_matrices(const Layering& layering) {
  const int m = layering.m;
  GraphMatrices g;
  g.m = m;
  g.adjacency.assign(std::size_t(m) * m, 0.0);
  g.degree.assign(std::size_t(m) * m, 0.0);
  g.laplacian.assign(std::size_t(m) * m, 0.0);
  g.laplacian_exact.assign(std::size_t(m) * m, 0);
  for (int i = 0; i < m; ++i) {
    long long deg = 0;
    for (int j = 0; j < m; ++j) {
      const int d = layering.at(i, j);
      g.adjacency[std::size_t(i) * m + j] = double(d);
      deg += d;
      if (i != j) {
        g.laplacian[std::size_t(i) * m + j] = -double(d);
        g.laplacian_exact[std::size_t(i) * m + j] = -d;
      }
    }
    g.degree[std::size_t(i) * m + i] = double(deg);
    g.laplacian[std::size_t(i) * m + i] = double(deg);
    g.laplacian_exact[std::size_t(i) * m + i] = deg;
  }
  return g;
}

std::vector<double> delta_matrix(const Layering& layering) {
  const int m = layering.m;
  const double denom = double(m - 1);  // 2p-1
  std::vector<double> delta(std::size_t(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      delta[std::size_t(i) * m + j] = (denom - 2.0 * layering.at(i, j)) / denom;
  return delta;
}

bool delta_identity_exact(const Layering& layering) {
  // (2p-1)*Delta = (2p-1)*(J - 2p*I) + 2*L, all integer.
  const int m = layering.m;
  const long long c = m - 1;
  const auto g = graph_matrices(layering);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const long long lhs = c - 2LL * layering.at(i, j);
      const long long rhs = c * (1LL - (i == j ? m : 0)) +
                            2LL * g.laplacian_exact[std::size_t(i) * m + j];
      if (lhs != rhs) return false;
    }
  return true;
}

SpectralReport spectral_report(const Layering& layering, double psd_tolerance) {
  const int m = layering.m;
  const int p = layering.p();
  SpectralReport report;
  report.psd_tolerance = psd_tolerance >= 0.0 ? psd_tolerance : 1e-9 * m;
  report.threshold = double(p) * (2.0 * p - 1.0);

  const auto g = graph_matrices(layering);
  auto l_eig = jacobi_eigh(m, g.laplacian);
  report.l_eigs = std::move(l_eig.values);
  report.gap = m >= 2 ? report.l_eigs[1] : 0.0;

  auto d_eig = jacobi_eigh(m, delta_matrix(layering));
  report.delta_eigs = std::move(d_eig.values);

  const double max_eig = report.delta_eigs.back();
  report.rank_tolerance = 1e-8 * std::max(max_eig, 0.0);
  report.embeddable = report.delta_eigs.front() >= -report.psd_tolerance;
  report.delta_rank = 0;
  for (double v : report.delta_eigs)
    if (v > report.rank_tolerance) ++report.delta_rank;
  return report;
}

std::vector<std::pair<Layering, SpectralReport>> screen(
    const std::vector<Layering>& layerings, double psd_tolerance) {
  std::vector<std::pair<Layering, SpectralReport>> kept;
  for (std::size_t idx = 0; idx < layerings.size(); ++idx) {
    SpectralReport report;
    try {
      report = spectral_report(layerings[idx], psd_tolerance);
    } catch (const std::exception& e) {
      throw std::runtime_error("screen: element " + std::to_string(idx + 1) +
                               ": " + e.what());
    }
    if (!report.embeddable) continue;
    const auto& l = layerings[idx];
    if (l.m >= 4 && l.p() % 2 != 0)
      throw std::logic_error("screen: embeddable layering with odd p at element " +
                             std::to_string(idx + 1));
    kept.emplace_back(l, std::move(report));
  }
  return kept;
}

void to_json(nlohmann::json& j, const SpectralReport& report) {
  j = nlohmann::json{{"gap", report.gap},
                     {"threshold", report.threshold},
                     {"embeddable", report.embeddable},
                     {"delta_rank", report.delta_rank},
                     {"l_eigs", report.l_eigs},
                     {"delta_eigs", report.delta_eigs}};
}

}  // namespace forge
