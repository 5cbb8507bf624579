#include "forge/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "forge/linalg.hpp"

namespace forge {

CenterSet embed(const Layering& layering, const SpectralReport& report,
                const EmbedOptions& options) {
  if (!report.embeddable && !options.force_truncate)
    throw std::invalid_argument("embed: layering is not embeddable");

  const int m = layering.m;
  const int p = layering.p();
  const double scale = (2.0 * p - 1.0) / (2.0 * p);  // t^2

  auto gram = delta_matrix(layering);
  for (double& v : gram) v *= scale;
  auto eig = jacobi_eigh(m, std::move(gram));

  // Kept eigen-directions, largest eigenvalue first.
  std::vector<int> kept;
  for (int k = m - 1; k >= 0; --k) {
    const double lambda = eig.values[std::size_t(k)];
    if (lambda > scale * report.rank_tolerance) kept.push_back(k);
    else if (lambda < -scale * report.psd_tolerance && !options.force_truncate)
      throw std::runtime_error("embed: negative eigenvalue beyond tolerance");
  }

  CenterSet centers;
  centers.m = m;
  centers.q = int(kept.size());
  centers.r = 1.0 / std::sqrt(2.0 * p);
  centers.t = std::sqrt(scale);
  centers.points.assign(std::size_t(m), std::vector<double>(kept.size(), 0.0));

  for (std::size_t col = 0; col < kept.size(); ++col) {
    const auto& v = eig.vectors[std::size_t(kept[col])];
    double sign = 1.0;
    for (double c : v) {
      if (std::abs(c) > 1e-12) {
        sign = c > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    const double root = std::sqrt(std::max(eig.values[std::size_t(kept[col])], 0.0));
    for (int i = 0; i < m; ++i)
      centers.points[std::size_t(i)][col] = sign * root * v[std::size_t(i)];
  }
  return centers;
}

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

void note(CenterSetReport& report, double dev, double tol, const std::string& what) {
  report.max_deviation = std::max(report.max_deviation, dev);
  if (dev > tol) report.violations.push_back(what);
}

}  // namespace

CenterSetReport verify_center_set(const CenterSet& centers,
                                  const Layering& layering, double tol) {
  CenterSetReport report;
  const int m = layering.m;
  if (centers.m != m || int(centers.points.size()) != m) {
    report.violations.push_back("dimension mismatch");
    return report;
  }
  const double r2 = centers.r * centers.r;
  const double t2 = centers.t * centers.t;
  note(report, std::abs(r2 + t2 - 1.0), tol, "r^2 + t^2 != 1");

  for (int i = 0; i < m; ++i) {
    double n2 = 0.0;
    for (double c : centers.points[std::size_t(i)]) n2 += c * c;
    note(report, std::abs(std::sqrt(n2) - centers.t), tol,
         "norm violation at point " + std::to_string(i + 1));
  }

  const auto delta = delta_matrix(layering);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double d2 = sq_dist(centers.points[std::size_t(i)],
                                centers.points[std::size_t(j)]);
      const double want = 4.0 * layering.at(i, j) * r2;
      note(report, std::abs(d2 - want), tol,
           "distance violation at pair (" + std::to_string(i + 1) + "," +
               std::to_string(j + 1) + ")");

      // Geodesic consistency on the radius-t sphere.
      double dot = 0.0;
      for (std::size_t k = 0; k < centers.points[std::size_t(i)].size(); ++k)
        dot += centers.points[std::size_t(i)][k] * centers.points[std::size_t(j)][k];
      const double cosang = std::clamp(dot / t2, -1.0, 1.0);
      const double geo = centers.t * std::acos(cosang);
      const double want_geo =
          centers.t *
          std::acos(std::clamp(delta[std::size_t(i) * m + j], -1.0, 1.0));
      // arccos amplifies coordinate error to sqrt scale near +-1; checked
      // with its own tolerance and kept out of max_deviation.
      if (std::abs(geo - want_geo) > 2.0 * std::sqrt(tol))
        report.violations.push_back("geodesic violation at pair (" +
                                    std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ")");
    }

  const auto perms = permutations_of(layering);
  const auto& last = perms[std::size_t(m - 2)];
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < centers.points[std::size_t(i)].size(); ++k) {
      const double v = centers.points[std::size_t(i)][k] +
                       centers.points[std::size_t(last[std::size_t(i)])][k];
      s += v * v;
    }
    note(report, std::sqrt(s), tol,
         "antipodal violation at point " + std::to_string(i + 1));
  }

  report.valid = report.violations.empty();
  return report;
}

CenterSet dyadic_centers(int n) {
  if (n < 0) throw std::invalid_argument("dyadic_centers: n must be >= 0");
  const int m = 1 << (n + 1);
  const int q = n + 1;
  CenterSet centers;
  centers.m = m;
  centers.q = q;
  centers.r = std::pow(2.0, -0.5 * (n + 1));
  centers.t = std::sqrt(1.0 - centers.r * centers.r);
  centers.points.assign(std::size_t(m), std::vector<double>(std::size_t(q)));
  for (int i = 0; i < m; ++i)
    for (int l = 0; l < q; ++l) {
      const double mag = std::sqrt(std::pow(2.0, l)) * centers.r;
      centers.points[std::size_t(i)][std::size_t(l)] =
          ((i >> l) & 1) ? mag : -mag;
    }
  return centers;
}

void to_json(nlohmann::json& j, const CenterSet& centers) {
  j = nlohmann::json{{"m", centers.m},
                     {"q", centers.q},
                     {"r", centers.r},
                     {"t", centers.t},
                     {"points", centers.points}};
}

void from_json(const nlohmann::json& j, CenterSet& centers) {
  centers.m = j.at("m").get<int>();
  centers.q = j.at("q").get<int>();
  centers.r = j.at("r").get<double>();
  centers.t = j.at("t").get<double>();
  centers.points = j.at("points").get<std::vector<std::vector<double>>>();
}

}  // namespace forge
