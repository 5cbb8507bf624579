#include "forge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "forge/rng.hpp"

namespace forge {
namespace {

constexpr double kDegenerateTol = 1e-12;
// Tolerance for matching sphere distances to a layer radius.
constexpr double kLayerTol = 1e-7;

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

}  // namespace

SphereConfig build_config(const CenterSet& centers) {
  SphereConfig config;
  config.dim = centers.q + 3;
  config.radius = centers.r;
  for (const auto& xi : centers.points) {
    double n2 = 0.0;
    for (double c : xi) n2 += c * c;
    if (std::abs(std::sqrt(n2) - centers.t) > 1e-8)
      throw std::invalid_argument("build_config: center not on radius-t sphere");
    std::vector<double> c(std::size_t(config.dim), 0.0);
    std::copy(xi.begin(), xi.end(), c.begin() + 3);
    config.centers.push_back(std::move(c));
  }

  const double min_gap = 2.0 * config.radius;
  for (int i = 0; i < config.count(); ++i)
    for (int j = i + 1; j < config.count(); ++j) {
      double d2 = 0.0;
      for (int k = 0; k < config.dim; ++k) {
        const double d = config.centers[std::size_t(i)][std::size_t(k)] -
                         config.centers[std::size_t(j)][std::size_t(k)];
        d2 += d * d;
      }
      if (std::sqrt(d2) < min_gap - 1e-9)
        throw std::invalid_argument("build_config: spheres are not disjoint");
    }

  // Surface sampling check: every sphere point must be a unit vector.
  RandomStream stream(0x5EEDu, 0);
  for (int i = 0; i < config.count(); ++i)
    for (int s = 0; s < 100; ++s) {
      const auto u = stream.uniforms(std::uint64_t(i) * 100 + std::uint64_t(s));
      const double zc = 2.0 * u[0] - 1.0;
      const double phi = 2.0 * std::numbers::pi * u[1];
      const double sl = std::sqrt(std::max(0.0, 1.0 - zc * zc));
      std::vector<double> pt = config.centers[std::size_t(i)];
      pt[0] += config.radius * sl * std::cos(phi);
      pt[1] += config.radius * sl * std::sin(phi);
      pt[2] += config.radius * zc;
      if (std::abs(norm(pt) - 1.0) > 1e-9)
        throw std::invalid_argument("build_config: surface point off the unit sphere");
    }
  return config;
}

SphereQuery nearest_farthest(const SphereConfig& config, int index,
                             const std::vector<double>& z) {
  const auto& c = config.centers[std::size_t(index)];
  const double pvn = std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]);
  if (pvn < kDegenerateTol) throw DegenerateProjection();

  SphereQuery q;
  q.nearest = c;
  q.farthest = c;
  const double s = config.radius / pvn;
  for (int k = 0; k < 3; ++k) {
    q.nearest[std::size_t(k)] += s * z[std::size_t(k)];
    q.farthest[std::size_t(k)] -= s * z[std::size_t(k)];
  }
  double dn = 0.0, df = 0.0, dp = 0.0;
  for (int k = 0; k < config.dim; ++k) {
    const double a = z[std::size_t(k)] - q.nearest[std::size_t(k)];
    const double b = z[std::size_t(k)] - q.farthest[std::size_t(k)];
    dn += a * a;
    df += b * b;
    if (k >= 3) {
      const double w = z[std::size_t(k)] - c[std::size_t(k)];
      dp += w * w;
    }
  }
  q.dist_near = std::sqrt(dn);
  q.dist_far = std::sqrt(df);
  q.plane_dist = std::sqrt(dp);
  return q;
}

std::optional<double> cap_radius(double rho, double dist, double plane_dist,
                                 double ball_radius, bool inside) {
  if (ball_radius <= dist) return std::nullopt;
  double gap2 = dist * dist - plane_dist * plane_dist;
  if (gap2 < 0.0) {
    if (gap2 < -1e-9) throw std::invalid_argument("cap_radius: D < delta");
    gap2 = 0.0;
  }
  const double gap = std::sqrt(gap2);
  const double denom = inside ? rho - gap : rho + gap;
  if (denom <= 0.0) throw std::domain_error("cap_radius: nonpositive denominator");
  const double x2 = rho / denom * (ball_radius * ball_radius - dist * dist);
  return std::sqrt(std::max(x2, 0.0));
}

double cap_area(double rho, double chord_radius) {
  const double full = 4.0 * std::numbers::pi * rho * rho;
  const double area = std::numbers::pi * chord_radius * chord_radius;
  return std::min(area, full);
}

int sphere_of(const SphereConfig& config, const std::vector<double>& z,
              double tol) {
  int best = -1;
  double best_dist = tol;
  for (int i = 0; i < config.count(); ++i) {
    const auto& c = config.centers[std::size_t(i)];
    double pv2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2];
    double dp2 = 0.0;
    for (int k = 3; k < config.dim; ++k) {
      const double w = z[std::size_t(k)] - c[std::size_t(k)];
      dp2 += w * w;
    }
    const double gap = std::sqrt(pv2) - config.radius;
    const double dist = std::sqrt(gap * gap + dp2);
    if (dist <= best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return best;
}

double support_distance(const SphereConfig& config,
                        const std::vector<double>& x) {
  double best = std::numeric_limits<double>::infinity();
  const double pvn = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  for (int i = 0; i < config.count(); ++i) {
    const auto& c = config.centers[std::size_t(i)];
    double dp2 = 0.0;
    for (int k = 3; k < config.dim; ++k) {
      const double w = x[std::size_t(k)] - c[std::size_t(k)];
      dp2 += w * w;
    }
    const double gap = pvn - config.radius;
    best = std::min(best, std::sqrt(gap * gap + dp2));
  }
  return best;
}

bool ConeSupport::contains(const std::vector<double>& x, double tol) const {
  const double n = norm(x);
  if (n < kDegenerateTol) return true;  // the origin
  std::vector<double> e(x);
  for (double& c : e) c /= n;
  return support_distance(config, e) <= tol;
}

bool cone_membership(const ConeSupport& cone, const std::vector<double>& x,
                     double tol) {
  return cone.contains(x, tol);
}

LayerStructure layer_structure(const SphereConfig& config,
                               const std::vector<double>& z,
                               double on_support_tol) {
  LayerStructure ls;
  ls.base_sphere = sphere_of(config, z, on_support_tol);
  if (ls.base_sphere < 0)
    throw std::invalid_argument("layer_structure: z is not on the support");

  const int m = config.count();
  ls.dist_near.resize(std::size_t(m));
  ls.dist_far.resize(std::size_t(m));
  ls.plane_dist.resize(std::size_t(m));
  ls.coefficient.resize(std::size_t(m));
  for (int i = 0; i < m; ++i) {
    const auto q = nearest_farthest(config, i, z);
    ls.dist_near[std::size_t(i)] = q.dist_near;
    ls.dist_far[std::size_t(i)] = q.dist_far;
    ls.plane_dist[std::size_t(i)] = q.plane_dist;
    double gap2 = q.dist_near * q.dist_near - q.plane_dist * q.plane_dist;
    const double gap = std::sqrt(std::max(gap2, 0.0));
    const double pvn = std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]);
    const bool inside = pvn < config.radius;
    ls.coefficient[std::size_t(i)] =
        config.radius / (inside ? config.radius - gap : config.radius + gap);
  }

  // The inductive layer construction: R_1 = 2 r_z; each next radius is the
  // smallest farthest-distance over the current layer; a layer collects the
  // spheres first touched at that radius plus earlier spheres not yet
  // swallowed whole.
  std::vector<std::vector<int>> all_layers;  // C^0, C^1, ...
  all_layers.push_back({ls.base_sphere});
  double radius = 2.0 * config.radius;  // R_1
  for (int guard = 0; guard < 4 * m + 4; ++guard) {
    std::vector<int> layer;
    for (int i = 0; i < m; ++i)
      if (std::abs(ls.dist_near[std::size_t(i)] - radius) <= kLayerTol)
        layer.push_back(i);
    for (const auto& prev : all_layers)
      for (int i : prev)
        if (ls.dist_far[std::size_t(i)] > radius + kLayerTol &&
            std::find(layer.begin(), layer.end(), i) == layer.end())
          layer.push_back(i);
    std::sort(layer.begin(), layer.end());

    ls.radii.push_back(radius);
    if (layer.empty()) break;
    ls.layers.push_back(layer);
    all_layers.push_back(layer);

    double next = std::numeric_limits<double>::infinity();
    for (int i : layer) next = std::min(next, ls.dist_far[std::size_t(i)]);
    radius = next;
  }
  ls.depth = int(ls.radii.size());

  // Identity (cS): every populated layer's coefficients sum to 1.
  for (const auto& layer : all_layers) {
    double s = 0.0;
    for (int i : layer) s += ls.coefficient[std::size_t(i)];
    ls.sum_identity_error = std::max(ls.sum_identity_error, std::abs(s - 1.0));
  }

  // Identity (cSDS): 4 * sum of r_S^2 over spheres retired up to layer i
  // equals sum over C^i of c_S * D_S^2.
  const double r2 = config.radius * config.radius;
  double retired = 0.0;
  for (std::size_t i = 1; i < all_layers.size(); ++i) {
    for (int s : all_layers[i - 1])
      if (std::find(all_layers[i].begin(), all_layers[i].end(), s) ==
          all_layers[i].end())
        retired += r2;
    double rhs = 0.0;
    for (int s : all_layers[i])
      rhs += ls.coefficient[std::size_t(s)] * ls.dist_near[std::size_t(s)] *
             ls.dist_near[std::size_t(s)];
    ls.balance_identity_error =
        std::max(ls.balance_identity_error, std::abs(4.0 * retired - rhs));
  }
  return ls;
}

void to_json(nlohmann::json& j, const SphereConfig& config) {
  j = nlohmann::json{{"d", config.dim},
                     {"r", config.radius},
                     {"centers", config.centers}};
}

void from_json(const nlohmann::json& j, SphereConfig& config) {
  config.dim = j.at("d").get<int>();
  config.radius = j.at("r").get<double>();
  config.centers = j.at("centers").get<std::vector<std::vector<double>>>();
}

}  // namespace forge
