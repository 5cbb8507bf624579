#include "forge/measure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <stdexcept>

#include "forge/kernels.hpp"
#include "forge/rng.hpp"

namespace forge {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kChunk = 1 << 15;

struct SphereView {
  double pvn = 0.0;        // |P_V(x)|
  double plane_dist = 0.0; // delta_S(x)
  double dist_near = 0.0;
  double dist_far = 0.0;
  bool degenerate = false;
};

SphereView view_sphere(const SphereConfig& config, int index,
                       const std::vector<double>& x) {
  const auto& c = config.centers[std::size_t(index)];
  SphereView v;
  v.pvn = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  double dp2 = 0.0;
  for (int k = 3; k < config.dim; ++k) {
    const double w = x[std::size_t(k)] - c[std::size_t(k)];
    dp2 += w * w;
  }
  v.plane_dist = std::sqrt(dp2);
  if (v.pvn < 1e-12) {
    // Every sphere point is equidistant from x.
    v.degenerate = true;
    v.dist_near = v.dist_far =
        std::sqrt(config.radius * config.radius + dp2);
    return v;
  }
  const double gap_near = v.pvn - config.radius;
  const double gap_far = v.pvn + config.radius;
  v.dist_near = std::sqrt(gap_near * gap_near + dp2);
  v.dist_far = std::sqrt(gap_far * gap_far + dp2);
  return v;
}

double sphere_cap_measure(const SphereConfig& config, const SphereView& v,
                          double ball_radius) {
  const double full = 4.0 * kPi * config.radius * config.radius;
  if (v.degenerate) return ball_radius > v.dist_near ? full : 0.0;
  if (ball_radius <= v.dist_near) return 0.0;
  if (ball_radius >= v.dist_far) return full;
  const bool inside = v.pvn < config.radius;
  const auto chord = cap_radius(config.radius, v.dist_near, v.plane_dist,
                                ball_radius, inside);
  return chord ? cap_area(config.radius, *chord) : 0.0;
}

}  // namespace

double sigma_ball_analytic(const SphereConfig& config,
                           const std::vector<double>& x, double ball_radius) {
  if (ball_radius < 0.0)
    throw std::invalid_argument("sigma_ball_analytic: negative radius");
  if (int(x.size()) != config.dim)
    throw std::invalid_argument("sigma_ball_analytic: dimension mismatch");
  double total = 0.0;
  for (int i = 0; i < config.count(); ++i)
    total += sphere_cap_measure(config, view_sphere(config, i, x), ball_radius);
  return total;
}

std::pair<double, double> sigma_ball_mc(const SphereConfig& config,
                                        const std::vector<double>& x,
                                        double ball_radius,
                                        std::uint64_t samples,
                                        std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("sigma_ball_mc: samples < 1");
  const std::uint64_t per_sphere =
      std::max<std::uint64_t>(1, samples / std::uint64_t(config.count()));
  const double area = 4.0 * kPi * config.radius * config.radius;

  double estimate = 0.0;
  double variance = 0.0;
  std::vector<double> u1(kChunk), u2(kChunk), u3(kChunk);
  for (int i = 0; i < config.count(); ++i) {
    const auto& c = config.centers[std::size_t(i)];
    double dp2 = 0.0;
    for (int k = 3; k < config.dim; ++k) {
      const double w = x[std::size_t(k)] - c[std::size_t(k)];
      dp2 += w * w;
    }
    const double thresh = ball_radius * ball_radius - dp2;
    RandomStream stream(seed, std::uint64_t(i));
    std::uint64_t count = 0;
    for (std::uint64_t base = 0; base < per_sphere; base += kChunk) {
      const std::size_t n = std::size_t(std::min<std::uint64_t>(kChunk, per_sphere - base));
      for (std::size_t s = 0; s < n; ++s) {
        const auto u = stream.uniforms(base + s);
        // Latitude is stratified over the sample index; the marginal stays
        // uniform in area while the variance drops, so the binomial stderr
        // below is a conservative estimate.
        const double frac = (double(base + s) + u[0]) / double(per_sphere);
        const double zc = 2.0 * frac - 1.0;
        const double phi = 2.0 * kPi * u[1];
        const double sl = std::sqrt(std::max(0.0, 1.0 - zc * zc));
        u1[s] = sl * std::cos(phi);
        u2[s] = sl * std::sin(phi);
        u3[s] = zc;
      }
      count += kernels::count_sigma(u1.data(), u2.data(), u3.data(), n, x[0],
                                    x[1], x[2], config.radius, thresh);
    }
    const double p = double(count) / double(per_sphere);
    estimate += area * p;
    variance += area * area * p * (1.0 - p) / double(per_sphere);
  }
  return {estimate, std::sqrt(variance)};
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) <= 15.0 * tol)
    return left + right + err / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (b <= a) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

double cone_ball_analytic(const ConeSupport& cone, const std::vector<double>& x,
                          double ball_radius, double quad_tol) {
  if (ball_radius <= 0.0)
    throw std::invalid_argument("cone_ball_analytic: radius must be positive");
  const SphereConfig& config = cone.config;

  double lambda2 = 0.0;
  for (double c : x) lambda2 += c * c;
  const double lambda = std::sqrt(lambda2);

  if (lambda < 1e-12) {
    double sigma_total = 0.0;
    for (int i = 0; i < config.count(); ++i)
      sigma_total += 4.0 * kPi * config.radius * config.radius;
    const double r3 = ball_radius * ball_radius * ball_radius;
    return r3 / 3.0 * sigma_total;
  }
  if (!cone.contains(x, 1e-7))
    throw std::invalid_argument("cone_ball_analytic: x is not on the cone");

  std::vector<double> e(x);
  for (double& c : e) c /= lambda;

  const double lo = std::max(0.0, lambda - ball_radius);
  const double hi = lambda + ball_radius;

  // Slice radius at the unit-sphere level: the shell at radius rho meets
  // B(x,r) in a cap of chord radius R with R^2 = (rho/lambda)(r^2-(rho-lambda)^2),
  // so the unit-level cap radius is R/rho.
  auto slice = [&](double rho) {
    if (rho <= 0.0) return 0.0;
    const double R2 =
        rho / lambda *
        (ball_radius * ball_radius - (rho - lambda) * (rho - lambda));
    if (R2 <= 0.0) return 0.0;
    return rho * rho * sigma_ball_analytic(config, e, std::sqrt(R2) / rho);
  };

  // Between transition radii the integrand is piecewise cubic, so Simpson
  // nodes pinned at the transitions converge immediately.
  std::set<double> cuts{lo, hi};
  for (int i = 0; i < config.count(); ++i) {
    const auto v = view_sphere(config, i, e);
    for (double threshold : {v.dist_near, v.dist_far}) {
      // Solve (rho/lambda)(r^2-(rho-lambda)^2) = rho^2*threshold^2.
      const double b = lambda * (threshold * threshold - 2.0);
      const double c = lambda2 - ball_radius * ball_radius;
      const double disc = b * b - 4.0 * c;
      if (disc < 0.0) continue;
      const double root = std::sqrt(disc);
      for (double rho : {(-b - root) / 2.0, (-b + root) / 2.0})
        if (rho > lo && rho < hi) cuts.insert(rho);
    }
  }

  double total = 0.0;
  double prev = lo;
  const double seg_tol = quad_tol / double(cuts.size());
  for (double cut : cuts) {
    if (cut > prev) total += integrate(slice, prev, cut, seg_tol);
    prev = cut;
  }
  return total;
}

std::pair<double, double> cone_ball_mc(const ConeSupport& cone,
                                       const std::vector<double>& x,
                                       double ball_radius,
                                       std::uint64_t samples,
                                       std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("cone_ball_mc: samples < 1");
  const SphereConfig& config = cone.config;

  double lambda2 = 0.0;
  for (double c : x) lambda2 += c * c;
  const double lambda = std::sqrt(lambda2);
  const double lo = std::max(0.0, lambda - ball_radius);
  const double hi = lambda + ball_radius;
  const double lo3 = lo * lo * lo;
  const double hi3 = hi * hi * hi;

  const std::uint64_t per_sphere =
      std::max<std::uint64_t>(1, samples / std::uint64_t(config.count()));
  const double shell_measure =
      4.0 * kPi * config.radius * config.radius * (hi3 - lo3) / 3.0;
  const double thresh = ball_radius * ball_radius;

  double estimate = 0.0;
  double variance = 0.0;
  std::vector<double> rho(kChunk), u1(kChunk), u2(kChunk), u3(kChunk);
  for (int i = 0; i < config.count(); ++i) {
    const auto& c = config.centers[std::size_t(i)];
    double a = 0.0;
    for (int k = 3; k < config.dim; ++k)
      a += c[std::size_t(k)] * x[std::size_t(k)];
    RandomStream stream(seed, 0x636F6E65u + std::uint64_t(i));
    std::uint64_t count = 0;
    for (std::uint64_t base = 0; base < per_sphere; base += kChunk) {
      const std::size_t n = std::size_t(std::min<std::uint64_t>(kChunk, per_sphere - base));
      for (std::size_t s = 0; s < n; ++s) {
        const auto u = stream.uniforms(base + s);
        const double zc = 2.0 * u[0] - 1.0;
        const double phi = 2.0 * kPi * u[1];
        const double sl = std::sqrt(std::max(0.0, 1.0 - zc * zc));
        u1[s] = sl * std::cos(phi);
        u2[s] = sl * std::sin(phi);
        u3[s] = zc;
        // Shell radius stratified over the sample index (see sigma_ball_mc).
        const double frac = (double(base + s) + u[2]) / double(per_sphere);
        rho[s] = std::cbrt(lo3 + frac * (hi3 - lo3));
      }
      count += kernels::count_cone(rho.data(), u1.data(), u2.data(), u3.data(),
                                   n, a, x[0], x[1], x[2], config.radius,
                                   lambda2, thresh);
    }
    const double p = double(count) / double(per_sphere);
    estimate += shell_measure * p;
    variance += shell_measure * shell_measure * p * (1.0 - p) / double(per_sphere);
  }
  return {estimate, std::sqrt(variance)};
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<double> surface_point(const SphereConfig& config, int sphere,
                                  double z, double phi) {
  std::vector<double> pt = config.centers[std::size_t(sphere)];
  const double sl = std::sqrt(std::max(0.0, 1.0 - z * z));
  pt[0] += config.radius * sl * std::cos(phi);
  pt[1] += config.radius * sl * std::sin(phi);
  pt[2] += config.radius * z;
  return pt;
}

}  // namespace

std::vector<MeasureReport> verify_uniformity(const ConeSupport& cone,
                                             const VerifyOptions& options) {
  if (options.trials < 1)
    throw std::invalid_argument("verify_uniformity: trials < 1");
  const SphereConfig& config = cone.config;
  std::vector<MeasureReport> reports;
  RandomStream stream(options.seed, 0x7472696Cu);  // trial-parameter stream

  for (int trial = 0; trial < options.trials; ++trial) {
    const auto ua = stream.uniforms(std::uint64_t(trial) * 2);
    const auto ub = stream.uniforms(std::uint64_t(trial) * 2 + 1);
    const int sphere =
        std::min(config.count() - 1, int(ua[0] * config.count()));
    const auto base =
        surface_point(config, sphere, 2.0 * ua[1] - 1.0, 2.0 * kPi * ua[2]);

    // Spherical component at the unit level.
    {
      MeasureReport rep;
      rep.kind = "sigma";
      rep.query_point = base;
      rep.query_radius = std::max(1e-3, ua[3] * 2.0);  // R in (0, 2]
      rep.samples = options.samples;
      rep.seed = mix_seed(options.seed, std::uint64_t(trial) * 2);
      rep.abs_tol = options.sigma_abs_tol;
      rep.target = rep.query_radius < 2.0
                       ? kPi * rep.query_radius * rep.query_radius
                       : 4.0 * kPi;
      rep.analytic = sigma_ball_analytic(config, base, rep.query_radius);
      const auto mc =
          sigma_ball_mc(config, base, rep.query_radius, rep.samples, rep.seed);
      rep.mc_estimate = mc.first;
      rep.mc_stderr = mc.second;
      rep.pass = std::abs(rep.analytic - rep.target) <= rep.abs_tol &&
                 std::abs(rep.mc_estimate - rep.target) <=
                     3.0 * rep.mc_stderr + rep.abs_tol;
      reports.push_back(std::move(rep));
    }

    // Conical measure at a random scale.
    {
      const double scale = 0.1 + ub[0] * 9.9;
      std::vector<double> xpt(base);
      for (double& c : xpt) c *= scale;

      MeasureReport rep;
      rep.kind = "nu";
      rep.query_point = xpt;
      rep.query_radius = std::max(1e-3, ub[1] * 4.0) * scale;  // in (0, 4|x|]
      rep.samples = options.samples;
      rep.seed = mix_seed(options.seed, std::uint64_t(trial) * 2 + 1);
      rep.abs_tol = options.nu_abs_tol;
      const double r3 = rep.query_radius * rep.query_radius * rep.query_radius;
      rep.target = 4.0 / 3.0 * kPi * r3;
      rep.analytic = cone_ball_analytic(cone, xpt, rep.query_radius);
      const auto mc =
          cone_ball_mc(cone, xpt, rep.query_radius, rep.samples, rep.seed);
      rep.mc_estimate = mc.first;
      rep.mc_stderr = mc.second;
      rep.pass = std::abs(rep.analytic - rep.target) <= rep.abs_tol &&
                 std::abs(rep.mc_estimate - rep.target) <=
                     3.0 * rep.mc_stderr + rep.abs_tol;
      reports.push_back(std::move(rep));
    }
  }
  return reports;
}

bool all_pass(const std::vector<MeasureReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const MeasureReport& r) { return r.pass; });
}

void to_json(nlohmann::json& j, const MeasureReport& report) {
  j = nlohmann::json{{"kind", report.kind},
                     {"query_point", report.query_point},
                     {"query_radius", report.query_radius},
                     {"analytic", report.analytic},
                     {"mc_estimate", report.mc_estimate},
                     {"mc_stderr", report.mc_stderr},
                     {"target", report.target},
                     {"samples", report.samples},
                     {"seed", report.seed},
                     {"abs_tol", report.abs_tol},
                     {"pass", report.pass}};
}

}  // namespace forge
