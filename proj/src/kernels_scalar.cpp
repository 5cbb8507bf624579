#include "forge/kernels.hpp"

namespace forge::kernels {

std::size_t count_sigma_scalar(const double* u1, const double* u2,
                               const double* u3, std::size_t n, double w1,
                               double w2, double w3, double r, double thresh) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d1 = w1 - r * u1[i];
    const double d2 = w2 - r * u2[i];
    const double d3 = w3 - r * u3[i];
    const double s = d1 * d1 + d2 * d2 + d3 * d3;
    count += (s <= thresh) ? 1 : 0;
  }
  return count;
}

std::size_t count_cone_scalar(const double* rho, const double* u1,
                              const double* u2, const double* u3,
                              std::size_t n, double a, double b1, double b2,
                              double b3, double r, double c0, double thresh) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dot = u1[i] * b1 + u2[i] * b2 + u3[i] * b3;
    const double q = rho[i] * rho[i] - 2.0 * rho[i] * (a + r * dot) + c0;
    count += (q <= thresh) ? 1 : 0;
  }
  return count;
}

}  // namespace forge::kernels
