#include "forge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace forge {

SymmetricEigen jacobi_eigh(int n, std::vector<double> a) {
  if (n <= 0 || a.size() != std::size_t(n) * std::size_t(n))
    throw std::invalid_argument("jacobi_eigh: bad dimensions");

  auto idx = [n](int i, int j) { return std::size_t(i) * n + j; };

  double frob2 = 0.0;
  for (double v : a) frob2 += v * v;
  const double frob = std::sqrt(frob2);
  const double target = 1e-13 * frob;

  std::vector<double> vec(std::size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i) vec[idx(i, i)] = 1.0;

  auto off_norm = [&] {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += 2.0 * a[idx(i, j)] * a[idx(i, j)];
    return std::sqrt(s);
  };

  bool converged = (n == 1) || off_norm() <= target;
  for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[idx(p, q)];
        if (std::abs(apq) < 1e-300) continue;
        const double app = a[idx(p, p)];
        const double aqq = a[idx(q, q)];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int k = 0; k < n; ++k) {
          const double akp = a[idx(k, p)];
          const double akq = a[idx(k, q)];
          a[idx(k, p)] = c * akp - s * akq;
          a[idx(k, q)] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[idx(p, k)];
          const double aqk = a[idx(q, k)];
          a[idx(p, k)] = c * apk - s * aqk;
          a[idx(q, k)] = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = vec[idx(k, p)];
          const double vkq = vec[idx(k, q)];
          vec[idx(k, p)] = c * vkp - s * vkq;
          vec[idx(k, q)] = s * vkp + c * vkq;
        }
      }
    }
    converged = off_norm() <= target;
  }
  if (!converged) throw std::runtime_error("jacobi_eigh: did not converge");

  std::vector<int> order(std::size_t(n), 0);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a[idx(i, i)] < a[idx(j, j)]; });

  SymmetricEigen out;
  out.values.reserve(std::size_t(n));
  out.vectors.reserve(std::size_t(n));
  for (int k : order) {
    out.values.push_back(a[idx(k, k)]);
    std::vector<double> v(std::size_t(n), 0.0);
    for (int i = 0; i < n; ++i) v[std::size_t(i)] = vec[idx(i, k)];
    out.vectors.push_back(std::move(v));
  }
  return out;
}

}  // namespace forge
