#include "forge/kernels.hpp"

namespace forge::kernels {
namespace {

Isa detect() {
#if defined(__x86_64__)
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
  return Isa::scalar;
}

Isa g_isa = detect();

}  // namespace

Isa active_isa() { return g_isa; }

const char* isa_name(Isa isa) {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

void force_isa(Isa isa) {
#if !defined(__x86_64__)
  if (isa == Isa::avx2) return;
#endif
  g_isa = isa;
}

void reset_isa() { g_isa = detect(); }

std::size_t count_sigma(const double* u1, const double* u2, const double* u3,
                        std::size_t n, double w1, double w2, double w3,
                        double r, double thresh) {
#if defined(__x86_64__)
  if (g_isa == Isa::avx2)
    return count_sigma_avx2(u1, u2, u3, n, w1, w2, w3, r, thresh);
#endif
  return count_sigma_scalar(u1, u2, u3, n, w1, w2, w3, r, thresh);
}

std::size_t count_cone(const double* rho, const double* u1, const double* u2,
                       const double* u3, std::size_t n, double a, double b1,
                       double b2, double b3, double r, double c0,
                       double thresh) {
#if defined(__x86_64__)
  if (g_isa == Isa::avx2)
    return count_cone_avx2(rho, u1, u2, u3, n, a, b1, b2, b3, r, c0, thresh);
#endif
  return count_cone_scalar(rho, u1, u2, u3, n, a, b1, b2, b3, r, c0, thresh);
}

}  // namespace forge::kernels
