#pragma once

#include <cstddef>

// Counting kernels for the Monte Carlo estimators. Each kernel exists as a
// scalar reference implementation and an AVX2 variant; the dispatcher picks
// one at startup. Both variants perform the same arithmetic in the same
// order, so the counts are identical, not merely close.
namespace forge::kernels {

enum class Isa { scalar, avx2 };

Isa active_isa();
const char* isa_name(Isa isa);
/// Test hook: pin the dispatched implementation.
void force_isa(Isa isa);
void reset_isa();

/// Counts samples with (w1 - r*u1)^2 + (w2 - r*u2)^2 + (w3 - r*u3)^2 <= thresh.
/// (u1,u2,u3) are unit vectors in a sphere's own 3-plane, w the query point's
/// offset from the sphere center restricted to that plane.
std::size_t count_sigma(const double* u1, const double* u2, const double* u3,
                        std::size_t n, double w1, double w2, double w3,
                        double r, double thresh);

/// Counts samples with rho^2 - 2*rho*(a + r*(u1*b1 + u2*b2 + u3*b3)) + c0 <= thresh,
/// the membership test |rho * s - x|^2 <= rad^2 expanded for surface points
/// s = c + r*u on a unit-norm sphere configuration.
std::size_t count_cone(const double* rho, const double* u1, const double* u2,
                       const double* u3, std::size_t n, double a, double b1,
                       double b2, double b3, double r, double c0,
                       double thresh);

std::size_t count_sigma_scalar(const double* u1, const double* u2,
                               const double* u3, std::size_t n, double w1,
                               double w2, double w3, double r, double thresh);
std::size_t count_cone_scalar(const double* rho, const double* u1,
                              const double* u2, const double* u3,
                              std::size_t n, double a, double b1, double b2,
                              double b3, double r, double c0, double thresh);

#if defined(__x86_64__)
std::size_t count_sigma_avx2(const double* u1, const double* u2,
                             const double* u3, std::size_t n, double w1,
                             double w2, double w3, double r, double thresh);
std::size_t count_cone_avx2(const double* rho, const double* u1,
                            const double* u2, const double* u3, std::size_t n,
                            double a, double b1, double b2, double b3, double r,
                            double c0, double thresh);
#endif

}  // namespace forge::kernels
