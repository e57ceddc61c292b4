#pragma once

#include <array>

#include "hitchin/types.hpp"

namespace hitchin {

// Shared pole-exclusion radius, measured in reduced coordinates.
inline constexpr double kPoleGuard = 1e-8;

// zeta = reduced + m + n*tau with Re(reduced) in [-1/2, 1/2] and
// Im(reduced)/Im(tau) in [-1/2, 1/2] (band reduction before series summation).
struct ReducedArgument {
  Complex reduced;
  long m = 0;
  long n = 0;
};

ReducedArgument reduce_modulo_lattice(Complex zeta, const ModularParameter& m);

// Distance from z to the nearest point of Z + tau Z.
double lattice_distance(Complex z, const ModularParameter& m);

// Even theta series as printed in the source material:
// sum_{n in Z} e^{pi i (n^2 tau + 2 n zeta)}  (the classical theta_3).
Complex theta_paper(Complex zeta, const ModularParameter& m,
                    const SeriesConfig& cfg = {});

// Odd Jacobi theta:
// theta1(zeta|tau) = -i sum_{n in Z} (-1)^n e^{pi i (n+1/2)^2 tau + (2n+1) pi i zeta}.
Complex theta1(Complex zeta, const ModularParameter& m,
               const SeriesConfig& cfg = {});

// d^order/dzeta^order theta1, order in {1,2,3}, term-by-term differentiation.
Complex theta1_deriv(Complex zeta, const ModularParameter& m, int order,
                     const SeriesConfig& cfg = {});

// theta1 and derivatives up to kmax (<= 3) in one summation pass.
std::array<Complex, 4> theta1_derivs(Complex zeta, const ModularParameter& m,
                                     int kmax, const SeriesConfig& cfg = {});

// Normalized Eisenstein series E2(tau) = 1 - 24 sum_{n>=1} sigma_1(n) q^n.
Complex eisenstein_e2(const ModularParameter& m, const SeriesConfig& cfg = {});

// Weierstrass P for the lattice Z + tau Z:
//   wp(u) = -[theta1''/theta1 - (theta1'/theta1)^2](u0) - (pi^2/3) E2(tau)
// at the band-reduced u0; the minus sign on the E2 term is what cancels the
// constant term of the Laurent expansion (wp(u) = 1/u^2 + O(u^2)).
Complex wp(Complex u, const ModularParameter& m, const SeriesConfig& cfg = {});

// wp'(u) via the third logarithmic derivative of theta1.
Complex wp_deriv(Complex u, const ModularParameter& m,
                 const SeriesConfig& cfg = {});

}  // namespace hitchin
