#pragma once

#include <map>
#include <vector>

#include "hitchin/loop_field.hpp"
#include "hitchin/phase_space.hpp"
#include "hitchin/types.hpp"

namespace hitchin {

struct LaxSample {
  Complex zeta;
  CMatrix matrix;  // diagonal equals w of the generating PhasePoint
};

// Elliptic curve data with the marked point pinned at z = 1 on the z-cylinder.
struct MarkedCurve {
  ModularParameter m;
  OrbitData orbit;
  static constexpr Complex marked_point{1.0, 0.0};
};

// Two-body kernel (-1/2pi i) theta1(d - zeta) theta1'(0) / (theta1(d) theta1(zeta)).
Complex lax_kernel(Complex d, Complex zeta, const ModularParameter& m);

// eta(zeta): diagonal w_j, off-diagonal p_jk times the two-body kernel at
// d = u_j - u_k. Quasi-periodic: eta(zeta+1) = eta(zeta) and
// eta(zeta+tau) = T eta(zeta) T^{-1} with T = diag(e^{2 pi i u_j}).
LaxSample lax_matrix(const PhasePoint& x, Complex zeta,
                     const ModularParameter& m);

// H = 1/2 sum_j w_j^2
//   + (1/4pi^2) sum_{j>k} p_jk p_kj (wp(u_j - u_k) + pi^2 E_2(tau)/3).
// The E_2 weight makes H exactly half the A-cycle integral of tr eta^2; its
// contribution is Casimir-weighted, hence dynamics-inert.
Complex hamiltonian(const PhasePoint& x, const ModularParameter& m);

// tr(eta(zeta)^j), j >= 1.
Complex spectral_invariant(const PhasePoint& x, Complex zeta, int j,
                           const ModularParameter& m);

// Laurent-polynomial weight in z = e^{2 pi i zeta}: sum_n c_n z^n.
struct LaurentWeight {
  std::map<int, Complex> coeffs;

  Complex eval_zeta(Complex zeta) const;
  static LaurentWeight one();
};

// (1/M) sum_s nu(zeta_s) tr eta^j(zeta_s) over the A-cycle contour
// zeta_s = s/M + i contour_im, 0 < contour_im < Im tau. Trapezoidal on a
// periodic integrand, hence spectrally accurate.
Complex hitchin_integral(const PhasePoint& x, int j, const LaurentWeight& nu,
                         double contour_im, const ModularParameter& m,
                         int M = 128);

// Frobenius norm of eta(zeta+tau) - T eta(zeta) T^{-1}; zero up to roundoff
// for any phase point, which is the twist equation the kernel was built for.
double moment_residual(const PhasePoint& x, Complex zeta,
                       const ModularParameter& m);

// Mode-by-mode solution of the twist equation with the all-modes-equal source
// at the marked point: coefficients p_jk / (1 - e^{2 pi i (u_k - u_j)} q^n)
// for |n| <= K, carried on the mid-annulus circle |z| = |q|^{1/2}. The n = 0
// diagonal is the free parameter w; all other diagonal modes vanish.
LoopField solve_moment_fourier(const CVector& u, const CVector& w,
                               const CMatrix& p, int K,
                               const ModularParameter& m);

struct CharPolyRow {
  Complex zeta;
  std::vector<Complex> coeffs;  // det(lambda I - eta), descending, leading 1
};

std::vector<CharPolyRow> spectral_curve_sample(const PhasePoint& x,
                                               const std::vector<Complex>& grid,
                                               const ModularParameter& m);

}  // namespace hitchin
