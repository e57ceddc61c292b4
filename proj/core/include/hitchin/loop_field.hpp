#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "hitchin/types.hpp"

namespace hitchin {

// Matrix-valued Laurent polynomial sum_{|n|<=K} c_n z^n carried on the circle
// |z| = r. Coefficients are stored densely at index n + K.
struct LoopField {
  double r = 1.0;
  int K = 0;
  std::vector<CMatrix> coeffs;

  int dim() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs.front().rows()); }
  const CMatrix& coeff(int n) const { return coeffs[static_cast<std::size_t>(n + K)]; }
  CMatrix& coeff(int n) { return coeffs[static_cast<std::size_t>(n + K)]; }

  CMatrix eval(Complex z) const;
  // z = e^{2 pi i zeta}; the circle |z| = r is the line Im zeta = -log(r)/2pi.
  CMatrix eval_zeta(Complex zeta) const;
};

LoopField make_loop_field(double r, int K, int dim);

// Samples on the carrier circle at z_s = r e^{2 pi i s / M}, s = 0..M-1.
std::vector<CMatrix> loop_samples(const LoopField& lf, int M);

// Discrete Fourier inversion: c_n = r^{-n} (1/M) sum_s f(z_s) e^{-2 pi i n s/M}.
// Exact for Laurent polynomials of band K when M >= 2K+1.
LoopField loop_from_samples(const std::function<CMatrix(Complex)>& f, double r,
                            int K, int M);

// Splits into the non-negative-frequency part (holomorphic in the disk) and
// the negative-frequency part (holomorphic outside, vanishing at infinity).
// inside + outside = boundary exactly in coefficients.
std::pair<LoopField, LoopField> plemelj_split(const LoopField& boundary);

}  // namespace hitchin
