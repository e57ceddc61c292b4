#include "hitchin/loop_field.hpp"

#include <cmath>
#include <stdexcept>

namespace hitchin {

CMatrix LoopField::eval(Complex z) const {
  if (coeffs.empty()) return CMatrix();
  // Horner in z for n >= 0 and in 1/z for n < 0 keeps powers balanced.
  const int d = dim();
  CMatrix plus = CMatrix::Zero(d, d);
  for (int n = K; n >= 1; --n) plus = (plus + coeff(n)) * z;
  CMatrix minus = CMatrix::Zero(d, d);
  if (K >= 1) {
    const Complex zi = 1.0 / z;
    for (int n = -K; n <= -1; ++n) minus = (minus + coeff(n)) * zi;
  }
  return plus + minus + coeff(0);
}

CMatrix LoopField::eval_zeta(Complex zeta) const {
  return eval(std::exp(2.0 * kPi * kImagUnit * zeta));
}

LoopField make_loop_field(double r, int K, int dim) {
  if (r <= 0.0 || K < 0 || dim < 1) {
    throw std::invalid_argument("loop field needs r > 0, K >= 0, dim >= 1");
  }
  LoopField lf;
  lf.r = r;
  lf.K = K;
  lf.coeffs.assign(static_cast<std::size_t>(2 * K + 1), CMatrix::Zero(dim, dim));
  return lf;
}

std::vector<CMatrix> loop_samples(const LoopField& lf, int M) {
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(M));
  for (int s = 0; s < M; ++s) {
    const Complex z =
        lf.r * std::exp(2.0 * kPi * kImagUnit * (static_cast<double>(s) / M));
    out.push_back(lf.eval(z));
  }
  return out;
}

LoopField loop_from_samples(const std::function<CMatrix(Complex)>& f, double r,
                            int K, int M) {
  if (M < 2 * K + 1) {
    throw std::invalid_argument("need M >= 2K+1 samples to resolve band K");
  }
  std::vector<CMatrix> samples;
  samples.reserve(static_cast<std::size_t>(M));
  for (int s = 0; s < M; ++s) {
    const Complex z =
        r * std::exp(2.0 * kPi * kImagUnit * (static_cast<double>(s) / M));
    samples.push_back(f(z));
  }
  const int d = static_cast<int>(samples.front().rows());
  LoopField lf = make_loop_field(r, K, d);
  for (int n = -K; n <= K; ++n) {
    CMatrix acc = CMatrix::Zero(d, d);
    for (int s = 0; s < M; ++s) {
      const Complex phase = std::exp(-2.0 * kPi * kImagUnit *
                                     (static_cast<double>(n) * s / M));
      acc += samples[static_cast<std::size_t>(s)] * phase;
    }
    lf.coeff(n) = acc * (std::pow(r, -n) / static_cast<double>(M));
  }
  return lf;
}

std::pair<LoopField, LoopField> plemelj_split(const LoopField& boundary) {
  const int d = boundary.dim();
  LoopField inside = make_loop_field(boundary.r, boundary.K, d);
  LoopField outside = make_loop_field(boundary.r, boundary.K, d);
  for (int n = -boundary.K; n <= boundary.K; ++n) {
    (n >= 0 ? inside : outside).coeff(n) = boundary.coeff(n);
  }
  return {std::move(inside), std::move(outside)};
}

}  // namespace hitchin
